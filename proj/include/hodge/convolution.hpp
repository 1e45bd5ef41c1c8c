// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Additive middle convolution of numerical Hodge data: finite points by
// Thom-Sebastiani, h and delta from the generic tensor product, infinity
// from the nilpotent orbit rule, skyscraper detection and the Kunneth
// cross-check.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hodge/core.hpp"

namespace hodge {

// The Thom-Sebastiani formula works with exponents in (0,1]: residue 0 is
// eigenvalue 1 and becomes exponent 1. These two functions are the only
// place the conventions meet.
Rational vanishing_exponent(const Residue& a);
Residue residue_of_exponent(const Rational& e);

// (exponent, degree) -> graded dimension of the vanishing cycles.
using VanishingTable = std::map<std::pair<Rational, int>, Count>;
VanishingTable graded_vanishing_cycles(const LocalData& d, const GradedVector& h);

std::map<Point, Aggregate> ts_finite(const ModuleData& v, const ModuleData& l);

// Numerical data of T = V tensor L(t - x) for a t keeping the finite
// singular sets disjoint.
struct GenericTensor {
  Rational t;
  GradedVector h;
  GradedVector delta;
  GradedVector omega;
  BlockSet infinity;
  GradedVector kappa_infinity;
};
GenericTensor generic_tensor(const ModuleData& v, const ModuleData& l);

GradedVector conv_h(const ModuleData& v, const ModuleData& l);
GradedVector conv_delta(const ModuleData& v, const ModuleData& l);

// phi(J^i(0,l)) = J^{i-1}(0,l-1), size 0 dropped; identity off residue 0.
BlockSet phi_trim(const BlockSet& b);
BlockSet conv_infinity(const ModuleData& v, const ModuleData& l,
                       const GradedVector& h1par_v, const GradedVector& h1par_l);

struct Skyscraper {
  Rational c;
  int q = 0;
  GradedVector epsilon;  // epsilon_q = 1
};
Skyscraper make_skyscraper(const Rational& c, int q);

struct SkyscraperCheck {
  std::optional<Skyscraper> candidate;
  std::vector<std::string> conditions;
  std::string verdict;  // "possible" or "none"
};
SkyscraperCheck skyscraper_check(const ModuleData& v, const ModuleData& l);

struct SkyscraperUnspecified {};
struct AssumeNoSkyscraper {};
struct DeclaredSkyscraper {
  Rational c;
  int q = 0;
};
using SkyscraperMode =
    std::variant<SkyscraperUnspecified, AssumeNoSkyscraper, DeclaredSkyscraper>;

struct CrossCheck {
  std::string name;
  bool pass = false;
  std::string details;
};

struct GenericityRecord {
  std::string comparison;
  bool coincident = false;
};

struct ConvolutionReport {
  ModuleData result;
  std::optional<Skyscraper> skyscraper;
  bool punctual = false;
  std::vector<CrossCheck> cross_checks;
  std::vector<GenericityRecord> genericity;
  std::vector<std::string> notes;

  bool checks_pass() const;
};

class PunctualConvolution : public Error {
 public:
  PunctualConvolution(const std::string& message, std::optional<Skyscraper> sky);
  const std::optional<Skyscraper>& skyscraper() const { return sky_; }

 private:
  std::optional<Skyscraper> sky_;
};

// Like middle_convolution but a punctual result is reported, not thrown.
ConvolutionReport convolution_report(const ModuleData& v, const ModuleData& l,
                                     const SkyscraperMode& mode);
ConvolutionReport middle_convolution(const ModuleData& v, const ModuleData& l,
                                     const SkyscraperMode& mode = SkyscraperUnspecified{});

struct NearOne {};
using KummerParameter = std::variant<Residue, NearOne>;
enum class GenericityPolicy { kEnforce, kWaive };

// mu = 1 - eps with eps half the smallest gap to 0 or 1 among residues of v.
Residue near_one_mu(const ModuleData& v);
ConvolutionReport kummer_mc(const ModuleData& v, const KummerParameter& mu,
                            GenericityPolicy policy = GenericityPolicy::kEnforce);

struct KunnethDegree {
  int l = 0;
  Count lhs = 0;
  Count rhs = 0;
};
struct KunnethVerdict {
  bool pass = false;
  std::vector<KunnethDegree> degrees;
};
KunnethVerdict kunneth_check(const ModuleData& v, const ModuleData& l,
                             const ConvolutionReport& report);

}  // namespace hodge
