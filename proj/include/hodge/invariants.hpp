// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Derived local and global invariants, validation, parabolic cohomology
// Hodge numbers and coordinate/twist reframing.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hodge/core.hpp"

namespace hodge {

struct PointTables {
  ResidueTable nu;            // nu^p_{x,a}, all residues including 0
  GradedVector mu_zero;       // mu^p_{x,0}
  GradedVector omega;         // omega^p_x
  GradedVector omega_ss;      // nu^p_{x,!=0}
  GradedVector omega_u;       // mu^{p+1}_{x,0}
  GradedVector kappa;         // primitive unipotent part
  ResidueTable omega_by_residue;
};

struct InvariantTables {
  std::map<Point, PointTables> points;
  std::vector<Point> absent_points;
  bool has_infinity = false;

  GradedVector omega_not_infty;
  GradedVector omega_u_not_infty;
  GradedVector omega_ss_not_infty;
  ResidueTable omega_not_infty_by_residue;
  GradedVector omega_infinity;
  ResidueTable omega_infinity_by_residue;
  GradedVector omega_total;
  Count omega_scalar = 0;

  bool complete() const { return has_infinity && absent_points.empty(); }
  // Throws "field unknown" naming the missing point data.
  void require_complete(const std::string& what) const;
};

PointTables point_tables(const LocalData& data, const GradedVector& h);
InvariantTables derive_tables(const ModuleData& m);

// Graded dimensions of a point; Blocks lose their Jordan structure.
Aggregate to_aggregate(const LocalData& data, const GradedVector& h);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate_module(const ModuleData& m);
// Throws a validation error listing the violations.
void require_valid(const ModuleData& m);

GradedVector h1par_hodge(const ModuleData& m);
// Declared h1par if present, else h1par_hodge.
GradedVector h1par_of(const ModuleData& m);

struct TateTwist {
  int k;  // M(-k): degrees move up by k
};
struct Translate {
  Rational c;
};
struct InvertCoordinate {
  bool allow_singular_zero = false;
};
using ReframeAction = std::variant<TateTwist, Translate, InvertCoordinate>;

ModuleData reframe(const ModuleData& m, const ReframeAction& action);

// Pullback along x -> t - x.
ModuleData relocate(const ModuleData& m, const Rational& t);

// Numerical data of m^dual(c - x)(-q).
ModuleData numeric_dual(const ModuleData& m, const Rational& c, int q);

// Field-by-field comparison of numerical data. Local data is compared as
// aggregates when either side is aggregate; names and flags are ignored.
std::optional<std::string> first_difference(const ModuleData& a,
                                            const ModuleData& b);
bool numerically_equal(const ModuleData& a, const ModuleData& b);

// Distinct residues of all known local data.
std::vector<Residue> residues_of(const ModuleData& m);

}  // namespace hodge
