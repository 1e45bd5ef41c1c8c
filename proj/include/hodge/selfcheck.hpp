// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Randomized property suite built from redundant identities of the
// calculus. Deterministic for a given (cases, seed).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodge/convolution.hpp"
#include "hodge/core.hpp"
#include "hodge/generate.hpp"

namespace hodge {

// Each property returns nullopt on success or a failure description.
using PropertyResult = std::optional<std::string>;

PropertyResult check_roundtrip(const ModuleData& v);
PropertyResult check_euler(const ModuleData& v);
PropertyResult check_aggregate_projection(const ModuleData& v);
PropertyResult check_reframe_involutions(const ModuleData& v);
PropertyResult check_kummer_specialization(const ModuleData& v);
PropertyResult check_rigidity(const ModuleData& v, const Residue& mu);
PropertyResult check_inversion(const ModuleData& v, const Residue& mu);
PropertyResult check_kummer_twist_inverse(const ModuleData& v, const Residue& mu);
PropertyResult check_mobius(const ModuleData& v, const Residue& mu);
PropertyResult check_infinity_coherence(const ModuleData& v, const ModuleData& l);
PropertyResult check_commutativity(const ModuleData& v, const ModuleData& l);
PropertyResult check_kunneth(const ModuleData& v, const ModuleData& l,
                             const SkyscraperMode& mode);
PropertyResult check_associativity(const ModuleData& v, const ModuleData& l,
                                   const ModuleData& m);

// A seeded skyscraper pair (V, numeric dual of V at (c, q)).
struct SkyscraperPair {
  ModuleData v;
  ModuleData l;
  Rational c;
  int q = 0;
};
std::optional<SkyscraperPair> random_skyscraper_pair(Rng& rng, int max_rank);

// Rank 1-2 triple with no skyscraper candidate in any bracketing.
struct GenericTriple {
  ModuleData v, l, m;
};
std::optional<GenericTriple> random_generic_triple(Rng& rng);

// Generic pair: no skyscraper candidate, nonzero convolution.
std::optional<std::pair<ModuleData, ModuleData>> random_generic_pair(Rng& rng, int max_rank);

struct PropertyTally {
  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> failures;
};

struct SelfcheckOutcome {
  int cases = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyTally> tallies;
  std::vector<std::string> discards;
  bool ok() const;
};

SelfcheckOutcome run_selfcheck(int cases, std::uint64_t seed);
std::string format_selfcheck(const SelfcheckOutcome& outcome);

}  // namespace hodge
