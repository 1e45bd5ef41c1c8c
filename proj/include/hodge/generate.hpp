// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Seeded pseudo-random modules for property checks. Two generators:
// a direct one that fills local data to match h by construction, and one
// that only applies realizable operations (Kummer convolution, rank-one
// twists) to rank-one seeds.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hodge/core.hpp"

namespace hodge {

// Portable: only raw mt19937_64 output is used, never std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int uniform(int lo, int hi);
  bool chance(int num, int den);
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

// Denominators 2..12; zero with probability zero_num/zero_den.
Residue random_residue(Rng& rng, int zero_num = 1, int zero_den = 4);

struct DirectOptions {
  int max_rank = 3;
  int max_finite_points = 2;
  int tries = 400;
};

// Discarded draws are appended to discards with the reason.
std::optional<ModuleData> random_direct_module(Rng& rng, const DirectOptions& opt,
                                               std::vector<std::string>* discards = nullptr);

ModuleData random_rank_one(Rng& rng, int degree, int finite_points);

std::optional<ModuleData> random_katz_module(Rng& rng, int min_rank, int max_rank,
                                             int max_steps = 3);

// Prime denominators up to 29, avoiding every residue of m and complement.
Residue random_generic_mu(Rng& rng, const ModuleData& m);

}  // namespace hodge
