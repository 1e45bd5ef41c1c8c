// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Tensor products: Jordan block decomposition, local data at infinity,
// global degrees with o-term corrections, and Kummer twists.

#pragma once

#include <map>
#include <optional>

#include "hodge/core.hpp"

namespace hodge {

// No Tate twist is applied; callers twist.
BlockSet block_tensor(const JordanBlock& b1, const JordanBlock& b2);
// Additive extension over both multisets.
BlockSet tensor_blocks(const BlockSet& x, const BlockSet& y);
BlockSet tensor_at_infinity(const ModuleData& v, const ModuleData& l);

// p -> sum_a nu^p over the blocks.
GradedVector block_profile(const BlockSet& b);
// Top degrees of residue-0 blocks (kappa of Blocks data).
GradedVector unipotent_tops(const BlockSet& b);

// o^l = sum over a + b >= 1 (inclusive) of nu^p_a(V) nu^(l-p)_b(L).
GradedVector o_term(const ResidueTable& nu_v, const ResidueTable& nu_l);

struct TensorGlobal {
  GradedVector h;
  std::optional<GradedVector> delta;  // unknown if either factor's is
  std::map<Point, GradedVector> o_terms;
};

// With relocation t the second factor is first pulled back along y -> t - y.
TensorGlobal tensor_global(const ModuleData& v, const ModuleData& l,
                           const std::optional<Rational>& relocation = std::nullopt);

// Full local data of V tensor L where it is determined by the inputs.
ModuleData tensor_module(const ModuleData& v, const ModuleData& l);

// V tensor L_chi (sign +1) or L_chi^-1 (sign -1).
ModuleData kummer_twist(const ModuleData& v, const Residue& mu, int sign);

}  // namespace hodge
