// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Test objects: Kummer modules and hypergeometrics with a single block at
// infinity, plus the closed form for infinity of their convolution.

#pragma once

#include "hodge/core.hpp"

namespace hodge {

struct HypergeometricSpec {
  int m = 1;
  Residue a;
};

void check_spec(const HypergeometricSpec& spec);

// Rank one, J^0(mu,1) at 0 and J^0(1-mu,1) at infinity, delta^0 = -1.
ModuleData make_kummer(const Residue& mu);

// Partial data: finite points 0 and 1 absent, delta unknown, h1par = 0.
ModuleData make_hypergeometric(const HypergeometricSpec& spec);

// J^{m-1}(a,m) tensor J^{n-1}(b,n), twisted by (-1) when a + b > 1.
BlockSet falt_hyp_expected(int m, int n, const Residue& a, const Residue& b);

// Infinity of L conv M_m for parabolically rigid L without unipotent
// blocks at infinity; the residue hypothesis is checked numerically.
BlockSet hypergeometric_transport(const ModuleData& l, const HypergeometricSpec& spec);

}  // namespace hodge
