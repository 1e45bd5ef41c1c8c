// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/hypergeometric.hpp"

#include "hodge/invariants.hpp"
#include "hodge/tensor.hpp"

namespace hodge {

void check_spec(const HypergeometricSpec& spec) {
  if (spec.m < 1) fail(ErrorKind::kPrecondition, "hypergeometric rank must be >= 1");
  if (spec.a.is_zero()) fail(ErrorKind::kPrecondition, "hypergeometric residue must be nonzero");
}

ModuleData make_kummer(const Residue& mu) {
  if (mu.is_zero()) fail(ErrorKind::kPrecondition, "make_kummer needs 0 < μ < 1");
  auto n = boost::multiprecision::numerator(mu.value());
  auto d = boost::multiprecision::denominator(mu.value());
  ModuleData k;
  k.name = "kummer_" + n.str() + "_" + d.str();
  k.h = {{0, 1}};
  k.delta = GradedVector{{0, -1}};
  k.points.emplace(Point::at(0), BlockSet{{0, mu, 1, 1}});
  k.points.emplace(Point::infinity(), BlockSet{{0, mu.complement(), 1, 1}});
  k.h1par = GradedVector{};
  return k;
}

ModuleData make_hypergeometric(const HypergeometricSpec& spec) {
  check_spec(spec);
  ModuleData m;
  m.name = "hyper_" + std::to_string(spec.m) + "_" + spec.a.str();
  for (int p = 0; p < spec.m; ++p) m.h.add(p, 1);
  m.delta.reset();
  if (spec.m >= 2) m.points.emplace(Point::at(0), Absent{});
  m.points.emplace(Point::at(1), Absent{});
  m.points.emplace(Point::infinity(), BlockSet{{spec.m - 1, spec.a, spec.m, 1}});
  m.h1par = GradedVector{};
  m.annotations["omega_0"] = spec.m - 1;
  m.annotations["omega_1"] = 1;
  return m;
}

BlockSet falt_hyp_expected(int m, int n, const Residue& a, const Residue& b) {
  check_spec({m, a});
  check_spec({n, b});
  Rational s = a.value() + b.value();
  if (is_integer(s)) fail(ErrorKind::kPrecondition, "a_m + b_n must not be an integer");
  BlockSet t = block_tensor({m - 1, a, m, 1}, {n - 1, b, n, 1});
  return s > 1 ? t.shifted(1) : t;
}

BlockSet hypergeometric_transport(const ModuleData& l, const HypergeometricSpec& spec) {
  check_spec(spec);
  const BlockSet& inf = l.infinity_blocks();
  if (!h1par_of(l).is_zero()) {
    fail(ErrorKind::kPrecondition, "hypergeometric transport needs L parabolically rigid");
  }
  BlockSet out;
  JordanBlock top{spec.m - 1, spec.a, spec.m, 1};
  for (const auto& b : inf.blocks()) {
    if (b.a.is_zero()) {
      fail(ErrorKind::kPrecondition,
           "hypergeometric transport: L has a unipotent block at infinity");
    }
    Rational s = b.a.value() + spec.a.value();
    if (is_integer(s)) {
      fail(ErrorKind::kPrecondition,
           "hypergeometric transport: residue " + b.a.str() + " + " + spec.a.str() +
               " is an integer, the tensor has a unipotent block at infinity");
    }
    out += block_tensor(b, top).shifted(s > 1 ? 1 : 0);
  }
  return out;
}

}  // namespace hodge
