// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/tensor.hpp"

#include <algorithm>
#include <set>

#include "hodge/hypergeometric.hpp"
#include "hodge/invariants.hpp"

namespace hodge {

BlockSet block_tensor(const JordanBlock& b1, const JordanBlock& b2) {
  BlockSet out;
  Residue c = b1.a + b2.a;
  Count mult = checked_mul(b1.mult, b2.mult);
  for (int k = 0; k < std::min(b1.l, b2.l); ++k) {
    out.add(b1.p + b2.p - k, c, b1.l + b2.l - 1 - 2 * k, mult);
  }
  return out;
}

BlockSet tensor_blocks(const BlockSet& x, const BlockSet& y) {
  BlockSet out;
  for (const auto& b1 : x.blocks()) {
    for (const auto& b2 : y.blocks()) out += block_tensor(b1, b2);
  }
  return out;
}

BlockSet tensor_at_infinity(const ModuleData& v, const ModuleData& l) {
  return tensor_blocks(v.infinity_blocks(), l.infinity_blocks());
}

GradedVector block_profile(const BlockSet& b) {
  GradedVector g;
  for (const auto& blk : b.blocks()) {
    for (int q = blk.p - blk.l + 1; q <= blk.p; ++q) g.add(q, blk.mult);
  }
  return g;
}

GradedVector unipotent_tops(const BlockSet& b) {
  GradedVector g;
  for (const auto& blk : b.blocks()) {
    if (blk.a.is_zero()) g.add(blk.p, blk.mult);
  }
  return g;
}

GradedVector o_term(const ResidueTable& nu_v, const ResidueTable& nu_l) {
  GradedVector g;
  for (const auto& [x, m] : nu_v) {
    for (const auto& [y, n] : nu_l) {
      if (x.a.value() + y.a.value() >= 1) g.add(x.p + y.p, checked_mul(m, n));
    }
  }
  return g;
}

TensorGlobal tensor_global(const ModuleData& v, const ModuleData& l,
                           const std::optional<Rational>& relocation) {
  ModuleData lr = relocation ? relocate(l, *relocation) : l;
  TensorGlobal out;
  out.h = convolve(v.h, lr.h);
  for (const auto& [x, dv] : v.points) {
    auto it = lr.points.find(x);
    if (it == lr.points.end()) continue;
    if (std::holds_alternative<Absent>(dv) ||
        std::holds_alternative<Absent>(it->second)) {
      fail(ErrorKind::kPrecondition,
           "field unknown: common point " + x.str() +
               " lacks the ν-tables needed for the o-term");
    }
    out.o_terms[x] = o_term(point_tables(dv, v.h).nu, point_tables(it->second, lr.h).nu);
  }
  if (v.delta && lr.delta) {
    GradedVector d = convolve(*v.delta, lr.h) + convolve(v.h, *lr.delta);
    for (const auto& [x, o] : out.o_terms) d += o;
    out.delta = d;
  }
  return out;
}

namespace {

bool is_trivial(const LocalData& d) {
  if (const auto* b = std::get_if<BlockSet>(&d)) return b->trivial();
  if (const auto* a = std::get_if<Aggregate>(&d)) return a->empty();
  return false;
}

// Blocks all of size one and one residue: scalar local monodromy.
std::optional<Residue> scalar_residue(const LocalData& d) {
  const auto* b = std::get_if<BlockSet>(&d);
  if (!b || b->empty()) return std::nullopt;
  std::optional<Residue> r;
  for (const auto& [k, m] : b->entries()) {
    if (k.l != 1 || (r && *r != k.a)) return std::nullopt;
    r = k.a;
  }
  return r;
}

Aggregate aggregate_times_scalar(const LocalData& d, const GradedVector& h,
                                 const Residue& b, const GradedVector& degrees,
                                 const Point& x) {
  PointTables t = point_tables(d, h);
  Aggregate out;
  for (const auto& [j, mj] : degrees.entries()) {
    if (b.is_zero()) {
      for (const auto& [k, v] : t.nu) {
        if (!k.a.is_zero()) table_add(out.nu_nonzero, k.a, k.p + j, checked_mul(v, mj));
      }
      for (const auto& [p, v] : t.mu_zero.entries()) out.mu_zero.add(p + j, checked_mul(v, mj));
      continue;
    }
    for (const auto& [k, v] : t.nu) {
      Residue c = k.a + b;
      if (c.is_zero()) {
        fail(ErrorKind::kPrecondition,
             "tensor at " + x.str() + ": residue " + k.a.str() +
                 " lands on 0 and the unipotent structure is not determined "
                 "by aggregate data");
      }
      table_add(out.nu_nonzero, c, k.p + j, checked_mul(v, mj));
    }
  }
  return out;
}

LocalData local_tensor(const LocalData& dv, const GradedVector& hv,
                       const LocalData& dl, const GradedVector& hl,
                       const Point& x) {
  if (std::holds_alternative<Absent>(dv) || std::holds_alternative<Absent>(dl)) {
    return Absent{};
  }
  const auto* bv = std::get_if<BlockSet>(&dv);
  const auto* bl = std::get_if<BlockSet>(&dl);
  if (bv && bl) return tensor_blocks(*bv, *bl);
  if (auto b = scalar_residue(dl)) {
    return aggregate_times_scalar(dv, hv, *b, block_profile(*bl), x);
  }
  if (auto b = scalar_residue(dv)) {
    return aggregate_times_scalar(dl, hl, *b, block_profile(*bv), x);
  }
  fail(ErrorKind::kPrecondition,
       "tensor at " + x.str() +
           ": local data not determined (aggregate against non-scalar monodromy)");
}

BlockSet trivial_blocks(const GradedVector& h) {
  BlockSet b;
  for (const auto& [p, v] : h.entries()) b.add(p, Residue(), 1, v);
  return b;
}

}  // namespace

ModuleData tensor_module(const ModuleData& v, const ModuleData& l) {
  if (!v.has_infinity() || !l.has_infinity()) {
    fail(ErrorKind::kPrecondition, "tensor needs infinity data on both factors");
  }
  ModuleData out;
  out.name = "tensor(" + v.name + "," + l.name + ")";
  TensorGlobal g = tensor_global(v, l);
  out.h = g.h;
  out.delta = g.delta;

  std::set<Point> xs;
  for (const auto& [x, d] : v.points) xs.insert(x);
  for (const auto& [x, d] : l.points) xs.insert(x);
  for (const auto& x : xs) {
    auto iv = v.points.find(x), il = l.points.find(x);
    LocalData dv = iv != v.points.end() ? iv->second : LocalData(trivial_blocks(v.h));
    LocalData dl = il != l.points.end() ? il->second : LocalData(trivial_blocks(l.h));
    LocalData d = local_tensor(dv, v.h, dl, l.h, x);
    if (!x.is_infinity() && is_trivial(d)) continue;
    out.points.emplace(x, std::move(d));
  }

  bool rank_one_factor = (v.rank() == 1 && v.flags.irreducible) ||
                         (l.rank() == 1 && l.flags.irreducible);
  out.flags.irreducible = rank_one_factor && v.flags.irreducible && l.flags.irreducible;
  out.flags.irreducibility_waived = v.flags.irreducibility_waived || l.flags.irreducibility_waived;
  out.flags.nonconstant = out.points.size() > 1;
  out.flags.minimal_extension = true;
  return out;
}

ModuleData kummer_twist(const ModuleData& v, const Residue& mu, int sign) {
  if (mu.is_zero()) fail(ErrorKind::kPrecondition, "kummer_twist needs 0 < μ < 1");
  if (sign != 1 && sign != -1) fail(ErrorKind::kPrecondition, "sign must be ±1");
  ModuleData k = make_kummer(sign > 0 ? mu : mu.complement());
  ModuleData out = tensor_module(v, k);
  out.name = v.name + (sign > 0 ? "*chi" : "*chibar") + mu.str();
  return out;
}

}  // namespace hodge
