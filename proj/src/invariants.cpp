// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/invariants.hpp"

#include <algorithm>
#include <set>

namespace hodge {

namespace {

void add_by_degree(GradedVector& out, const ResidueTable& t) {
  for (const auto& [k, v] : t) out.add(k.p, v);
}

void merge_table(ResidueTable& out, const ResidueTable& t) {
  for (const auto& [k, v] : t) table_add(out, k.a, k.p, v);
}

bool is_trivial(const LocalData& d) {
  if (const auto* b = std::get_if<BlockSet>(&d)) return b->trivial();
  if (const auto* a = std::get_if<Aggregate>(&d)) return a->empty();
  return false;
}

}  // namespace

void InvariantTables::require_complete(const std::string& what) const {
  if (!has_infinity) {
    fail(ErrorKind::kPrecondition, what + " needs infinity data (missing)");
  }
  if (!absent_points.empty()) {
    fail(ErrorKind::kPrecondition,
         "field unknown: local data at " + absent_points.front().str() +
             " is absent, required by " + what);
  }
}

PointTables point_tables(const LocalData& data, const GradedVector& h) {
  PointTables t;
  if (const auto* blocks = std::get_if<BlockSet>(&data)) {
    for (const auto& b : blocks->blocks()) {
      for (int q = b.p - b.l + 1; q <= b.p; ++q) table_add(t.nu, b.a, q, b.mult);
      if (b.a.is_zero()) {
        for (int q = b.p - b.l + 2; q <= b.p; ++q) t.mu_zero.add(q, b.mult);
        t.kappa.add(b.p, b.mult);
      }
    }
  } else if (const auto* agg = std::get_if<Aggregate>(&data)) {
    for (const auto& [k, v] : agg->nu_nonzero) {
      if (v < 0) fail(ErrorKind::kValidation, "negative aggregate entry");
      table_add(t.nu, k.a, k.p, v);
    }
    if (!agg->mu_zero.nonnegative()) {
      fail(ErrorKind::kValidation, "negative aggregate entry");
    }
    t.mu_zero = agg->mu_zero;
    GradedVector nonzero;
    add_by_degree(nonzero, agg->nu_nonzero);
    std::set<int> degrees;
    for (const auto& [p, v] : h.entries()) degrees.insert(p);
    for (const auto& [p, v] : nonzero.entries()) degrees.insert(p);
    for (int p : degrees) {
      Count zero_part = checked_sub(h[p], nonzero[p]);
      if (zero_part < 0) {
        fail(ErrorKind::kValidation,
             "unrealizable data: aggregate Σ_a≠0 ν^" + std::to_string(p) +
                 " exceeds h^" + std::to_string(p));
      }
      table_add(t.nu, Residue(), p, zero_part);
    }
  } else {
    fail(ErrorKind::kPrecondition, "field unknown: absent local data");
  }

  for (const auto& [k, v] : t.nu) {
    if (!k.a.is_zero()) {
      table_add(t.omega_by_residue, k.a, k.p, v);
      t.omega_ss.add(k.p, v);
    }
  }
  for (const auto& [p, v] : t.mu_zero.entries()) {
    table_add(t.omega_by_residue, Residue(), p - 1, v);
    t.omega_u.add(p - 1, v);
  }
  t.omega = t.omega_ss + t.omega_u;

  if (std::holds_alternative<Aggregate>(data)) {
    // kappa^p = h^p - omega^p, valid because sum_a nu^p = h^p.
    std::set<int> degrees;
    for (const auto& [p, v] : h.entries()) degrees.insert(p);
    for (const auto& [p, v] : t.omega.entries()) degrees.insert(p);
    for (int p : degrees) {
      Count k = checked_sub(h[p], t.omega[p]);
      if (k < 0) {
        fail(ErrorKind::kValidation,
             "unrealizable data: negative κ^" + std::to_string(p) +
                 " from aggregate tables");
      }
      t.kappa.add(p, k);
    }
  }
  return t;
}

InvariantTables derive_tables(const ModuleData& m) {
  InvariantTables inv;
  for (const auto& [x, data] : m.points) {
    if (std::holds_alternative<Absent>(data)) {
      inv.absent_points.push_back(x);
      continue;
    }
    PointTables t = point_tables(data, m.h);
    if (x.is_infinity()) {
      inv.has_infinity = true;
      inv.omega_infinity = t.omega;
      inv.omega_infinity_by_residue = t.omega_by_residue;
    } else {
      inv.omega_not_infty += t.omega;
      inv.omega_u_not_infty += t.omega_u;
      inv.omega_ss_not_infty += t.omega_ss;
      merge_table(inv.omega_not_infty_by_residue, t.omega_by_residue);
    }
    inv.points.emplace(x, std::move(t));
  }
  inv.omega_total = inv.omega_not_infty + inv.omega_infinity;
  inv.omega_scalar = inv.omega_total.total();
  return inv;
}

Aggregate to_aggregate(const LocalData& data, const GradedVector& h) {
  if (const auto* a = std::get_if<Aggregate>(&data)) return *a;
  PointTables t = point_tables(data, h);
  Aggregate out;
  for (const auto& [k, v] : t.nu) {
    if (!k.a.is_zero()) table_add(out.nu_nonzero, k.a, k.p, v);
  }
  out.mu_zero = t.mu_zero;
  return out;
}

ValidationReport validate_module(const ModuleData& m) {
  ValidationReport r;
  auto err = [&](const std::string& s) { r.errors.push_back(s); };

  if (!m.h.nonnegative()) err("negative Hodge number in h");
  if (m.rank() < 1) err("rank must be >= 1");
  if (m.delta) {
    for (const auto& [p, v] : m.delta->entries()) {
      if (m.h[p] == 0) {
        err("δ^p nonzero where h^p=0 (p=" + std::to_string(p) + ", δ^p=" +
            std::to_string(v) + ")");
      }
    }
  }
  if (!m.has_infinity()) r.warnings.push_back("missing infinity entry");

  for (const auto& [x, data] : m.points) {
    std::string at = " at " + x.str();
    if (const auto* blocks = std::get_if<BlockSet>(&data)) {
      GradedVector profile;
      for (const auto& b : blocks->blocks()) {
        for (int q = b.p - b.l + 1; q <= b.p; ++q) profile.add(q, b.mult);
      }
      std::set<int> degrees;
      for (const auto& [p, v] : profile.entries()) degrees.insert(p);
      for (const auto& [p, v] : m.h.entries()) degrees.insert(p);
      for (int p : degrees) {
        if (profile[p] != m.h[p]) {
          err("Σ_a ν^p ≠ h^p" + at + ", p=" + std::to_string(p) + " (" +
              std::to_string(profile[p]) + " vs " + std::to_string(m.h[p]) + ")");
        }
      }
    } else if (const auto* agg = std::get_if<Aggregate>(&data)) {
      for (const auto& [k, v] : agg->nu_nonzero) {
        if (k.a.is_zero()) err("aggregate nu_nonzero with residue 0" + at);
      }
      try {
        point_tables(data, m.h);
      } catch (const Error& e) {
        err(std::string(e.what()) + at);
      }
    }
  }

  if (!r.ok()) return r;

  InvariantTables inv;
  try {
    inv = derive_tables(m);
  } catch (const Error& e) {
    err(e.what());
    return r;
  }
  if (inv.complete()) {
    if (inv.omega_scalar - 2 * m.rank() < 0) {
      r.warnings.push_back("ω(M) − 2·rank(M) < 0: impossible for an irreducible "
                           "nonconstant variation");
    }
    bool formula_applies = m.flags.minimal_extension && m.flags.nonconstant &&
                           (m.flags.irreducible || m.flags.irreducibility_waived);
    if (m.delta && formula_applies) {
      try {
        GradedVector computed = h1par_hodge(m);
        if (m.h1par && *m.h1par != computed) {
          err("declared h1par " + m.h1par->str() + " disagrees with computed " +
              computed.str());
        }
      } catch (const Error& e) {
        err(e.what());
      }
    }
  }
  return r;
}

void require_valid(const ModuleData& m) {
  ValidationReport r = validate_module(m);
  if (r.ok()) return;
  std::string msg = "invalid module " + m.name + ":";
  for (const auto& e : r.errors) msg += "\n  " + e;
  fail(ErrorKind::kValidation, msg);
}

GradedVector h1par_hodge(const ModuleData& m) {
  const GradedVector& delta = m.delta_or_fail();
  if (!m.flags.minimal_extension || !m.flags.nonconstant ||
      !(m.flags.irreducible || m.flags.irreducibility_waived)) {
    fail(ErrorKind::kPrecondition,
         "h1par needs flags asserting the minimal extension of an irreducible "
         "nonconstant variation (or an irreducibility waiver)");
  }
  InvariantTables inv = derive_tables(m);
  inv.require_complete("h1par");

  GradedVector support = m.h;
  for (const auto& [p, v] : delta.entries()) support.add(p, 1);
  for (const auto& [p, v] : inv.omega_total.entries()) support.add(p, 1);
  GradedVector out;
  if (support.is_zero()) return out;
  for (int p = support.min_degree(); p <= support.max_degree() + 1; ++p) {
    Count v = delta[p - 1] - delta[p] - m.h[p] - m.h[p - 1] +
              inv.omega_total[p - 1];
    out.add(p, v);
  }
  for (const auto& [p, v] : out.entries()) {
    if (v < 0) {
      fail(ErrorKind::kPrecondition,
           "unrealizable data: h^" + std::to_string(p) + "(H^1_par) = " +
               std::to_string(v) + " for " + m.name);
    }
  }
  if (out.total() != inv.omega_scalar - 2 * m.rank()) {
    fail(ErrorKind::kPrecondition,
         "unrealizable data: Euler identity fails for " + m.name);
  }
  return out;
}

GradedVector h1par_of(const ModuleData& m) {
  return m.h1par ? *m.h1par : h1par_hodge(m);
}

namespace {

LocalData shift_local(const LocalData& d, int k) {
  if (const auto* b = std::get_if<BlockSet>(&d)) return b->shifted(k);
  if (const auto* a = std::get_if<Aggregate>(&d)) {
    Aggregate out;
    for (const auto& [key, v] : a->nu_nonzero) table_add(out.nu_nonzero, key.a, key.p + k, v);
    out.mu_zero = a->mu_zero.shifted(k);
    return out;
  }
  return d;
}

BlockSet trivial_blocks(const GradedVector& h) {
  BlockSet b;
  for (const auto& [p, v] : h.entries()) b.add(p, Residue(), 1, v);
  return b;
}

ModuleData invert(const ModuleData& m, bool allow_singular_zero) {
  const Point zero = Point::at(0);
  const Point inf = Point::infinity();
  auto z = m.points.find(zero);
  bool singular_zero = z != m.points.end() && !is_trivial(z->second);
  if (singular_zero && !allow_singular_zero) {
    fail(ErrorKind::kPrecondition,
         "InvertCoordinate: singular point at 0 would move to infinity; pass "
         "an explicit allowance");
  }
  ModuleData out = m;
  out.points.clear();
  for (const auto& [x, d] : m.points) {
    if (x.is_infinity() || x == zero) continue;
    out.points.emplace(Point::at(1 / x.coordinate()), d);
  }
  if (singular_zero) {
    out.points.emplace(inf, z->second);
  } else {
    out.points.emplace(inf, trivial_blocks(m.h));
  }
  if (auto i = m.points.find(inf); i != m.points.end() && !is_trivial(i->second)) {
    out.points.emplace(zero, i->second);
  }
  return out;
}

}  // namespace

ModuleData reframe(const ModuleData& m, const ReframeAction& action) {
  if (const auto* tw = std::get_if<TateTwist>(&action)) {
    ModuleData out = m;
    out.h = m.h.shifted(tw->k);
    if (m.delta) out.delta = m.delta->shifted(tw->k);
    if (m.h1par) out.h1par = m.h1par->shifted(tw->k);
    for (auto& [x, d] : out.points) d = shift_local(d, tw->k);
    return out;
  }
  if (const auto* tr = std::get_if<Translate>(&action)) {
    ModuleData out = m;
    out.points.clear();
    for (const auto& [x, d] : m.points) {
      out.points.emplace(x.is_infinity() ? x : Point::at(x.coordinate() + tr->c), d);
    }
    return out;
  }
  return invert(m, std::get<InvertCoordinate>(action).allow_singular_zero);
}

ModuleData relocate(const ModuleData& m, const Rational& t) {
  ModuleData out = m;
  out.points.clear();
  for (const auto& [x, d] : m.points) {
    out.points.emplace(x.is_infinity() ? x : Point::at(t - x.coordinate()), d);
  }
  return out;
}

ModuleData numeric_dual(const ModuleData& m, const Rational& c, int q) {
  // J^j(b,l) -> J^{q-j+l-1}(-b,l); aggregates nu^p_a -> nu^{q-p}_{-a},
  // mu^p -> mu^{q-p+1}.
  ModuleData out;
  out.name = "dual(" + m.name + ")";
  out.flags = m.flags;
  for (const auto& [p, v] : m.h.entries()) out.h.add(q - p, v);
  for (const auto& [x, d] : m.points) {
    Point y = x.is_infinity() ? x : Point::at(c - x.coordinate());
    if (const auto* b = std::get_if<BlockSet>(&d)) {
      BlockSet nb;
      for (const auto& blk : b->blocks()) {
        nb.add(q - blk.p + blk.l - 1, blk.a.complement(), blk.l, blk.mult);
      }
      out.points.emplace(y, nb);
    } else if (const auto* a = std::get_if<Aggregate>(&d)) {
      Aggregate na;
      for (const auto& [k, v] : a->nu_nonzero) {
        table_add(na.nu_nonzero, k.a.complement(), q - k.p, v);
      }
      for (const auto& [p, v] : a->mu_zero.entries()) na.mu_zero.add(q - p + 1, v);
      out.points.emplace(y, na);
    } else {
      out.points.emplace(y, d);
    }
  }
  if (m.delta) {
    InvariantTables inv = derive_tables(m);
    if (inv.complete()) {
      GradedVector ss = inv.omega_ss_not_infty;
      if (auto it = inv.points.find(Point::infinity()); it != inv.points.end()) {
        ss += it->second.omega_ss;
      }
      GradedVector d;
      for (const auto& [p, v] : m.h.entries()) {
        d.add(q - p, -(*m.delta)[p] - ss[p]);
      }
      out.delta = d;
    }
  }
  return out;
}

namespace {

std::string point_difference(const Point& x, const LocalData* a,
                             const LocalData* b, const GradedVector& ha,
                             const GradedVector& hb) {
  auto describe = [&](const LocalData* d) {
    return d ? local_kind(*d) : std::string("missing");
  };
  if (!a || !b) {
    auto* present = a ? a : b;
    if (!x.is_infinity() && present && is_trivial(*present)) return "";
    return "point " + x.str() + ": " + describe(a) + " vs " + describe(b);
  }
  bool absent_a = std::holds_alternative<Absent>(*a);
  bool absent_b = std::holds_alternative<Absent>(*b);
  if (absent_a || absent_b) {
    return absent_a == absent_b ? "" : "point " + x.str() + ": absent on one side";
  }
  const auto* ba = std::get_if<BlockSet>(a);
  const auto* bb = std::get_if<BlockSet>(b);
  if (ba && bb) {
    if (*ba == *bb) return "";
    return "point " + x.str() + ": blocks " + ba->str() + " vs " + bb->str();
  }
  Aggregate aa = to_aggregate(*a, ha), ab = to_aggregate(*b, hb);
  if (aa == ab) return "";
  return "point " + x.str() + ": aggregate tables differ";
}

}  // namespace

std::optional<std::string> first_difference(const ModuleData& a,
                                            const ModuleData& b) {
  if (a.h != b.h) return "h: " + a.h.str() + " vs " + b.h.str();
  if (a.delta.has_value() != b.delta.has_value()) return "delta known on one side";
  if (a.delta && *a.delta != *b.delta) {
    return "delta: " + a.delta->str() + " vs " + b.delta->str();
  }
  std::set<Point> xs;
  for (const auto& [x, d] : a.points) xs.insert(x);
  for (const auto& [x, d] : b.points) xs.insert(x);
  for (const auto& x : xs) {
    auto ia = a.points.find(x), ib = b.points.find(x);
    std::string diff = point_difference(
        x, ia == a.points.end() ? nullptr : &ia->second,
        ib == b.points.end() ? nullptr : &ib->second, a.h, b.h);
    if (!diff.empty()) return diff;
  }
  if (a.h1par && b.h1par && *a.h1par != *b.h1par) {
    return "h1par: " + a.h1par->str() + " vs " + b.h1par->str();
  }
  return std::nullopt;
}

bool numerically_equal(const ModuleData& a, const ModuleData& b) {
  return !first_difference(a, b).has_value();
}

std::vector<Residue> residues_of(const ModuleData& m) {
  std::set<Residue> out;
  for (const auto& [x, d] : m.points) {
    if (const auto* b = std::get_if<BlockSet>(&d)) {
      for (const auto& [k, v] : b->entries()) out.insert(k.a);
    } else if (const auto* a = std::get_if<Aggregate>(&d)) {
      for (const auto& [k, v] : a->nu_nonzero) out.insert(k.a);
      if (!a->mu_zero.is_zero()) out.insert(Residue());
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace hodge
