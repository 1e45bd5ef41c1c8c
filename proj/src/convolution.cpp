// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/convolution.hpp"

#include <algorithm>
#include <set>

#include "hodge/hypergeometric.hpp"
#include "hodge/invariants.hpp"
#include "hodge/tensor.hpp"

namespace hodge {

Rational vanishing_exponent(const Residue& a) {
  return a.is_zero() ? Rational(1) : a.value();
}

Residue residue_of_exponent(const Rational& e) {
  if (e <= 0 || e > 1) {
    fail(ErrorKind::kPrecondition, "vanishing exponent outside (0,1]: " + format_rational(e));
  }
  return e == 1 ? Residue() : Residue::from(e);
}

VanishingTable graded_vanishing_cycles(const LocalData& d, const GradedVector& h) {
  PointTables t = point_tables(d, h);
  VanishingTable g;
  auto add = [&](const Rational& e, int p, Count v) {
    if (v == 0) return;
    auto [it, ins] = g.try_emplace({e, p}, 0);
    it->second = checked_add(it->second, v);
  };
  for (const auto& [k, v] : t.nu) {
    if (!k.a.is_zero()) add(vanishing_exponent(k.a), k.p, v);
  }
  for (const auto& [p, v] : t.mu_zero.entries()) add(vanishing_exponent(Residue()), p, v);
  return g;
}

namespace {

void require_known(const ModuleData& m, const std::string& what) {
  for (const auto& [x, d] : m.points) {
    if (std::holds_alternative<Absent>(d)) {
      fail(ErrorKind::kPrecondition,
           "field unknown: local data of " + m.name + " at " + x.str() +
               " is absent, required by " + what);
    }
  }
  if (!m.has_infinity()) {
    fail(ErrorKind::kPrecondition, what + " needs infinity data of " + m.name);
  }
}

GradedVector support_of(std::initializer_list<const GradedVector*> vs) {
  GradedVector s;
  for (const auto* v : vs) {
    for (const auto& [p, x] : v->entries()) s.set(p, 1);
  }
  return s;
}

// l -> delta^{l-1} - delta^l - h^l - h^{l-1} + omega^{l-1}.
GradedVector h_from_tensor(const GenericTensor& t) {
  GradedVector s = support_of({&t.h, &t.delta, &t.omega});
  GradedVector out;
  if (s.is_zero()) return out;
  for (int l = s.min_degree(); l <= s.max_degree() + 1; ++l) {
    out.add(l, t.delta[l - 1] - t.delta[l] - t.h[l] - t.h[l - 1] + t.omega[l - 1]);
  }
  return out;
}

void add_tables_pairwise(GradedVector& out, const ResidueTable& x,
                         const ResidueTable& y, int shift) {
  for (const auto& [i, m] : x) {
    for (const auto& [j, n] : y) {
      if (i.a.value() + j.a.value() >= 1) out.add(i.p + j.p + shift, checked_mul(m, n));
    }
  }
}

GradedVector delta_formula(const ModuleData& v, const ModuleData& l) {
  const GradedVector& dv = v.delta_or_fail();
  const GradedVector& dl = l.delta_or_fail();
  InvariantTables tv = derive_tables(v), tl = derive_tables(l);
  tv.require_complete("conv_delta");
  tl.require_complete("conv_delta");
  GradedVector out = convolve(tv.omega_not_infty, dl).shifted(1);
  out += convolve(dv, tl.omega_not_infty).shifted(1);
  GradedVector dd = convolve(dv, dl);
  out += dd.shifted(1);
  out -= dd;
  add_tables_pairwise(out, tv.omega_not_infty_by_residue, tl.omega_not_infty_by_residue, 1);
  add_tables_pairwise(out, tv.omega_infinity_by_residue, tl.omega_infinity_by_residue, 0);
  return out;
}

std::string skyscraper_text(const Skyscraper& s) {
  return "skyscraper at c=" + format_rational(s.c) + ", q=" + std::to_string(s.q);
}

[[noreturn]] void throw_punctual(const std::string& prefix, const std::optional<Skyscraper>& sky) {
  std::string msg = prefix;
  if (sky) msg += ": " + skyscraper_text(*sky);
  throw PunctualConvolution(msg, sky);
}

bool is_kummer_shaped(const ModuleData& m) {
  return m.rank() == 1 && m.flags.irreducible && m.finite_points().size() == 1;
}

}  // namespace

std::map<Point, Aggregate> ts_finite(const ModuleData& v, const ModuleData& l) {
  std::map<Point, VanishingTable> acc;
  for (const auto& [x, dx] : v.points) {
    if (x.is_infinity()) continue;
    VanishingTable gx = graded_vanishing_cycles(dx, v.h);
    for (const auto& [y, dy] : l.points) {
      if (y.is_infinity()) continue;
      VanishingTable gy = graded_vanishing_cycles(dy, l.h);
      VanishingTable& out = acc[Point::at(x.coordinate() + y.coordinate())];
      for (const auto& [kx, m] : gx) {
        for (const auto& [ky, n] : gy) {
          Rational s = kx.first + ky.first;
          std::pair<Rational, int> key =
              s <= 1 ? std::pair<Rational, int>{s, kx.second + ky.second + 1}
                     : std::pair<Rational, int>{s - 1, kx.second + ky.second};
          auto [it, ins] = out.try_emplace(key, 0);
          it->second = checked_add(it->second, checked_mul(m, n));
        }
      }
    }
  }
  std::map<Point, Aggregate> result;
  for (const auto& [t, table] : acc) {
    Aggregate a;
    for (const auto& [k, m] : table) {
      Residue r = residue_of_exponent(k.first);
      if (r.is_zero()) {
        a.mu_zero.add(k.second, m);
      } else {
        table_add(a.nu_nonzero, r, k.second, m);
      }
    }
    if (!a.empty()) result.emplace(t, std::move(a));
  }
  return result;
}

GenericTensor generic_tensor(const ModuleData& v, const ModuleData& l) {
  require_known(v, "convolution");
  require_known(l, "convolution");
  v.infinity_blocks();
  l.infinity_blocks();
  auto xs = v.finite_points(), ys = l.finite_points();
  GenericTensor t;
  t.t = 0;
  if (!xs.empty() && !ys.empty()) {
    t.t = 1 + xs.back().coordinate() + ys.back().coordinate();
  }
  TensorGlobal g = tensor_global(v, l, t.t);
  t.h = g.h;
  if (!g.delta) fail(ErrorKind::kPrecondition, "field unknown: delta required by convolution");
  t.delta = *g.delta;
  InvariantTables tv = derive_tables(v), tl = derive_tables(l);
  t.infinity = tensor_at_infinity(v, l);
  t.kappa_infinity = unipotent_tops(t.infinity);
  t.omega = convolve(tv.omega_not_infty, l.h) + convolve(v.h, tl.omega_not_infty) +
            block_profile(t.infinity) - t.kappa_infinity;
  return t;
}

GradedVector conv_h(const ModuleData& v, const ModuleData& l) {
  GradedVector h = h_from_tensor(generic_tensor(v, l));
  if (h.is_zero()) throw_punctual("punctual convolution", skyscraper_check(v, l).candidate);
  if (!h.nonnegative()) {
    fail(ErrorKind::kPrecondition, "unrealizable data: negative Hodge number " + h.str());
  }
  return h;
}

GradedVector conv_delta(const ModuleData& v, const ModuleData& l) {
  conv_h(v, l);
  return delta_formula(v, l);
}

BlockSet phi_trim(const BlockSet& b) {
  BlockSet out;
  for (const auto& blk : b.blocks()) {
    if (!blk.a.is_zero()) {
      out.add(blk);
    } else if (blk.l > 1) {
      out.add(blk.p - 1, blk.a, blk.l - 1, blk.mult);
    }
  }
  return out;
}

BlockSet conv_infinity(const ModuleData& v, const ModuleData& l,
                       const GradedVector& h1par_v, const GradedVector& h1par_l) {
  const BlockSet& bv = v.infinity_blocks();
  const BlockSet& bl = l.infinity_blocks();
  BlockSet out;
  for (const auto& x : bv.blocks()) {
    for (const auto& y : bl.blocks()) {
      bool za = x.a.is_zero(), zb = y.a.is_zero();
      JordanBlock ex{x.p + 1, x.a, x.l + 1, x.mult};
      JordanBlock ey{y.p + 1, y.a, y.l + 1, y.mult};
      if (!za && !zb) {
        Rational s = x.a.value() + y.a.value();
        if (s == 1) {
          out += phi_trim(block_tensor(x, y)).shifted(1);
        } else {
          out += block_tensor(x, y).shifted(s > 1 ? 1 : 0);
        }
      } else if (za && !zb) {
        out += block_tensor(ex, y);
      } else if (!za && zb) {
        out += block_tensor(x, ey);
      } else {
        out += phi_trim(block_tensor(ex, ey));
      }
    }
  }
  // Cross terms with parabolic cohomology, literally as displayed, also for
  // residue-0 blocks.
  for (const auto& x : bv.blocks()) {
    for (const auto& [p, hv] : h1par_l.entries()) {
      out.add(x.p + p, x.a, x.l, checked_mul(x.mult, hv));
    }
  }
  for (const auto& y : bl.blocks()) {
    for (const auto& [p, hv] : h1par_v.entries()) {
      out.add(y.p + p, y.a, y.l, checked_mul(y.mult, hv));
    }
  }
  return out;
}

Skyscraper make_skyscraper(const Rational& c, int q) {
  Skyscraper s;
  s.c = c;
  s.q = q;
  s.epsilon.set(q, 1);
  return s;
}

SkyscraperCheck skyscraper_check(const ModuleData& v, const ModuleData& l) {
  SkyscraperCheck r;
  r.verdict = "none";
  auto note = [&](const std::string& s) { r.conditions.push_back(s); };
  if (v.rank() != l.rank()) {
    note("rank " + std::to_string(v.rank()) + " ≠ " + std::to_string(l.rank()));
    return r;
  }
  note("rank " + std::to_string(v.rank()) + " = " + std::to_string(l.rank()));
  if (!v.delta || !l.delta || v.h.is_zero()) {
    note("degrees unknown: necessary conditions cannot be evaluated");
    return r;
  }
  for (const auto* m : {&v, &l}) {
    for (const auto& [x, d] : m->points) {
      if (std::holds_alternative<Absent>(d)) {
        note("local data absent at " + x.str() + ": conditions cannot be evaluated");
        return r;
      }
    }
  }
  int q = v.h.max_degree() + l.h.min_degree();
  GradedVector mirrored;
  for (const auto& [p, x] : l.h.entries()) mirrored.add(q - p, x);
  if (mirrored != v.h) {
    note("Hodge numbers not mirrored");
    return r;
  }
  note("Hodge numbers mirrored with q=" + std::to_string(q));

  auto nontrivial_finite = [](const ModuleData& m) {
    std::vector<Rational> out;
    for (const auto& [x, d] : m.points) {
      if (x.is_infinity()) continue;
      if (const auto* b = std::get_if<BlockSet>(&d); b && b->trivial()) continue;
      if (const auto* a = std::get_if<Aggregate>(&d); a && a->empty()) continue;
      out.push_back(x.coordinate());
    }
    return out;
  };
  auto xs = nontrivial_finite(v), ys = nontrivial_finite(l);
  if (xs.empty() || xs.size() != ys.size()) {
    note("finite singular sets cannot correspond under x -> c - x");
    return r;
  }
  for (const auto& y : ys) {
    Rational c = xs.front() + y;
    ModuleData d = numeric_dual(l, c, q);
    ModuleData vv = v;
    vv.h1par.reset();
    auto diff = first_difference(vv, d);
    if (diff) {
      note("c=" + format_rational(c) + ": " + *diff);
      continue;
    }
    note("c=" + format_rational(c) + ": residues, blocks and δ match the dual rule");
    note("V(q) ≅ L^∨(c−x) is not decidable from numerical data");
    r.candidate = make_skyscraper(c, q);
    r.verdict = "possible";
    return r;
  }
  return r;
}

bool ConvolutionReport::checks_pass() const {
  return std::all_of(cross_checks.begin(), cross_checks.end(),
                     [](const CrossCheck& c) { return c.pass; });
}

PunctualConvolution::PunctualConvolution(const std::string& message,
                                         std::optional<Skyscraper> sky)
    : Error(ErrorKind::kPrecondition, message), sky_(std::move(sky)) {}

namespace {

void check_assumptions(const ModuleData& m) {
  if (!m.flags.minimal_extension || !m.flags.nonconstant ||
      !(m.flags.irreducible || m.flags.irreducibility_waived)) {
    fail(ErrorKind::kPrecondition,
         "middle convolution needs " + m.name +
             " flagged as the minimal extension of an irreducible nonconstant "
             "variation (or an irreducibility waiver)");
  }
}

void add_output_checks(ConvolutionReport& r, const ModuleData& v, const ModuleData& l) {
  const ModuleData& w = r.result;
  auto add = [&](std::string name, bool pass, std::string details) {
    r.cross_checks.push_back({std::move(name), pass, std::move(details)});
  };
  if (const auto* inf = std::get_if<BlockSet>(&w.points.at(Point::infinity()))) {
    GradedVector prof = block_profile(*inf);
    add("infinity_coherence", prof == w.h,
        "Σ_a ν^p_∞ = " + prof.str() + ", h = " + w.h.str());
  }
  try {
    InvariantTables t = derive_tables(w);
    add("nonnegativity", true, "derived tables nonnegative");
    if (w.h1par) {
      add("euler_identity", w.h1par->total() == t.omega_scalar - 2 * w.rank(),
          "Σ h1par = " + std::to_string(w.h1par->total()) + ", ω − 2·rank = " +
              std::to_string(t.omega_scalar - 2 * w.rank()));
    }
  } catch (const Error& e) {
    add("nonnegativity", false, e.what());
  }
  std::set<Rational> sums;
  for (const auto& x : v.finite_points()) {
    for (const auto& y : l.finite_points()) sums.insert(x.coordinate() + y.coordinate());
  }
  bool inside = true;
  for (const auto& x : w.finite_points()) inside = inside && sums.count(x.coordinate());
  add("singular_support", inside, "finite singular points ⊆ x⋆y");
  bool hodge_support = true;
  for (const auto& [p, d] : w.delta->entries()) hodge_support = hodge_support && w.h[p] != 0;
  add("hodge_support", hodge_support, "h^p = 0 ⇒ δ^p = 0");
  ValidationReport vr = validate_module(w);
  add("validation", vr.ok(), vr.ok() ? "result validates" : vr.errors.front());
}

}  // namespace

ConvolutionReport convolution_report(const ModuleData& v, const ModuleData& l,
                                     const SkyscraperMode& mode) {
  check_assumptions(v);
  check_assumptions(l);
  v.delta_or_fail();
  l.delta_or_fail();
  v.infinity_blocks();
  l.infinity_blocks();

  ConvolutionReport r;
  SkyscraperCheck sc = skyscraper_check(v, l);
  std::optional<Skyscraper> sky;
  if (const auto* d = std::get_if<DeclaredSkyscraper>(&mode)) sky = make_skyscraper(d->c, d->q);
  for (const auto& c : sc.conditions) r.notes.push_back("skyscraper check: " + c);

  GenericTensor t = generic_tensor(v, l);
  GradedVector h = h_from_tensor(t);
  r.result.name = "conv(" + v.name + "," + l.name + ")";
  // A punctual result is reported whatever the mode: no choice of mode
  // changes it.
  if (h.is_zero()) {
    r.punctual = true;
    r.skyscraper = sky ? sky : sc.candidate;
    r.result.delta = GradedVector{};
    r.result.h1par = GradedVector{};
    r.result.points.emplace(Point::infinity(), BlockSet{});
    r.notes.push_back("V⋆̃L = 0: the convolution is punctual");
    return r;
  }
  if (std::holds_alternative<SkyscraperUnspecified>(mode)) {
    if (sc.candidate) {
      fail(ErrorKind::kPrecondition,
           "undeclared skyscraper: " + skyscraper_text(*sc.candidate) +
               " passes the numerical conditions; declare it or assume it absent");
    }
  } else if (std::holds_alternative<AssumeNoSkyscraper>(mode)) {
    if (sc.candidate) {
      r.notes.push_back("caller assumes no skyscraper although " +
                        skyscraper_text(*sc.candidate) + " is numerically possible");
    }
  } else if (!sc.candidate || sc.candidate->c != sky->c || sc.candidate->q != sky->q) {
    r.notes.push_back("declared skyscraper does not match the numerical candidate");
  }
  if (!h.nonnegative()) {
    fail(ErrorKind::kPrecondition, "unrealizable data: negative Hodge number " + h.str());
  }
  r.skyscraper = sky;

  ModuleData& w = r.result;
  w.h = h;
  w.delta = delta_formula(v, l);
  for (auto& [x, a] : ts_finite(v, l)) w.points.emplace(x, std::move(a));
  if (sky) {
    auto it = w.points.find(Point::at(sky->c));
    Aggregate* a = it == w.points.end() ? nullptr : std::get_if<Aggregate>(&it->second);
    if (!a || a->mu_zero[sky->q + 1] < 1) {
      fail(ErrorKind::kPrecondition,
           "declared " + skyscraper_text(*sky) +
               " is inconsistent: μ^{q+1}_{c,0} of V⋆L vanishes");
    }
    a->mu_zero.add(sky->q + 1, -1);
    if (a->empty()) w.points.erase(it);
  }
  w.points.emplace(Point::infinity(), conv_infinity(v, l, h1par_of(v), h1par_of(l)));

  bool irreducible = (is_kummer_shaped(l) && v.flags.irreducible) ||
                     (is_kummer_shaped(v) && l.flags.irreducible);
  w.flags.irreducible = irreducible;
  w.flags.irreducibility_waived = !irreducible;
  if (!irreducible) r.notes.push_back("irreducibility of the result not known: waiver flag set");
  try {
    w.h1par = h1par_hodge(w);
  } catch (const Error& e) {
    r.cross_checks.push_back({"h1par", false, e.what()});
  }
  add_output_checks(r, v, l);

  for (const auto& x : v.infinity_blocks().blocks()) {
    for (const auto& y : l.infinity_blocks().blocks()) {
      if (x.a.is_zero() || y.a.is_zero()) continue;
      Rational s = x.a.value() + y.a.value();
      if (s == 1) {
        r.genericity.push_back({"∞: " + x.a.str() + " + " + y.a.str() + " = 1", true});
      }
    }
  }
  return r;
}

ConvolutionReport middle_convolution(const ModuleData& v, const ModuleData& l,
                                     const SkyscraperMode& mode) {
  ConvolutionReport r = convolution_report(v, l, mode);
  if (r.punctual) throw_punctual("punctual convolution", r.skyscraper);
  return r;
}

Residue near_one_mu(const ModuleData& v) {
  Rational lo = 1, hi = 0;
  for (const auto& a : residues_of(v)) {
    if (a.is_zero()) continue;
    lo = std::min(lo, a.value());
    hi = std::max(hi, a.value());
  }
  Rational eps = hi == 0 ? Rational(1, 2) : std::min(lo, Rational(1 - hi)) / 2;
  return Residue::from(1 - eps);
}

namespace {

ConvolutionReport kummer_closed_form(const ModuleData& v, const Residue& mu) {
  const GradedVector& delta = v.delta_or_fail();
  InvariantTables tv = derive_tables(v);
  tv.require_complete("kummer_mc");
  ConvolutionReport r;
  ModuleData& w = r.result;
  w.name = "conv(" + v.name + ",kummer_near_one)";
  GradedVector s = support_of({&v.h, &delta, &tv.omega_not_infty});
  if (!s.is_zero()) {
    for (int i = s.min_degree(); i <= s.max_degree() + 1; ++i) {
      w.h.add(i, delta[i - 1] - delta[i] + tv.omega_not_infty[i - 1]);
    }
  }
  if (w.h.is_zero()) throw_punctual("punctual convolution", std::nullopt);
  if (!w.h.nonnegative()) {
    fail(ErrorKind::kPrecondition, "unrealizable data: negative Hodge number " + w.h.str());
  }
  w.delta = delta - tv.omega_u_not_infty.shifted(1);
  for (auto& [x, a] : ts_finite(v, make_kummer(mu))) w.points.emplace(x, std::move(a));

  Residue co = mu.complement();
  BlockSet inf;
  for (const auto& b : v.infinity_blocks().blocks()) {
    if (b.a.is_zero()) {
      inf.add(b.p + 1, co, b.l + 1, b.mult);
    } else {
      inf.add(b.p, b.a + co, b.l, b.mult);
    }
  }
  GradedVector hv = h1par_of(v);
  for (const auto& [p, n] : hv.entries()) inf.add(p, co, 1, n);
  w.points.emplace(Point::infinity(), inf);
  w.flags.irreducible = v.flags.irreducible;
  w.flags.irreducibility_waived = !v.flags.irreducible;

  GradedVector expected_fin = tv.omega_u_not_infty.shifted(1) + tv.omega_ss_not_infty;
  GradedVector got_fin = derive_tables(w).omega_not_infty;
  r.cross_checks.push_back({"omega_not_infty_closed_form", got_fin == expected_fin,
                            "ω_≠∞ = " + got_fin.str() + ", closed form " + expected_fin.str()});
  try {
    w.h1par = h1par_hodge(w);
  } catch (const Error& e) {
    r.cross_checks.push_back({"h1par", false, e.what()});
  }
  ModuleData k = make_kummer(mu);
  add_output_checks(r, v, k);
  return r;
}

}  // namespace

ConvolutionReport kummer_mc(const ModuleData& v, const KummerParameter& param,
                            GenericityPolicy policy) {
  bool near_one = std::holds_alternative<NearOne>(param);
  Residue mu = near_one ? near_one_mu(v) : std::get<Residue>(param);
  if (mu.is_zero()) fail(ErrorKind::kPrecondition, "kummer_mc needs 0 < μ < 1");

  std::vector<GenericityRecord> records;
  bool generic = true;
  for (const auto& a : residues_of(v)) {
    if (a.is_zero()) continue;
    bool c1 = mu == a, c2 = mu == a.complement();
    records.push_back({"μ=" + mu.str() + " vs a=" + a.str(), c1});
    records.push_back({"μ=" + mu.str() + " vs 1−a=" + a.complement().str(), c2});
    generic = generic && !c1 && !c2;
  }
  if (!generic && policy == GenericityPolicy::kEnforce) {
    fail(ErrorKind::kPrecondition,
         "non-generic μ=" + mu.str() + ": coincides with a residue or its complement");
  }

  ConvolutionReport r;
  if (near_one) {
    r = kummer_closed_form(v, mu);
    r.notes.push_back("near-one mode: closed forms evaluated at μ=" + mu.str());
  } else {
    ModuleData k = make_kummer(mu);
    SkyscraperCheck sc = skyscraper_check(v, k);
    if (sc.candidate) {
      throw_punctual("punctual convolution (V is numerically a translate of the dual Kummer)",
                     sc.candidate);
    }
    r = convolution_report(v, k, AssumeNoSkyscraper{});
    if (r.punctual) throw_punctual("punctual convolution", r.skyscraper);
  }
  r.genericity.insert(r.genericity.begin(), records.begin(), records.end());
  if (generic) {
    bool rigid = r.result.h1par && r.result.h1par->is_zero();
    r.cross_checks.push_back({"rigidity", rigid,
                              r.result.h1par ? "h1par = " + r.result.h1par->str()
                                             : "h1par not computed"});
  } else {
    r.notes.push_back("genericity waived for μ=" + mu.str() + "; rigidity not asserted");
  }
  return r;
}

KunnethVerdict kunneth_check(const ModuleData& v, const ModuleData& l,
                             const ConvolutionReport& report) {
  GradedVector hv = h1par_of(v), hl = h1par_of(l);
  GradedVector kv = unipotent_tops(v.infinity_blocks());
  GradedVector kl = unipotent_tops(l.infinity_blocks());
  GradedVector kt = unipotent_tops(tensor_at_infinity(v, l));
  GradedVector hr, kr, eps;
  if (!report.punctual) {
    if (!report.result.h1par) {
      return {false, {}};
    }
    hr = *report.result.h1par;
    kr = unipotent_tops(report.result.infinity_blocks());
  }
  if (report.skyscraper) eps = report.skyscraper->epsilon;

  GradedVector lhs = hr.shifted(-1) + kr + eps - kt;
  GradedVector rhs = convolve(hv + kv.shifted(1), hl + kl.shifted(1)).shifted(-1);
  KunnethVerdict out;
  out.pass = lhs == rhs;
  GradedVector s = support_of({&lhs, &rhs});
  if (!s.is_zero()) {
    for (int d = s.min_degree(); d <= s.max_degree(); ++d) {
      out.degrees.push_back({d, lhs[d], rhs[d]});
    }
  }
  return out;
}

}  // namespace hodge
