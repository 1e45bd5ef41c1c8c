// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/selfcheck.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "hodge/hypergeometric.hpp"
#include "hodge/invariants.hpp"
#include "hodge/serialize.hpp"
#include "hodge/tensor.hpp"

namespace hodge {

namespace {

PropertyResult guarded(const std::function<PropertyResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return std::string("error: ") + e.what();
  }
}

PropertyResult compare(const ModuleData& a, const ModuleData& b, const std::string& what) {
  if (auto d = first_difference(a, b)) return what + ": " + *d;
  return std::nullopt;
}

bool same_tables(const PointTables& x, const PointTables& y) {
  return x.nu == y.nu && x.mu_zero == y.mu_zero && x.omega == y.omega &&
         x.omega_ss == y.omega_ss && x.omega_u == y.omega_u && x.kappa == y.kappa &&
         x.omega_by_residue == y.omega_by_residue;
}

ModuleData with_h1par(ModuleData m) {
  m.h1par = h1par_of(m);
  return m;
}

// Translate so that every finite singular point is >= 1.
ModuleData smooth_at_zero(const ModuleData& v) {
  auto xs = v.finite_points();
  if (xs.empty() || xs.front().coordinate() >= 1) return v;
  return reframe(v, Translate{1 - xs.front().coordinate()});
}

}  // namespace

PropertyResult check_roundtrip(const ModuleData& v) {
  return guarded([&]() -> PropertyResult {
    std::string s = serialize_module(v);
    if (serialize_module(parse_module(s)) != s) return "serialize ∘ parse differs";
    return std::nullopt;
  });
}

PropertyResult check_euler(const ModuleData& v) {
  return guarded([&]() -> PropertyResult {
    GradedVector hp = h1par_hodge(v);
    InvariantTables t = derive_tables(v);
    if (hp.total() != t.omega_scalar - 2 * v.rank()) return "Σ h1par ≠ ω − 2·rank";
    return std::nullopt;
  });
}

PropertyResult check_aggregate_projection(const ModuleData& v) {
  return guarded([&]() -> PropertyResult {
    ModuleData a = v;
    for (auto& [x, d] : a.points) d = to_aggregate(d, v.h);
    InvariantTables tv = derive_tables(v), ta = derive_tables(a);
    for (const auto& [x, t] : tv.points) {
      if (!same_tables(t, ta.points.at(x))) return "tables differ at " + x.str();
    }
    if (tv.omega_total != ta.omega_total) return "omega totals differ";
    if (!validate_module(a).ok()) return "projected module fails validation";
    return std::nullopt;
  });
}

PropertyResult check_reframe_involutions(const ModuleData& v) {
  return guarded([&]() -> PropertyResult {
    std::string s = serialize_module(v);
    if (serialize_module(reframe(reframe(v, TateTwist{2}), TateTwist{-2})) != s) {
      return "TateTwist(2) then (-2) is not the identity";
    }
    if (serialize_module(reframe(reframe(v, Translate{Rational(7, 3)}), Translate{Rational(-7, 3)})) != s) {
      return "Translate(7/3) then (-7/3) is not the identity";
    }
    InvertCoordinate inv{true};
    if (serialize_module(reframe(reframe(v, inv), inv)) != s) {
      return "double inversion is not the identity";
    }
    GradedVector hp = h1par_hodge(v);
    if (h1par_hodge(reframe(v, TateTwist{3})) != hp.shifted(3)) {
      return "h1par does not follow the Tate twist";
    }
    return std::nullopt;
  });
}

PropertyResult check_kummer_specialization(const ModuleData& v) {
  return guarded([&]() -> PropertyResult {
    ConvolutionReport closed = kummer_mc(v, NearOne{});
    ConvolutionReport exact = kummer_mc(v, near_one_mu(v));
    const ModuleData& a = closed.result;
    const ModuleData& b = exact.result;
    if (a.h != b.h) return "h: " + a.h.str() + " vs " + b.h.str();
    if (*a.delta != *b.delta) return "δ: " + a.delta->str() + " vs " + b.delta->str();
    InvariantTables ta = derive_tables(a), tb = derive_tables(b);
    if (ta.omega_not_infty != tb.omega_not_infty) return "ω_≠∞ differs";
    if (ta.omega_infinity != tb.omega_infinity) return "ω_∞ differs";
    if (tb.omega_infinity != b.h) return "ω_∞ ≠ h";
    if (!closed.checks_pass()) return "closed-form cross-checks fail";
    return compare(a, b, "closed form vs pipeline");
  });
}

PropertyResult check_rigidity(const ModuleData& v, const Residue& mu) {
  return guarded([&]() -> PropertyResult {
    ConvolutionReport r = kummer_mc(v, mu);
    GradedVector hp = h1par_hodge(r.result);
    if (!hp.is_zero()) return "h1par = " + hp.str();
    InvariantTables tv = derive_tables(v);
    if (r.result.rank() != tv.omega_not_infty.total()) return "rank ≠ ω_≠∞(V)";
    return std::nullopt;
  });
}

PropertyResult check_inversion(const ModuleData& v, const Residue& mu) {
  return guarded([&]() -> PropertyResult {
    ModuleData w = kummer_mc(v, mu).result;
    ConvolutionReport back = kummer_mc(w, mu.complement(), GenericityPolicy::kWaive);
    ModuleData expected = with_h1par(reframe(v, TateTwist{1}));
    if (!back.result.h1par) return "h1par of the second convolution not computed";
    return compare(back.result, expected, "V⋆χ⋆χ̄ vs V(−1)");
  });
}

PropertyResult check_kummer_twist_inverse(const ModuleData& v, const Residue& mu) {
  return guarded([&]() -> PropertyResult {
    auto z = v.points.find(Point::at(0));
    if (z != v.points.end() && std::holds_alternative<Aggregate>(z->second)) {
      return std::nullopt;  // unipotent structure at 0 would be needed
    }
    ModuleData t = kummer_twist(kummer_twist(v, mu, 1), mu, -1);
    return compare(t, v, "twist then inverse twist");
  });
}

PropertyResult check_mobius(const ModuleData& v0, const Residue& mu) {
  return guarded([&]() -> PropertyResult {
    ModuleData v = smooth_at_zero(v0);
    ModuleData a = reframe(kummer_twist(v, mu, 1), InvertCoordinate{true});
    a.flags = v.flags;
    ConvolutionReport c = convolution_report(a, make_kummer(mu), AssumeNoSkyscraper{});
    if (c.punctual) return "intermediate convolution punctual";
    ModuleData d = kummer_twist(c.result, mu, -1);
    ModuleData e = reframe(d, InvertCoordinate{true});
    ModuleData direct = kummer_mc(v, mu).result;
    direct.h1par.reset();
    return compare(e, direct, "Möbius route vs kummer_mc");
  });
}

PropertyResult check_infinity_coherence(const ModuleData& v, const ModuleData& l) {
  return guarded([&]() -> PropertyResult {
    GradedVector h = conv_h(v, l);
    BlockSet inf = conv_infinity(v, l, h1par_of(v), h1par_of(l));
    if (block_profile(inf) != h) {
      return "Σ_a ν_∞ = " + block_profile(inf).str() + ", conv_h = " + h.str();
    }
    return std::nullopt;
  });
}

PropertyResult check_commutativity(const ModuleData& v, const ModuleData& l) {
  return guarded([&]() -> PropertyResult {
    ConvolutionReport a = middle_convolution(v, l, AssumeNoSkyscraper{});
    ConvolutionReport b = middle_convolution(l, v, AssumeNoSkyscraper{});
    return compare(a.result, b.result, "V⋆L vs L⋆V");
  });
}

PropertyResult check_kunneth(const ModuleData& v, const ModuleData& l,
                             const SkyscraperMode& mode) {
  return guarded([&]() -> PropertyResult {
    ConvolutionReport r = convolution_report(v, l, mode);
    KunnethVerdict k = kunneth_check(v, l, r);
    if (k.pass) return std::nullopt;
    std::string s = "degrees:";
    for (const auto& d : k.degrees) {
      if (d.lhs != d.rhs) {
        s += " l=" + std::to_string(d.l) + " (" + std::to_string(d.lhs) + " vs " +
             std::to_string(d.rhs) + ")";
      }
    }
    return s;
  });
}

PropertyResult check_associativity(const ModuleData& v, const ModuleData& l,
                                   const ModuleData& m) {
  return guarded([&]() -> PropertyResult {
    auto mc = [](const ModuleData& x, const ModuleData& y) {
      return middle_convolution(x, y, AssumeNoSkyscraper{}).result;
    };
    ModuleData left = mc(mc(v, l), m);
    ModuleData right = mc(v, mc(l, m));
    if (auto d = compare(left, right, "(V⋆L)⋆M vs V⋆(L⋆M)")) return d;
    if (auto d = compare(left, mc(mc(l, v), m), "(V⋆L)⋆M vs (L⋆V)⋆M")) return d;
    return compare(left, mc(m, mc(v, l)), "(V⋆L)⋆M vs M⋆(V⋆L)");
  });
}

std::optional<std::pair<ModuleData, ModuleData>> random_generic_pair(Rng& rng, int max_rank) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto v = random_katz_module(rng, 1, max_rank);
    auto l = random_katz_module(rng, 1, max_rank);
    if (!v || !l) continue;
    try {
      if (skyscraper_check(*v, *l).candidate) continue;
      if (convolution_report(*v, *l, SkyscraperUnspecified{}).punctual) continue;
    } catch (const Error&) {
      continue;
    }
    v->name = "V";
    l->name = "L";
    return std::make_pair(*v, *l);
  }
  return std::nullopt;
}

std::optional<SkyscraperPair> random_skyscraper_pair(Rng& rng, int max_rank) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto v = random_katz_module(rng, 1, max_rank);
    if (!v) continue;
    Rational c = rng.uniform(-3, 3);
    int q = rng.uniform(-1, 1);
    try {
      ModuleData l = numeric_dual(*v, c, q);
      l.name = "dual";
      l.flags = v->flags;
      l.h1par.reset();
      if (!validate_module(l).ok()) continue;
      h1par_hodge(l);
      SkyscraperCheck sc = skyscraper_check(*v, l);
      if (!sc.candidate) continue;
      v->name = "V";
      return SkyscraperPair{*v, l, sc.candidate->c, sc.candidate->q};
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

std::optional<GenericTriple> random_generic_triple(Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto v = random_katz_module(rng, 1, 2);
    auto l = random_katz_module(rng, 1, 2);
    auto m = random_katz_module(rng, 1, 2);
    if (!v || !l || !m) continue;
    try {
      if (skyscraper_check(*v, *l).candidate || skyscraper_check(*l, *m).candidate ||
          skyscraper_check(*v, *m).candidate) {
        continue;
      }
      ConvolutionReport vl = convolution_report(*v, *l, SkyscraperUnspecified{});
      ConvolutionReport lm = convolution_report(*l, *m, SkyscraperUnspecified{});
      if (vl.punctual || lm.punctual) continue;
      if (skyscraper_check(vl.result, *m).candidate || skyscraper_check(*v, lm.result).candidate) {
        continue;
      }
      if (convolution_report(vl.result, *m, SkyscraperUnspecified{}).punctual) continue;
    } catch (const Error&) {
      continue;
    }
    v->name = "V";
    l->name = "L";
    m->name = "M";
    return GenericTriple{*v, *l, *m};
  }
  return std::nullopt;
}

bool SelfcheckOutcome::ok() const {
  return std::all_of(tallies.begin(), tallies.end(),
                     [](const PropertyTally& t) { return t.failed == 0 && t.passed > 0; });
}

SelfcheckOutcome run_selfcheck(int cases, std::uint64_t seed) {
  SelfcheckOutcome out;
  out.cases = cases;
  out.seed = seed;
  std::map<std::string, PropertyTally> tallies;
  auto record = [&](const std::string& name, int index, const PropertyResult& r) {
    PropertyTally& t = tallies[name];
    t.name = name;
    if (r) {
      ++t.failed;
      t.failures.push_back("case " + std::to_string(index) + ": " + *r);
    } else {
      ++t.passed;
    }
  };
  auto skip = [&](const std::string& name) {
    tallies[name].name = name;
    ++tallies[name].skipped;
  };

  for (int i = 0; i < cases; ++i) {
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i));
    std::vector<std::string> discards;
    auto direct = random_direct_module(rng, {}, &discards);
    for (auto& d : discards) out.discards.push_back("case " + std::to_string(i) + ": " + d);
    auto katz = random_katz_module(rng, 1, 3);

    for (const auto* v : {direct ? &*direct : nullptr, katz ? &*katz : nullptr}) {
      if (!v) {
        out.discards.push_back("case " + std::to_string(i) + ": generator exhausted");
        continue;
      }
      Residue mu = random_generic_mu(rng, *v);
      record("roundtrip", i, check_roundtrip(*v));
      record("euler_identity", i, check_euler(*v));
      record("aggregate_projection", i, check_aggregate_projection(*v));
      record("reframe_involutions", i, check_reframe_involutions(*v));
      record("kummer_specialization", i, check_kummer_specialization(*v));
      record("rigidity", i, check_rigidity(*v, mu));
      record("inversion", i, check_inversion(*v, mu));
      record("kummer_twist_inverse", i, check_kummer_twist_inverse(*v, mu));
      record("mobius", i, check_mobius(*v, mu));
    }

    if (auto pair = random_generic_pair(rng, 3)) {
      record("infinity_coherence", i, check_infinity_coherence(pair->first, pair->second));
      record("commutativity", i, check_commutativity(pair->first, pair->second));
      record("kunneth", i, check_kunneth(pair->first, pair->second, AssumeNoSkyscraper{}));
    } else {
      skip("infinity_coherence");
      skip("commutativity");
      skip("kunneth");
    }
    if (auto sky = random_skyscraper_pair(rng, 3)) {
      record("kunneth_skyscraper", i,
             check_kunneth(sky->v, sky->l, DeclaredSkyscraper{sky->c, sky->q}));
    } else {
      skip("kunneth_skyscraper");
    }
    if (auto tri = random_generic_triple(rng)) {
      record("associativity", i, check_associativity(tri->v, tri->l, tri->m));
    } else {
      skip("associativity");
    }
  }
  for (auto& [name, t] : tallies) out.tallies.push_back(std::move(t));
  return out;
}

std::string format_selfcheck(const SelfcheckOutcome& o) {
  std::ostringstream s;
  s << "selfcheck cases=" << o.cases << " seed=" << o.seed << "\n";
  for (const auto& t : o.tallies) {
    s << (t.failed == 0 && t.passed > 0 ? "PASS " : "FAIL ") << std::left
      << std::setw(24) << t.name << " passed=" << t.passed << " failed=" << t.failed
      << " skipped=" << t.skipped << "\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(t.failures.size(), 5); ++k) {
      s << "  " << t.failures[k] << "\n";
    }
  }
  std::map<std::string, int> reasons;
  for (const auto& d : o.discards) reasons[d.substr(d.find(": ") + 2)]++;
  s << "discarded draws: " << o.discards.size() << "\n";
  for (const auto& [why, n] : reasons) s << "  " << n << " × " << why << "\n";
  s << "result: " << (o.ok() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

}  // namespace hodge
