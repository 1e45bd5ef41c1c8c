// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/generate.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "hodge/convolution.hpp"
#include "hodge/invariants.hpp"
#include "hodge/tensor.hpp"

namespace hodge {

int Rng::uniform(int lo, int hi) {
  if (hi < lo) fail(ErrorKind::kPrecondition, "empty range");
  std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<int>(x % range);
}

bool Rng::chance(int num, int den) { return uniform(0, den - 1) < num; }

namespace {

const std::vector<int> kDenominators = {2, 3, 4, 5, 6, 7, 8, 9, 10, 12};

BlockSet random_blocks(Rng& rng, const GradedVector& h) {
  GradedVector rem = h;
  BlockSet out;
  while (!rem.is_zero()) {
    std::vector<int> degrees;
    for (const auto& [p, v] : rem.entries()) degrees.push_back(p);
    int top = rng.pick(degrees);
    int len = 1;
    while (rem[top - len] > 0 && rng.chance(1, 2)) ++len;
    out.add(top, random_residue(rng), len, 1);
    for (int q = top - len + 1; q <= top; ++q) rem.add(q, -1);
  }
  return out;
}

std::vector<int> sample_distinct(Rng& rng, int lo, int hi, int n) {
  std::vector<int> pool;
  for (int i = lo; i <= hi; ++i) pool.push_back(i);
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    int i = rng.uniform(0, static_cast<int>(pool.size()) - 1);
    out.push_back(pool[static_cast<std::size_t>(i)]);
    pool.erase(pool.begin() + i);
  }
  return out;
}

// Numeric data need not come from a variation of Hodge structure. A cheap
// necessary condition: every generic Kummer convolution must again validate.
// One μ per gap between the residues and their complements covers all cases.
std::optional<std::string> kummer_obstruction(const ModuleData& m) {
  std::set<Rational> cuts = {0, 1};
  for (const auto& a : residues_of(m)) {
    cuts.insert(a.value());
    cuts.insert(a.complement().value());
  }
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
    Residue mu = Residue::from((*it + *std::next(it)) / 2);
    try {
      ModuleData r = kummer_mc(m, mu).result;
      r.h1par.reset();
      if (!validate_module(r).ok()) return "not realizable: convolution with L_" + mu.str() + " fails validation";
    } catch (const PunctualConvolution&) {
    } catch (const Error& e) {
      return "not realizable: convolution with L_" + mu.str() + ": " + e.what();
    }
  }
  return std::nullopt;
}

}  // namespace

Residue random_residue(Rng& rng, int zero_num, int zero_den) {
  if (rng.chance(zero_num, zero_den)) return Residue();
  int d = rng.pick(kDenominators);
  return Residue::from(Rational(rng.uniform(1, d - 1), d));
}

std::optional<ModuleData> random_direct_module(Rng& rng, const DirectOptions& opt,
                                               std::vector<std::string>* discards) {
  auto discard = [&](const std::string& why) {
    if (discards) discards->push_back(why);
  };
  for (int attempt = 0; attempt < opt.tries; ++attempt) {
    int r = rng.uniform(1, opt.max_rank);
    int parts = rng.uniform(1, r);
    std::vector<int> cuts = parts > 1 ? sample_distinct(rng, 1, r - 1, parts - 1)
                                      : std::vector<int>{};
    std::sort(cuts.begin(), cuts.end());
    int p0 = rng.uniform(-1, 1);
    ModuleData m;
    int prev = 0;
    cuts.push_back(r);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      m.h.add(p0 + static_cast<int>(i), cuts[i] - prev);
      prev = cuts[i];
    }
    int n = rng.uniform(1, opt.max_finite_points);
    bool trivial_point = false;
    for (int x : sample_distinct(rng, -3, 3, n)) {
      BlockSet b = random_blocks(rng, m.h);
      trivial_point = trivial_point || b.trivial();
      m.points.emplace(Point::at(x), b);
    }
    m.points.emplace(Point::infinity(), random_blocks(rng, m.h));
    if (trivial_point) {
      discard("finite point without singularity");
      continue;
    }
    InvariantTables t = derive_tables(m);
    Count budget = t.omega_scalar - 2 * m.rank();
    if (budget < 0) {
      discard("ω − 2·rank < 0");
      continue;
    }
    // Spread the parabolic cohomology over the Hodge range, then solve the
    // Hodge number formula for delta degree by degree.
    int lo = m.h.min_degree(), hi = m.h.max_degree();
    GradedVector hpar;
    for (Count k = 0; k < budget; ++k) hpar.add(rng.uniform(lo, hi + 1), 1);
    GradedVector delta;
    Count acc = 0;
    for (int p = lo; p <= hi; ++p) {
      acc -= hpar[p] + m.h[p] + m.h[p - 1] - t.omega_total[p - 1];
      delta.add(p, acc);
    }
    m.delta = delta;
    // Residue theorem: sum of residues times dimensions + total degree = 0.
    Rational s = 0;
    for (const auto& [x, d] : m.points) {
      for (const auto& b : std::get<BlockSet>(d).blocks()) s += b.a.value() * b.l * b.mult;
    }
    if (!is_integer(s) || Rational(-delta.total()) != s) {
      discard("residue sum not matching the total degree");
      continue;
    }
    m.name = "direct_" + std::to_string(attempt);
    try {
      GradedVector hp = h1par_hodge(m);
      if (hp != hpar) {
        discard("δ solve inconsistent at the top degree");
        continue;
      }
    } catch (const Error& e) {
      discard(e.what());
      continue;
    }
    if (!validate_module(m).ok()) {
      discard("validation failed");
      continue;
    }
    if (auto why = kummer_obstruction(m)) {
      discard(*why);
      continue;
    }
    return m;
  }
  return std::nullopt;
}

ModuleData random_rank_one(Rng& rng, int degree, int finite_points) {
  ModuleData m;
  m.name = "rank_one";
  m.h.add(degree, 1);
  Rational sum = 0;
  for (int x : sample_distinct(rng, -4, 4, finite_points)) {
    int d = rng.pick(kDenominators);
    Residue a = Residue::from(Rational(rng.uniform(1, d - 1), d));
    sum += a.value();
    m.points.emplace(Point::at(x), BlockSet{{degree, a, 1, 1}});
  }
  Residue at_inf = Residue::reduce(-sum);
  m.points.emplace(Point::infinity(), BlockSet{{degree, at_inf, 1, 1}});
  Rational total = sum + at_inf.value();
  m.delta = GradedVector{};
  m.delta->add(degree, -static_cast<Count>(boost::multiprecision::numerator(total)));
  m.h1par.reset();
  return m;
}

std::optional<ModuleData> random_katz_module(Rng& rng, int min_rank, int max_rank,
                                             int max_steps) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    ModuleData m = random_rank_one(rng, rng.uniform(-1, 1), rng.uniform(2, 4));
    int steps = rng.uniform(0, max_steps);
    bool ok = true;
    for (int s = 0; s < steps && ok; ++s) {
      try {
        if (rng.chance(11, 20)) {
          Residue mu = random_generic_mu(rng, m);
          ConvolutionReport r = kummer_mc(m, mu);
          if (r.result.rank() > max_rank) continue;
          m = r.result;
        } else {
          ModuleData twist = random_rank_one(rng, 0, rng.uniform(1, 2));
          ModuleData t = tensor_module(m, twist);
          t.h1par.reset();
          m = t;
        }
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) continue;
    if (m.rank() < min_rank || m.rank() > max_rank) continue;
    if (!m.flags.irreducible) continue;
    m.name = "katz_" + std::to_string(attempt);
    m.h1par.reset();
    if (!validate_module(m).ok()) continue;
    return m;
  }
  return std::nullopt;
}

Residue random_generic_mu(Rng& rng, const ModuleData& m) {
  static const std::vector<int> primes = {11, 13, 17, 19, 23, 29};
  std::vector<Residue> rs = residues_of(m);
  for (;;) {
    int d = rng.pick(primes);
    Residue mu = Residue::from(Rational(rng.uniform(1, d - 1), d));
    bool clash = std::any_of(rs.begin(), rs.end(), [&](const Residue& a) {
      return !a.is_zero() && (a == mu || a.complement() == mu);
    });
    if (!clash) return mu;
  }
}

}  // namespace hodge
