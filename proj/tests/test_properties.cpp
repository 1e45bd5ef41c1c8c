// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "hodge/convolution.hpp"
#include "hodge/generate.hpp"
#include "hodge/invariants.hpp"
#include "hodge/selfcheck.hpp"
#include "hodge/serialize.hpp"
#include "support.hpp"

using namespace hodge;

namespace {

std::vector<ModuleData> sample_modules(std::uint64_t seed, int n) {
  std::vector<ModuleData> out;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    if (auto d = random_direct_module(rng, {})) out.push_back(*d);
    if (auto k = random_katz_module(rng, 1, 3)) out.push_back(*k);
  }
  return out;
}

}  // namespace

TEST_CASE("generator is deterministic and portable") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform(-5, 17) == b.uniform(-5, 17));
  auto x = sample_modules(5, 4), y = sample_modules(5, 4);
  REQUIRE(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(serialize_module(x[i]) == serialize_module(y[i]));
}

TEST_CASE("generated modules validate and satisfy the Euler identity") {
  for (const auto& m : sample_modules(17, 10)) {
    CAPTURE(m.name);
    CHECK(validate_module(m).ok());
    CHECK(check_euler(m) == std::nullopt);
    CHECK(check_roundtrip(m) == std::nullopt);
    CHECK(check_aggregate_projection(m) == std::nullopt);
    CHECK(check_reframe_involutions(m) == std::nullopt);
  }
}

TEST_CASE("Kummer properties on generated modules") {
  Rng rng(99);
  for (const auto& m : sample_modules(23, 8)) {
    CAPTURE(m.name);
    Residue mu = random_generic_mu(rng, m);
    CAPTURE(mu.str());
    CHECK(check_kummer_specialization(m) == std::nullopt);
    CHECK(check_rigidity(m, mu) == std::nullopt);
    CHECK(check_inversion(m, mu) == std::nullopt);
    CHECK(check_kummer_twist_inverse(m, mu) == std::nullopt);
    CHECK(check_mobius(m, mu) == std::nullopt);
  }
}

TEST_CASE("pair and triple properties on generated inputs") {
  Rng rng(31);
  int pairs = 0, skyscrapers = 0, triples = 0;
  for (int i = 0; i < 8; ++i) {
    if (auto p = random_generic_pair(rng, 3)) {
      ++pairs;
      CHECK(check_infinity_coherence(p->first, p->second) == std::nullopt);
      CHECK(check_commutativity(p->first, p->second) == std::nullopt);
      CHECK(check_kunneth(p->first, p->second, AssumeNoSkyscraper{}) == std::nullopt);
    }
    if (auto s = random_skyscraper_pair(rng, 3)) {
      ++skyscrapers;
      CHECK(skyscraper_check(s->v, s->l).candidate.has_value());
      CHECK(check_kunneth(s->v, s->l, DeclaredSkyscraper{s->c, s->q}) == std::nullopt);
    }
    if (auto t = random_generic_triple(rng)) {
      ++triples;
      CHECK(check_associativity(t->v, t->l, t->m) == std::nullopt);
    }
  }
  CHECK(pairs > 0);
  CHECK(skyscrapers > 0);
  CHECK(triples > 0);
}

TEST_CASE("selfcheck output is reproducible") {
  SelfcheckOutcome a = run_selfcheck(3, 7), b = run_selfcheck(3, 7);
  CHECK(format_selfcheck(a) == format_selfcheck(b));
  CHECK(a.ok());
}

TEST_CASE("property checks catch a broken identity") {
  ModuleData k = test::kummer("2/5");
  k.delta = GradedVector{{0, -2}};
  CHECK(check_euler(k) != std::nullopt);
  ModuleData v = test::kummer("1/3");
  CHECK(check_commutativity(v, test::kummer("2/3")) != std::nullopt);
}
