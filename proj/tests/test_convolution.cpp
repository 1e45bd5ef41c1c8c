// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "hodge/convolution.hpp"
#include "hodge/invariants.hpp"
#include "hodge/tensor.hpp"
#include "support.hpp"

using namespace hodge;
using test::J;
using test::kummer;
using test::Q;
using test::R;

namespace {

Count nu_of(const Aggregate& a, const char* residue, int p) {
  auto it = a.nu_nonzero.find({R(residue), p});
  return it == a.nu_nonzero.end() ? 0 : it->second;
}

// Rank one, singular at 1, 2 and infinity; h1par = {1:1}.
ModuleData three_point_rank_one() {
  ModuleData m = test::module_with({{0, 1}}, {{0, -1}});
  m.name = "three_point";
  m.points.emplace(Point::at(1), BlockSet{J(0, "1/4", 1)});
  m.points.emplace(Point::at(2), BlockSet{J(0, "1/4", 1)});
  m.points.emplace(Point::infinity(), BlockSet{J(0, "1/2", 1)});
  return m;
}

}  // namespace

TEST_CASE("exponent convention converts in one place") {
  CHECK(vanishing_exponent(Residue()) == 1);
  CHECK(vanishing_exponent(R("2/5")) == Q("2/5"));
  CHECK(residue_of_exponent(1) == Residue());
  CHECK(residue_of_exponent(Q("3/7")) == R("3/7"));
  CHECK_THROWS_AS(residue_of_exponent(0), Error);
  CHECK_THROWS_AS(residue_of_exponent(Q("3/2")), Error);
}

TEST_CASE("Thom-Sebastiani at finite points") {
  auto jac = ts_finite(kummer("1/3"), kummer("2/5"));
  REQUIRE(jac.size() == 1);
  const Aggregate& a = jac.at(Point::at(0));
  CHECK(nu_of(a, "11/15", 1) == 1);
  CHECK(a.nu_nonzero.size() == 1);
  CHECK(a.mu_zero.is_zero());

  ModuleData v = test::module_with({{0, 1}, {1, 1}}, {});
  v.points.emplace(Point::at(0), BlockSet{J(1, "0", 2)});
  auto u = ts_finite(v, kummer("2/5"));
  CHECK(nu_of(u.at(Point::at(0)), "2/5", 1) == 1);

  ModuleData only_inf = test::module_with({{0, 1}}, {});
  only_inf.points.emplace(Point::infinity(), BlockSet{J(0, "0", 1)});
  CHECK(ts_finite(only_inf, kummer("2/5")).empty());

  auto over = ts_finite(kummer("1/3"), kummer("9/10"));
  CHECK(nu_of(over.at(Point::at(0)), "7/30", 0) == 1);

  auto to_zero = ts_finite(kummer("1/3"), kummer("2/3"));
  CHECK(to_zero.at(Point::at(0)).mu_zero == GradedVector{{1, 1}});
}

TEST_CASE("Hodge numbers of a convolution") {
  GenericTensor t = generic_tensor(kummer("1/3"), kummer("2/5"));
  CHECK(t.delta == GradedVector{{0, -1}});
  CHECK(t.omega == GradedVector{{0, 3}});
  CHECK(conv_h(kummer("1/3"), kummer("2/5")) == GradedVector{{1, 1}});
  CHECK(conv_h(kummer("1/3"), kummer("9/10")) == GradedVector{{0, 1}});
  CHECK_THROWS_WITH_AS(conv_h(kummer("1/3"), kummer("2/3")),
                       "punctual convolution: skyscraper at c=0, q=0", PunctualConvolution);
}

TEST_CASE("degrees of a convolution") {
  CHECK(conv_delta(kummer("1/3"), kummer("2/5")) == GradedVector{{1, -1}});
  CHECK(conv_delta(kummer("1/3"), kummer("9/10")) == GradedVector{{0, -1}});
}

TEST_CASE("infinity of a convolution") {
  CHECK(conv_infinity(kummer("1/3"), kummer("2/5"), {}, {}) == BlockSet{J(1, "4/15", 1)});
  CHECK(conv_infinity(kummer("1/3"), kummer("9/10"), {}, {}) == BlockSet{J(0, "23/30", 1)});

  CHECK(phi_trim(block_tensor(J(1, "0", 2), J(1, "0", 2))) == BlockSet{J(1, "0", 2)});
  CHECK(phi_trim(BlockSet{J(0, "0", 1), J(2, "1/2", 2)}) == BlockSet{J(2, "1/2", 2)});

  ModuleData u = kummer("1/3");
  u.points.at(Point::infinity()) = BlockSet{J(0, "0", 1)};
  CHECK(conv_infinity(u, u, {}, {}) == BlockSet{J(1, "0", 2)});

  // Cross terms with parabolic cohomology: J^0(1/2,1) of V with h1par(L).
  ModuleData v = three_point_rank_one();
  BlockSet inf = conv_infinity(kummer("1/3"), v, {}, GradedVector{{1, 1}});
  CHECK(inf.multiplicity(1, R("2/3"), 1) == 1);
  CHECK(inf.multiplicity(1, R("1/6"), 1) == 1);
}

TEST_CASE("skyscraper detection") {
  SkyscraperCheck dual = skyscraper_check(kummer("1/3"), kummer("2/3"));
  REQUIRE(dual.candidate);
  CHECK(dual.candidate->c == 0);
  CHECK(dual.candidate->q == 0);
  CHECK(dual.candidate->epsilon == GradedVector{{0, 1}});
  CHECK(dual.verdict == "possible");
  CHECK_FALSE(skyscraper_check(kummer("1/3"), kummer("2/5")).candidate);
  ModuleData rank_two = kummer_mc(three_point_rank_one(), R("1/5")).result;
  CHECK_FALSE(skyscraper_check(rank_two, kummer("2/3")).candidate);

  ModuleData v = three_point_rank_one();
  ModuleData l = numeric_dual(reframe(v, TateTwist{2}), Q("1/2"), 2);
  SkyscraperCheck moved = skyscraper_check(v, l);
  REQUIRE(moved.candidate);
  CHECK(moved.candidate->c == Q("1/2"));
}

TEST_CASE("Jacobi sum convolution") {
  ConvolutionReport r = middle_convolution(kummer("1/3"), kummer("2/5"));
  const ModuleData& w = r.result;
  CHECK(w.rank() == 1);
  CHECK(w.h == GradedVector{{1, 1}});
  CHECK(w.delta == GradedVector{{1, -1}});
  CHECK(nu_of(std::get<Aggregate>(w.points.at(Point::at(0))), "11/15", 1) == 1);
  CHECK(w.infinity_blocks() == BlockSet{J(1, "4/15", 1)});
  CHECK(r.checks_pass());
  CHECK(validate_module(w).ok());
  CHECK(middle_convolution(kummer("1/3"), kummer("9/10")).result.h == GradedVector{{0, 1}});
}

TEST_CASE("punctual and skyscraper modes") {
  try {
    middle_convolution(kummer("1/3"), kummer("2/3"));
    FAIL("expected a punctual convolution");
  } catch (const PunctualConvolution& e) {
    CHECK(std::string(e.what()) == "punctual convolution: skyscraper at c=0, q=0");
    REQUIRE(e.skyscraper());
    CHECK(e.skyscraper()->c == 0);
  }
  ConvolutionReport p = convolution_report(kummer("1/3"), kummer("2/3"), AssumeNoSkyscraper{});
  CHECK(p.punctual);

  ModuleData v = three_point_rank_one();
  ModuleData l = numeric_dual(v, 0, 0);
  CHECK_THROWS_WITH_AS(middle_convolution(v, l), doctest::Contains("undeclared skyscraper"),
                       Error);
  ConvolutionReport d = middle_convolution(v, l, DeclaredSkyscraper{0, 0});
  CHECK(d.skyscraper);
  CHECK(d.checks_pass());
  CHECK(kunneth_check(v, l, d).pass);
  // omega(V (x) L(t-x)) = 4 on a rank-one tensor: rank 4 - 2 = 2
  CHECK(d.result.rank() == 2);
}

TEST_CASE("convolution preconditions") {
  ModuleData reducible = kummer("1/3");
  reducible.flags.irreducible = false;
  CHECK_THROWS_AS(middle_convolution(reducible, kummer("2/5")), Error);
  ModuleData unknown = kummer("1/3");
  unknown.delta.reset();
  CHECK_THROWS_WITH_AS(middle_convolution(unknown, kummer("2/5")),
                       doctest::Contains("field unknown"), Error);
  ModuleData agg_inf = kummer("1/3");
  agg_inf.points.at(Point::infinity()) = to_aggregate(agg_inf.points.at(Point::infinity()), agg_inf.h);
  CHECK_THROWS_AS(conv_infinity(agg_inf, kummer("2/5"), {}, {}), Error);
}

TEST_CASE("associativity witness") {
  ModuleData a = kummer("1/5"), b = kummer("1/3"), c = kummer("1/7");
  ModuleData left = middle_convolution(middle_convolution(a, b).result, c).result;
  ModuleData right = middle_convolution(a, middle_convolution(b, c).result).result;
  CHECK(first_difference(left, right) == std::nullopt);
  CHECK(left.h == GradedVector{{2, 1}});
}

TEST_CASE("Kummer convolution") {
  ConvolutionReport r = kummer_mc(kummer("1/3"), R("9/10"));
  const ModuleData& w = r.result;
  CHECK(w.h == GradedVector{{0, 1}});
  CHECK(w.delta == GradedVector{{0, -1}});
  CHECK(nu_of(std::get<Aggregate>(w.points.at(Point::at(0))), "7/30", 0) == 1);
  CHECK(w.infinity_blocks() == BlockSet{J(0, "23/30", 1)});
  CHECK(w.h1par == GradedVector{});
  CHECK(r.checks_pass());
  CHECK_FALSE(r.genericity.empty());

  CHECK_THROWS_WITH_AS(kummer_mc(kummer("1/3"), R("2/3")), doctest::Contains("non-generic"),
                       Error);
  CHECK_THROWS_WITH_AS(kummer_mc(kummer("1/3"), R("1/3")), doctest::Contains("non-generic"),
                       Error);
  ConvolutionReport waived = kummer_mc(kummer("1/4"), R("1/4"), GenericityPolicy::kWaive);
  CHECK(waived.result.rank() == 1);
}

TEST_CASE("Kummer convolution near one") {
  ModuleData v = three_point_rank_one();
  Residue mu = near_one_mu(v);
  CHECK(mu == R("7/8"));
  ConvolutionReport closed = kummer_mc(v, NearOne{});
  ConvolutionReport exact = kummer_mc(v, mu);
  CHECK(closed.checks_pass());
  CHECK(first_difference(closed.result, exact.result) == std::nullopt);
  InvariantTables tv = derive_tables(v);
  CHECK(closed.result.delta == *v.delta - tv.omega_u_not_infty.shifted(1));
  CHECK(closed.result.rank() == tv.omega_not_infty.total());
  CHECK(closed.result.infinity_blocks().multiplicity(1, R("1/8"), 1) == 1);
}

TEST_CASE("Kummer convolution inverts") {
  ModuleData v = three_point_rank_one();
  ModuleData once = kummer_mc(v, R("1/5")).result;
  CHECK(once.rank() == 2);
  CHECK(once.h1par == GradedVector{});
  // 4/5 is a residue of the first result at infinity; genericity is waived.
  ModuleData back = kummer_mc(once, R("4/5"), GenericityPolicy::kWaive).result;
  ModuleData expected = reframe(v, TateTwist{1});
  expected.h1par = h1par_hodge(expected);
  CHECK(first_difference(back, expected) == std::nullopt);
}

TEST_CASE("Kunneth identity") {
  ConvolutionReport r = middle_convolution(kummer("1/3"), kummer("2/5"));
  KunnethVerdict k = kunneth_check(kummer("1/3"), kummer("2/5"), r);
  CHECK(k.pass);
  for (const auto& d : k.degrees) CHECK(d.lhs == 0);

  ConvolutionReport p = convolution_report(kummer("1/3"), kummer("2/3"), DeclaredSkyscraper{0, 0});
  KunnethVerdict s = kunneth_check(kummer("1/3"), kummer("2/3"), p);
  CHECK(s.pass);
  GenericTensor t = generic_tensor(kummer("1/3"), kummer("2/3"));
  CHECK(t.kappa_infinity == GradedVector{{0, 1}});

  ConvolutionReport wrong = p;
  wrong.skyscraper.reset();
  CHECK_FALSE(kunneth_check(kummer("1/3"), kummer("2/3"), wrong).pass);
}
