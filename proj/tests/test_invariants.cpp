// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "hodge/convolution.hpp"
#include "hodge/invariants.hpp"
#include "support.hpp"

using namespace hodge;
using test::J;
using test::kummer;
using test::Q;
using test::R;

namespace {

bool has_error(const ValidationReport& r, const std::string& needle) {
  for (const auto& e : r.errors) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

// Three points 1, 2, inf with residues summing to an integer.
ModuleData three_point_rank_one() {
  ModuleData m = test::module_with({{0, 1}}, {{0, -1}});
  m.points.emplace(Point::at(1), BlockSet{J(0, "1/4", 1)});
  m.points.emplace(Point::at(2), BlockSet{J(0, "1/4", 1)});
  m.points.emplace(Point::infinity(), BlockSet{J(0, "1/2", 1)});
  m.h1par = GradedVector{{1, 1}};
  return m;
}

}  // namespace

TEST_CASE("tables of a unipotent block J^1(0,2)") {
  PointTables t = point_tables(BlockSet{J(1, "0", 2)}, {{0, 1}, {1, 1}});
  CHECK(t.nu.at({Residue(), 0}) == 1);
  CHECK(t.nu.at({Residue(), 1}) == 1);
  CHECK(t.mu_zero == GradedVector{{1, 1}});
  CHECK(t.kappa == GradedVector{{1, 1}});
  CHECK(t.omega == GradedVector{{0, 1}});
  CHECK(t.omega_u == GradedVector{{0, 1}});
  CHECK(t.omega_ss.is_zero());
}

TEST_CASE("tables of Kummer 2/5") {
  InvariantTables t = derive_tables(kummer("2/5"));
  CHECK(t.points.at(Point::at(0)).omega == GradedVector{{0, 1}});
  CHECK(t.points.at(Point::infinity()).omega == GradedVector{{0, 1}});
  CHECK(t.points.at(Point::at(0)).kappa.is_zero());
  CHECK(t.points.at(Point::infinity()).kappa.is_zero());
  CHECK(t.omega_scalar == 2);
  CHECK(t.omega_not_infty == GradedVector{{0, 1}});
}

TEST_CASE("tables of J^2(1/3,3) at infinity") {
  PointTables t = point_tables(BlockSet{J(2, "1/3", 3)}, {{0, 1}, {1, 1}, {2, 1}});
  for (int q = 0; q <= 2; ++q) {
    CHECK(t.nu.at({R("1/3"), q}) == 1);
    CHECK(t.omega[q] == 1);
  }
  CHECK(t.kappa.is_zero());
  CHECK(t.mu_zero.is_zero());
}

TEST_CASE("omega splits into semisimple and unipotent parts") {
  BlockSet b{J(2, "0", 3), J(1, "1/2", 2), J(0, "0", 1, 2)};
  GradedVector h{{0, 4}, {1, 2}, {2, 1}};
  PointTables t = point_tables(b, h);
  CHECK(t.omega == t.omega_ss + t.omega_u);
  for (const auto& [p, v] : h.entries()) {
    Count nu = 0;
    for (const auto& [k, n] : t.nu) {
      if (k.p == p) nu += n;
    }
    CHECK(nu == v);
    CHECK(t.omega[p] + t.kappa[p] == nu);
  }
}

TEST_CASE("aggregate projection re-derives the same tables") {
  BlockSet b{J(2, "0", 3), J(1, "1/2", 2), J(0, "0", 1, 2)};
  GradedVector h{{0, 4}, {1, 2}, {2, 1}};
  PointTables from_blocks = point_tables(b, h);
  PointTables from_agg = point_tables(to_aggregate(b, h), h);
  CHECK(from_blocks.nu == from_agg.nu);
  CHECK(from_blocks.mu_zero == from_agg.mu_zero);
  CHECK(from_blocks.omega == from_agg.omega);
  CHECK(from_blocks.kappa == from_agg.kappa);
}

TEST_CASE("validation") {
  CHECK(validate_module(kummer("2/5")).ok());

  ModuleData wrong_h = test::module_with({{1, 1}}, {{1, -1}});
  wrong_h.points.emplace(Point::at(0), BlockSet{J(0, "1/3", 1)});
  wrong_h.points.emplace(Point::infinity(), BlockSet{J(1, "2/3", 1)});
  CHECK(has_error(validate_module(wrong_h), "Σ_a ν^p ≠ h^p"));

  ModuleData stray_delta = kummer("2/5");
  stray_delta.delta = GradedVector{{1, -1}};
  CHECK(has_error(validate_module(stray_delta), "δ^p nonzero where h^p=0"));

  ModuleData zero_rank = test::module_with({}, {});
  zero_rank.points.emplace(Point::infinity(), BlockSet{});
  CHECK_FALSE(validate_module(zero_rank).ok());

  ModuleData no_inf = kummer("2/5");
  no_inf.points.erase(Point::infinity());
  ValidationReport r = validate_module(no_inf);
  CHECK(r.ok());
  CHECK(r.warnings.size() == 1);

  Aggregate agg;
  table_add(agg.nu_nonzero, R("1/2"), 0, 2);
  ModuleData bad_agg = kummer("2/5");
  bad_agg.points.emplace(Point::at(1), agg);
  CHECK_FALSE(validate_module(bad_agg).ok());

  ModuleData wrong_h1par = kummer("2/5");
  wrong_h1par.h1par = GradedVector{{0, 1}};
  CHECK(has_error(validate_module(wrong_h1par), "declared h1par"));
}

TEST_CASE("parabolic cohomology Hodge numbers") {
  CHECK(h1par_hodge(kummer("2/5")).is_zero());
  CHECK(h1par_hodge(three_point_rank_one()) == GradedVector{{1, 1}});
  CHECK(h1par_hodge(kummer_mc(kummer("1/3"), R("9/10")).result).is_zero());

  ModuleData hyper = make_hypergeometric({3, R("1/4")});
  CHECK(hyper.h1par == GradedVector{});
  CHECK_THROWS_WITH_AS(h1par_hodge(hyper), doctest::Contains("field unknown"), Error);

  ModuleData reducible = kummer("2/5");
  reducible.flags.irreducible = false;
  CHECK_THROWS_AS(h1par_hodge(reducible), Error);
  reducible.flags.irreducibility_waived = true;
  CHECK(h1par_hodge(reducible).is_zero());

  ModuleData negative = kummer("2/5");
  negative.delta = GradedVector{{0, -2}};
  CHECK_THROWS_WITH_AS(h1par_hodge(negative), doctest::Contains("unrealizable data"), Error);
}

TEST_CASE("h1par moves with a Tate twist") {
  ModuleData m = three_point_rank_one();
  m.h1par.reset();
  GradedVector base = h1par_hodge(m);
  for (int k : {-2, 1, 3}) CHECK(h1par_hodge(reframe(m, TateTwist{k})) == base.shifted(k));
}

TEST_CASE("Tate twist of Kummer 2/5") {
  ModuleData t = reframe(kummer("2/5"), TateTwist{1});
  CHECK(t.h == GradedVector{{1, 1}});
  CHECK(t.delta == GradedVector{{1, -1}});
  CHECK(std::get<BlockSet>(t.points.at(Point::at(0))) == BlockSet{J(1, "2/5", 1)});
  CHECK(t.infinity_blocks() == BlockSet{J(1, "3/5", 1)});
}

TEST_CASE("translation moves finite points only") {
  ModuleData m = kummer("1/3");
  m.points.emplace(Point::at(1), BlockSet{J(0, "1/2", 1)});
  ModuleData t = reframe(m, Translate{3});
  std::vector<Point> expected = {Point::at(3), Point::at(4)};
  CHECK(t.finite_points() == expected);
  CHECK(t.infinity_blocks() == m.infinity_blocks());
  CHECK(numerically_equal(reframe(t, Translate{-3}), m));
}

TEST_CASE("coordinate inversion exchanges 0 and infinity") {
  ModuleData m = three_point_rank_one();
  ModuleData inv = reframe(m, InvertCoordinate{});
  std::vector<Point> expected = {Point::at(0), Point::at(Q("1/2")), Point::at(1)};
  CHECK(inv.finite_points() == expected);
  CHECK(std::get<BlockSet>(inv.points.at(Point::at(0))) == BlockSet{J(0, "1/2", 1)});
  CHECK(std::get<BlockSet>(inv.points.at(Point::at(Q("1/2")))) == BlockSet{J(0, "1/4", 1)});
  CHECK(inv.infinity_blocks().trivial());
  CHECK(inv.h == m.h);
  CHECK(inv.delta == m.delta);
  CHECK(numerically_equal(reframe(inv, InvertCoordinate{true}), m));

  CHECK_THROWS_WITH_AS(reframe(kummer("1/3"), InvertCoordinate{}),
                       doctest::Contains("singular point at 0"), Error);
  ModuleData swapped = reframe(kummer("1/3"), InvertCoordinate{true});
  CHECK(swapped.infinity_blocks() == BlockSet{J(0, "1/3", 1)});
  CHECK(std::get<BlockSet>(swapped.points.at(Point::at(0))) == BlockSet{J(0, "2/3", 1)});
}

TEST_CASE("reframe involutions") {
  ModuleData m = three_point_rank_one();
  CHECK(numerically_equal(reframe(reframe(m, TateTwist{2}), TateTwist{-2}), m));
  CHECK(numerically_equal(reframe(reframe(m, Translate{Q("5/7")}), Translate{Q("-5/7")}), m));
  CHECK(numerically_equal(
      reframe(reframe(m, InvertCoordinate{}), InvertCoordinate{true}), m));
}

TEST_CASE("numeric dual of a Kummer module") {
  ModuleData d = numeric_dual(kummer("1/3"), 0, 0);
  CHECK(d.h == GradedVector{{0, 1}});
  CHECK(d.delta == GradedVector{{0, -1}});
  CHECK(std::get<BlockSet>(d.points.at(Point::at(0))) == BlockSet{J(0, "2/3", 1)});
  CHECK(d.infinity_blocks() == BlockSet{J(0, "1/3", 1)});
  CHECK(numerically_equal(d, kummer("2/3")));
}
