// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <functional>
#include <random>

#include "hodge/serialize.hpp"
#include "support.hpp"

using namespace hodge;
using test::J;
using test::Q;
using test::R;

namespace {

const char* kKummerDoc = R"({
  "name": "kummer_2_5",
  "h": {"0": 1},
  "delta": {"0": -1},
  "points": [
    {"at": "0", "blocks": [{"p": 0, "a": "2/5", "l": 1, "mult": 1}]},
    {"at": "inf", "blocks": [{"p": 0, "a": "3/5", "l": 1, "mult": 1}]}
  ]
})";

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::kIo;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rationals parse reduced and exact") {
  CHECK(format_rational(Q("6/4")) == "3/2");
  CHECK(format_rational(Q("-6/4")) == "-3/2");
  CHECK(format_rational(Q("1.25")) == "5/4");
  CHECK(format_rational(Q("-3")) == "-3");
  CHECK(kind_of([] { Q("1/0"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { Q("abc"); }) == ErrorKind::kParse);
  CHECK(floor_of(Q("-1/3")) == -1);
  CHECK(frac_of(Q("-1/3")) == Q("2/3"));
  CHECK(is_integer(Q("4/2")));
}

TEST_CASE("rational sums round-trip as reduced fractions") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 200; ++i) {
    long long n1 = static_cast<long long>(gen() % 2001) - 1000, d1 = static_cast<long long>(gen() % 97) + 1;
    long long n2 = static_cast<long long>(gen() % 2001) - 1000, d2 = static_cast<long long>(gen() % 97) + 1;
    Rational q1(n1, d1), q2(n2, d2);
    Rational s = parse_rational(format_rational(q1)) + parse_rational(format_rational(q2));
    Rational expected(n1 * d2 + n2 * d1, d1 * d2);
    CHECK(format_rational(s) == format_rational(expected));
    CHECK(gcd(numerator(s), denominator(s)) == 1);
  }
}

TEST_CASE("checked multiplicity arithmetic refuses overflow") {
  CHECK(checked_add(2, 3) == 5);
  CHECK(kind_of([] { checked_mul(INT64_MAX / 2, 3); }) == ErrorKind::kPrecondition);
  CHECK(kind_of([] { checked_add(INT64_MAX, 1); }) == ErrorKind::kPrecondition);
}

TEST_CASE("residues live in [0,1)") {
  CHECK(R("1/3") + R("5/6") == R("1/6"));
  CHECK(R("1/3").complement() == R("2/3"));
  CHECK(Residue().complement() == Residue());
  CHECK(Residue::reduce(Q("-1/4")) == R("3/4"));
  CHECK(message_of([] { Residue::from(Q("7/5")); }).find("residue out of range") == 0);
  CHECK(kind_of([] { Residue::parse("1"); }) == ErrorKind::kParse);
}

TEST_CASE("points order finite before infinity") {
  CHECK(Point::at(Q("1/2")) < Point::at(Q("2")));
  CHECK(Point::at(Q("100")) < Point::infinity());
  CHECK(Point::parse("inf").is_infinity());
  CHECK(Point::parse("2/4") == Point::at(Q("1/2")));
}

TEST_CASE("graded vectors are sparse with zero default") {
  GradedVector g{{0, 1}, {2, 3}};
  CHECK(g[1] == 0);
  CHECK(g[-5] == 0);
  g.add(0, -1);
  CHECK(g.entries().size() == 1);
  CHECK(g.shifted(1)[3] == 3);
  CHECK(convolve(GradedVector{{0, 1}, {1, 1}}, GradedVector{{0, 1}, {1, 1}}) ==
        GradedVector{{0, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("Kummer descriptor parses to rank one") {
  ModuleData m = parse_module(kKummerDoc);
  CHECK(m.rank() == 1);
  CHECK(m.delta == GradedVector{{0, -1}});
  CHECK(m.infinity_blocks() == BlockSet{J(0, "3/5", 1)});
  CHECK(std::get<BlockSet>(m.points.at(Point::at(0))) == BlockSet{J(0, "2/5", 1)});
}

TEST_CASE("residue 7/5 is rejected") {
  std::string doc = kKummerDoc;
  doc.replace(doc.find("2/5"), 3, "7/5");
  CHECK(message_of([&] { parse_module(doc); }).find("residue out of range") != std::string::npos);
}

TEST_CASE("equal block keys merge") {
  std::string doc = R"({"name":"m","h":{"0":3,"1":3},"delta":{},"points":[
    {"at":"inf","blocks":[{"p":1,"a":"0","l":2,"mult":1},{"p":1,"a":"0","l":2,"mult":2}]}]})";
  ModuleData m = parse_module(doc);
  CHECK(m.infinity_blocks().size() == 1);
  CHECK(m.infinity_blocks().multiplicity(1, Residue(), 2) == 3);
}

TEST_CASE("parse errors") {
  CHECK(kind_of([] { parse_module("{"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { parse_module(R"({"name":"x","h":{"0":1},"delta":{},"points":[],"extra":1})"); }) ==
        ErrorKind::kParse);
  CHECK(message_of([] {
          parse_module(R"({"name":"x","h":{"0":1},"delta":{},"points":[
            {"at":"1","blocks":[]},{"at":"1","blocks":[]}]})");
        }).find("duplicate") != std::string::npos);
  ModuleData no_inf = parse_module(R"({"name":"x","h":{"0":1},"delta":{},"points":[]})");
  CHECK_FALSE(no_inf.has_infinity());
  CHECK(kind_of([] { read_module_file("/nonexistent/file.json"); }) == ErrorKind::kIo);
}

TEST_CASE("serialize after parse is the identity on normalized documents") {
  std::string once = normalize_document(kKummerDoc);
  CHECK(normalize_document(once) == once);
  CHECK(serialize_module(parse_module(once)) == once);

  std::string partial = R"({"name":"p","h":{"0":1,"1":1},"delta":"unknown","points":[
    {"at":"0","unknown":true},
    {"at":"1","aggregate":{"nu_nonzero":[{"p":1,"a":"1/2","mult":1}],"mu_zero":[{"p":1,"mult":1}]}},
    {"at":"inf","blocks":[{"p":1,"a":"1/4","l":2}]}],
    "h1par":{},"annotations":{"omega_0":1}})";
  std::string n = normalize_document(partial);
  CHECK(normalize_document(n) == n);
  ModuleData m = parse_module(n);
  CHECK_FALSE(m.delta.has_value());
  CHECK(std::holds_alternative<Absent>(m.points.at(Point::at(0))));
  CHECK(std::holds_alternative<Aggregate>(m.points.at(Point::at(1))));
  CHECK(m.annotations.at("omega_0") == 1);
}
