// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <doctest.h>

#include "hodge/core.hpp"
#include "hodge/hypergeometric.hpp"

namespace test {

inline hodge::Residue R(const char* s) { return hodge::Residue::parse(s); }
inline hodge::Rational Q(const char* s) { return hodge::parse_rational(s); }

inline hodge::JordanBlock J(int p, const char* a, int l, hodge::Count mult = 1) {
  return hodge::JordanBlock{p, R(a), l, mult};
}

inline hodge::ModuleData kummer(const char* mu) { return hodge::make_kummer(R(mu)); }

// No points yet; callers add local data.
inline hodge::ModuleData module_with(hodge::GradedVector h, hodge::GradedVector delta) {
  hodge::ModuleData m;
  m.name = "test";
  m.h = std::move(h);
  m.delta = std::move(delta);
  return m;
}

}  // namespace test

namespace doctest {
template <>
struct StringMaker<hodge::GradedVector> {
  static String convert(const hodge::GradedVector& g) { return g.str().c_str(); }
};
template <>
struct StringMaker<hodge::BlockSet> {
  static String convert(const hodge::BlockSet& b) { return b.str().c_str(); }
};
template <>
struct StringMaker<hodge::Residue> {
  static String convert(const hodge::Residue& r) { return r.str().c_str(); }
};
}  // namespace doctest
