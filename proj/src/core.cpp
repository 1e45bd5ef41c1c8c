// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/core.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace hodge {

using boost::multiprecision::cpp_int;

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) {
    fail(ErrorKind::kPrecondition, "multiplicity overflow");
  }
  return r;
}

Count checked_sub(Count a, Count b) {
  Count r;
  if (__builtin_sub_overflow(a, b, &r)) {
    fail(ErrorKind::kPrecondition, "multiplicity overflow");
  }
  return r;
}

Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) {
    fail(ErrorKind::kPrecondition, "multiplicity overflow");
  }
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

[[noreturn]] void malformed(std::string_view text) {
  fail(ErrorKind::kParse, "malformed rational '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) malformed(text);
    cpp_int d(std::string{den});
    if (d == 0) malformed(text);
    value = Rational(cpp_int(std::string{num}), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), part = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(part)) malformed(text);
    cpp_int scale = boost::multiprecision::pow(cpp_int(10),
                                               static_cast<unsigned>(part.size()));
    value = Rational(cpp_int(std::string{whole}) * scale +
                         cpp_int(std::string{part}),
                     scale);
  } else {
    if (!all_digits(s)) malformed(text);
    value = Rational(cpp_int(std::string{s}));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational floor_of(const Rational& q) {
  cpp_int num = boost::multiprecision::numerator(q);
  cpp_int den = boost::multiprecision::denominator(q);
  cpp_int quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return Rational(quot);
}

Rational frac_of(const Rational& q) { return q - floor_of(q); }

bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

Residue Residue::from(const Rational& v) {
  if (v < 0 || v >= 1) {
    fail(ErrorKind::kValidation,
         "residue out of range: " + format_rational(v));
  }
  Residue r;
  r.value_ = v;
  return r;
}

Residue Residue::parse(std::string_view text) {
  Rational v = parse_rational(text);
  if (v < 0 || v >= 1) {
    fail(ErrorKind::kParse, "residue out of range: " + std::string(text));
  }
  return from(v);
}

Residue Residue::reduce(const Rational& v) { return from(frac_of(v)); }

Residue Residue::operator+(const Residue& other) const {
  Rational s = value_ + other.value_;
  if (s >= 1) s -= 1;
  return from(s);
}

Residue Residue::complement() const {
  if (is_zero()) return *this;
  return from(1 - value_);
}

std::strong_ordering operator<=>(const Residue& a, const Residue& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Point Point::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return infinity();
  return at(parse_rational(text));
}

const Rational& Point::coordinate() const {
  if (!coord_) fail(ErrorKind::kPrecondition, "infinity has no coordinate");
  return *coord_;
}

std::string Point::str() const {
  return coord_ ? format_rational(*coord_) : std::string("inf");
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.is_infinity() || b.is_infinity()) {
    if (a.is_infinity() && b.is_infinity()) return std::strong_ordering::equal;
    return a.is_infinity() ? std::strong_ordering::greater
                           : std::strong_ordering::less;
  }
  if (*a.coord_ < *b.coord_) return std::strong_ordering::less;
  if (*b.coord_ < *a.coord_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

GradedVector::GradedVector(std::initializer_list<std::pair<const int, Count>> init) {
  for (const auto& [p, v] : init) add(p, v);
}

Count GradedVector::operator[](int p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? 0 : it->second;
}

void GradedVector::add(int p, Count v) {
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace(p, 0);
  it->second = checked_add(it->second, v);
  if (it->second == 0) entries_.erase(it);
}

void GradedVector::set(int p, Count v) {
  if (v == 0) {
    entries_.erase(p);
  } else {
    entries_[p] = v;
  }
}

Count GradedVector::total() const {
  Count s = 0;
  for (const auto& [p, v] : entries_) s = checked_add(s, v);
  return s;
}

int GradedVector::min_degree() const {
  if (entries_.empty()) fail(ErrorKind::kPrecondition, "empty graded vector");
  return entries_.begin()->first;
}

int GradedVector::max_degree() const {
  if (entries_.empty()) fail(ErrorKind::kPrecondition, "empty graded vector");
  return entries_.rbegin()->first;
}

bool GradedVector::nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.second >= 0; });
}

GradedVector GradedVector::shifted(int k) const {
  GradedVector r;
  for (const auto& [p, v] : entries_) r.entries_[p + k] = v;
  return r;
}

GradedVector GradedVector::negated() const {
  GradedVector r;
  for (const auto& [p, v] : entries_) r.entries_[p] = checked_sub(0, v);
  return r;
}

GradedVector& GradedVector::operator+=(const GradedVector& o) {
  for (const auto& [p, v] : o.entries_) add(p, v);
  return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& o) {
  for (const auto& [p, v] : o.entries_) add(p, checked_sub(0, v));
  return *this;
}

std::string GradedVector::str() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [p, v] : entries_) {
    if (!first) out << ", ";
    out << p << ':' << v;
    first = false;
  }
  out << '}';
  return out.str();
}

GradedVector convolve(const GradedVector& f, const GradedVector& g) {
  GradedVector r;
  for (const auto& [p, v] : f.entries()) {
    for (const auto& [q, w] : g.entries()) r.add(p + q, checked_mul(v, w));
  }
  return r;
}

std::string JordanBlock::str() const {
  std::string s = "J^" + std::to_string(p) + "(" + a.str() + "," +
                  std::to_string(l) + ")";
  if (mult != 1) s += "^" + std::to_string(mult);
  return s;
}

bool BlockOrder::operator()(const BlockKey& x, const BlockKey& y) const {
  if (x.a != y.a) return x.a < y.a;
  if (x.l != y.l) return x.l > y.l;
  return x.p > y.p;
}

BlockSet::BlockSet(std::initializer_list<JordanBlock> blocks) {
  for (const auto& b : blocks) add(b);
}

void BlockSet::add(const JordanBlock& b) { add(b.p, b.a, b.l, b.mult); }

void BlockSet::add(int p, const Residue& a, int l, Count mult) {
  if (l < 1) fail(ErrorKind::kValidation, "block size must be >= 1");
  if (mult < 0) fail(ErrorKind::kValidation, "negative block multiplicity");
  if (mult == 0) return;
  auto [it, inserted] = entries_.try_emplace(BlockKey{p, a, l}, 0);
  it->second = checked_add(it->second, mult);
}

BlockSet& BlockSet::operator+=(const BlockSet& o) {
  for (const auto& [k, m] : o.entries_) add(k.p, k.a, k.l, m);
  return *this;
}

std::vector<JordanBlock> BlockSet::blocks() const {
  std::vector<JordanBlock> out;
  out.reserve(entries_.size());
  for (const auto& [k, m] : entries_) out.push_back({k.p, k.a, k.l, m});
  return out;
}

Count BlockSet::multiplicity(int p, const Residue& a, int l) const {
  auto it = entries_.find(BlockKey{p, a, l});
  return it == entries_.end() ? 0 : it->second;
}

Count BlockSet::dimension() const {
  Count d = 0;
  for (const auto& [k, m] : entries_) d = checked_add(d, checked_mul(k.l, m));
  return d;
}

bool BlockSet::trivial() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) {
    return e.first.a.is_zero() && e.first.l == 1;
  });
}

BlockSet BlockSet::shifted(int k) const {
  BlockSet r;
  for (const auto& [key, m] : entries_) r.add(key.p + k, key.a, key.l, m);
  return r;
}

bool operator==(const BlockSet& x, const BlockSet& y) {
  if (x.entries_.size() != y.entries_.size()) return false;
  auto it = y.entries_.begin();
  for (const auto& [k, m] : x.entries_) {
    if (k.p != it->first.p || k.a != it->first.a || k.l != it->first.l ||
        m != it->second) {
      return false;
    }
    ++it;
  }
  return true;
}

std::string BlockSet::str() const {
  if (entries_.empty()) return "0";
  std::string s;
  for (const auto& b : blocks()) {
    if (!s.empty()) s += " + ";
    s += b.str();
  }
  return s;
}

std::strong_ordering operator<=>(const ResidueDegree& x,
                                 const ResidueDegree& y) {
  if (auto c = x.a <=> y.a; c != 0) return c;
  return x.p <=> y.p;
}

void table_add(ResidueTable& t, const Residue& a, int p, Count v) {
  if (v == 0) return;
  auto [it, inserted] = t.try_emplace(ResidueDegree{a, p}, 0);
  it->second = checked_add(it->second, v);
  if (it->second == 0) t.erase(it);
}

std::string local_kind(const LocalData& d) {
  switch (d.index()) {
    case 0: return "blocks";
    case 1: return "aggregate";
    default: return "absent";
  }
}

bool ModuleData::has_infinity() const {
  return points.count(Point::infinity()) != 0;
}

const GradedVector& ModuleData::delta_or_fail() const {
  if (!delta) fail(ErrorKind::kPrecondition, "field unknown: delta of " + name);
  return *delta;
}

const BlockSet& ModuleData::infinity_blocks() const {
  auto it = points.find(Point::infinity());
  if (it == points.end()) {
    fail(ErrorKind::kPrecondition, "missing infinity data in " + name);
  }
  if (const auto* b = std::get_if<BlockSet>(&it->second)) return *b;
  fail(ErrorKind::kPrecondition,
       "aggregate-only infinity data in " + name + " (" +
           local_kind(it->second) + "); Jordan blocks required");
}

std::vector<Point> ModuleData::finite_points() const {
  std::vector<Point> out;
  for (const auto& [x, d] : points) {
    if (!x.is_infinity()) out.push_back(x);
  }
  return out;
}

}  // namespace hodge
