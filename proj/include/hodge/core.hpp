// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Value types for the numerical Hodge data of a module on the punctured
// affine line: residues, points, Jordan blocks, graded tables and the
// ModuleData bundle.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hodge {

using Rational = boost::multiprecision::cpp_rational;
using Count = std::int64_t;

enum class ErrorKind { kParse, kValidation, kPrecondition, kIo };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

// Multiplicities are machine integers; overflow is an error, never wraps.
Count checked_add(Count a, Count b);
Count checked_sub(Count a, Count b);
Count checked_mul(Count a, Count b);

// Accepts "n", "n/d" and decimal "1.25"; always reduced.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);
Rational floor_of(const Rational& q);
Rational frac_of(const Rational& q);
bool is_integer(const Rational& q);

class Residue {
 public:
  Residue() = default;
  // Throws "residue out of range" unless 0 <= v < 1.
  static Residue from(const Rational& v);
  static Residue parse(std::string_view text);
  // v mod 1.
  static Residue reduce(const Rational& v);

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  Residue operator+(const Residue& other) const;
  // (1 - a) mod 1, the residue of the dual eigenvalue.
  Residue complement() const;
  std::string str() const { return format_rational(value_); }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Residue& a, const Residue& b);

 private:
  Rational value_{0};
};

class Point {
 public:
  static Point infinity() { return Point(); }
  static Point at(const Rational& x) { return Point(x); }
  static Point parse(std::string_view text);

  bool is_infinity() const { return !coord_.has_value(); }
  const Rational& coordinate() const;
  std::string str() const;

  friend bool operator==(const Point& a, const Point& b) {
    return a.coord_ == b.coord_;
  }
  // Finite points ascending, infinity last.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  Point() = default;
  explicit Point(const Rational& x) : coord_(x) {}
  std::optional<Rational> coord_;
};

// Sparse integer table over Hodge degrees. Lookups outside the support
// return 0 and zero entries are never stored.
class GradedVector {
 public:
  GradedVector() = default;
  GradedVector(std::initializer_list<std::pair<const int, Count>> init);

  Count operator[](int p) const;
  void add(int p, Count v);
  void set(int p, Count v);

  const std::map<int, Count>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  Count total() const;
  int min_degree() const;
  int max_degree() const;
  bool nonnegative() const;
  GradedVector shifted(int k) const;
  GradedVector negated() const;

  GradedVector& operator+=(const GradedVector& o);
  GradedVector& operator-=(const GradedVector& o);
  friend GradedVector operator+(GradedVector a, const GradedVector& b) {
    return a += b;
  }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) {
    return a -= b;
  }
  friend bool operator==(const GradedVector&, const GradedVector&) = default;

  std::string str() const;

 private:
  std::map<int, Count> entries_;
};

// (f*g)^n = sum_p f^p g^(n-p)
GradedVector convolve(const GradedVector& f, const GradedVector& g);

struct JordanBlock {
  int p = 0;
  Residue a;
  int l = 1;
  Count mult = 1;

  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
  std::string str() const;
};

struct BlockKey {
  int p;
  Residue a;
  int l;
};

// Blocks sort by residue ascending, then size and degree descending.
struct BlockOrder {
  bool operator()(const BlockKey& x, const BlockKey& y) const;
};

class BlockSet {
 public:
  BlockSet() = default;
  BlockSet(std::initializer_list<JordanBlock> blocks);

  void add(const JordanBlock& b);
  void add(int p, const Residue& a, int l, Count mult = 1);
  BlockSet& operator+=(const BlockSet& o);

  std::vector<JordanBlock> blocks() const;
  const std::map<BlockKey, Count, BlockOrder>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Count multiplicity(int p, const Residue& a, int l) const;
  Count dimension() const;
  // Only J^p(0,1) blocks: the local system is smooth at this point.
  bool trivial() const;
  BlockSet shifted(int k) const;

  friend bool operator==(const BlockSet& x, const BlockSet& y);
  std::string str() const;

 private:
  std::map<BlockKey, Count, BlockOrder> entries_;
};

struct ResidueDegree {
  Residue a;
  int p;
  friend bool operator==(const ResidueDegree&, const ResidueDegree&) = default;
  friend std::strong_ordering operator<=>(const ResidueDegree& x,
                                          const ResidueDegree& y);
};

// (a, p) -> count; used for nu^p_{x,a} and omega^p_{x,a}.
using ResidueTable = std::map<ResidueDegree, Count>;

void table_add(ResidueTable& t, const Residue& a, int p, Count v);

// Graded dimensions only: nu_nonzero holds nu^p_{x,a} for a != 0,
// mu_zero holds mu^p_{x,0}.
struct Aggregate {
  ResidueTable nu_nonzero;
  GradedVector mu_zero;

  bool empty() const { return nu_nonzero.empty() && mu_zero.is_zero(); }
  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

// Local data the constructor could not determine.
struct Absent {
  friend bool operator==(const Absent&, const Absent&) = default;
};

using LocalData = std::variant<BlockSet, Aggregate, Absent>;

std::string local_kind(const LocalData& d);

struct Flags {
  bool irreducible = true;
  bool nonconstant = true;
  bool minimal_extension = true;
  // Set on convolution outputs that are not known to be irreducible.
  bool irreducibility_waived = false;
  friend bool operator==(const Flags&, const Flags&) = default;
};

struct ModuleData {
  std::string name;
  GradedVector h;
  std::optional<GradedVector> delta;  // nullopt: unknown
  std::map<Point, LocalData> points;
  std::optional<GradedVector> h1par;
  Flags flags;
  // Unstructured scalar side data (e.g. omega_0 of a hypergeometric).
  std::map<std::string, Count> annotations;

  Count rank() const { return h.total(); }
  bool has_infinity() const;
  const GradedVector& delta_or_fail() const;
  const BlockSet& infinity_blocks() const;
  std::vector<Point> finite_points() const;
};

}  // namespace hodge
