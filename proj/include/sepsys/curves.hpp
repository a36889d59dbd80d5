#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "sepsys/gf.hpp"
#include "sepsys/poly.hpp"

namespace sepsys::curves {

enum class CurveKind { ProjectiveLine, Hermitian };

struct Point {
  bool infinity = false;
  uint32_t x = 0, y = 0;  // coordinate encodings; y unused on the line

  static Point at_infinity() { return Point{true, 0, 0}; }
  static Point affine(uint32_t x, uint32_t y = 0) { return Point{false, x, y}; }

  bool operator==(const Point& o) const {
    return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
  }
};

// The projective line over GF(q), or the Hermitian curve
// y^q0 + y = x^(q0+1) over GF(q0^2). Immutable; rational points are
// enumerated at construction (affine points in lexicographic order of their
// coordinate encodings, the point at infinity last) and this order is the
// canonical one used everywhere: divisor supports, evaluation orderings and
// divisor searches all refer to point indices in it.
class Curve {
 public:
  static Curve projective_line(gf::Field f);
  static Curve hermitian(uint32_t q0, gf::Field f);

  CurveKind kind() const { return d_->kind; }
  const gf::Field& field() const { return d_->field; }
  uint32_t q0() const { return d_->q0; }
  int genus() const { return d_->genus; }

  const std::vector<Point>& points() const { return d_->points; }
  size_t point_count() const { return d_->points.size(); }
  size_t infinity_index() const { return d_->points.size() - 1; }
  size_t index_of(const Point& p) const;  // throws if not a rational point

  // Pole orders at infinity of the coordinate functions: -v_inf(x), -v_inf(y).
  int weight_x() const { return d_->kind == CurveKind::Hermitian ? int(d_->q0) : 1; }
  int weight_y() const { return int(d_->q0) + 1; }

  bool operator==(const Curve& o) const;

 private:
  struct Data {
    CurveKind kind;
    gf::Field field;
    uint32_t q0 = 0;
    int genus = 0;
    std::vector<Point> points;
    std::map<std::pair<uint32_t, uint32_t>, size_t> affine_index;
  };
  explicit Curve(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// Formal integer combination of rational points, stored by canonical point
// index with nonzero multiplicities only.
class Divisor {
 public:
  explicit Divisor(Curve c) : curve_(std::move(c)) {}
  static Divisor single(const Curve& c, size_t point_index, int mult);

  const Curve& curve() const { return curve_; }
  int degree() const;
  int mult(size_t point_index) const;
  const std::map<size_t, int>& support() const { return mult_; }

  Divisor& set(size_t point_index, int mult);
  Divisor plus(size_t point_index, int mult) const;

  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor operator-() const;
  Divisor scaled(int s) const;
  bool operator==(const Divisor& o) const;

 private:
  Curve curve_;
  std::map<size_t, int> mult_;
};

// Numerator of a function: a polynomial in x (line) or in x and y with
// y-degree < q0 (Hermitian, reduced via y^q0 = x^(q0+1) - y). rows[j] holds
// the coefficient polynomial of y^j.
struct BiPoly {
  std::vector<poly::Coeffs> rows;
  bool is_zero() const { return rows.empty(); }
};

BiPoly bipoly_monomial(const Curve& c, size_t i, size_t j, uint32_t coeff = 1);
BiPoly bipoly_add(const Curve& c, const BiPoly& a, const BiPoly& b);
BiPoly bipoly_mul(const Curve& c, const BiPoly& a, const BiPoly& b);
BiPoly bipoly_scale(const Curve& c, const BiPoly& a, uint32_t s);

// A function-field element in cleared-denominator form:
// num / prod_j (x - a_j)^(e_j). Supports exactly the functions with poles
// along rational fibers and at infinity, which covers every L(D) with
// rational support. Equality is exact (cross-multiplied and reduced).
class FunctionRep {
 public:
  FunctionRep(Curve c, BiPoly num, std::map<uint32_t, int> den);
  static FunctionRep constant(const Curve& c, uint32_t value);
  static FunctionRep monomial(const Curve& c, size_t i, size_t j = 0);

  const Curve& curve() const { return curve_; }
  const BiPoly& num() const { return num_; }
  const std::map<uint32_t, int>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  FunctionRep operator+(const FunctionRep& o) const;
  FunctionRep operator*(const FunctionRep& o) const;
  FunctionRep scaled(uint32_t s) const;
  bool equals(const FunctionRep& o) const;

 private:
  Curve curve_;
  BiPoly num_;
  std::map<uint32_t, int> den_;  // x-encoding -> exponent >= 1
};

// Truncated expansion of f in the canonical local parameter at p:
//   t = x - a at affine points (the Hermitian y-branch is recovered by
//   Newton iteration on the curve equation, which converges since the
//   y-derivative is identically 1);
//   t = 1/x at infinity on the line, t = x/y at infinity on the Hermitian
//   curve.
// Coefficients are exact below the truncation order. Throws
// poly::PrecisionExhausted when the result is zero to the requested order,
// so callers can retry with a higher precision.
poly::Laurent local_expansion(const FunctionRep& f, const Point& p, int precision);

// Order of vanishing of nonzero f at p (negative for poles). Affine points
// use series expansions with doubling retry; at infinity the exact monomial
// rule applies: v_inf(x^i y^j) = -(i q0 + j (q0+1)), and those weights are
// pairwise distinct for j < q0, so the numerator's valuation is read off
// monomial-by-monomial with no cancellation.
int valuation(const FunctionRep& f, const Point& p);

// Basis of L(D) = { f : div(f) + D >= 0 }, by denominator clearing into the
// monomial basis of L(M * P_inf) and exact kernel extraction from the
// truncated vanishing conditions at affine points. Deterministic.
std::vector<FunctionRep> riemann_roch_basis(const Curve& c, const Divisor& d);

// dim L(D) (rank computation only; no basis materialization).
int l_dim(const Curve& c, const Divisor& d);

// (2g-2) * P_inf on the Hermitian curve (the divisor of dx: x - a is a local
// parameter at every affine point, so dx has no affine zeros); -2 * inf on
// the line.
Divisor canonical_divisor(const Curve& c);

}  // namespace sepsys::curves
