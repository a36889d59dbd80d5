#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sepsys/gf.hpp"

namespace sepsys::poly {

// Univariate polynomials over a field: coeffs[i] is the coefficient of x^i,
// normalized so the last stored coefficient is nonzero (zero = empty vector).
using Coeffs = std::vector<uint32_t>;

void normalize(Coeffs& a);
int degree(const Coeffs& a);  // -1 for the zero polynomial
Coeffs add(const gf::Field& f, const Coeffs& a, const Coeffs& b);
Coeffs sub(const gf::Field& f, const Coeffs& a, const Coeffs& b);
Coeffs mul(const gf::Field& f, const Coeffs& a, const Coeffs& b);
Coeffs scale(const gf::Field& f, const Coeffs& a, uint32_t s);
uint32_t eval(const gf::Field& f, const Coeffs& a, uint32_t x);

// Raised when a series operation cannot pin down a valuation at the current
// truncation order; callers retry at higher precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated Laurent series sum_i c[i] t^(v0+i) with all coefficients below
// t^prec known. Exact values (polynomial shifts, constants) carry a large
// sentinel precision and behave as infinitely precise under min-combining.
class Laurent {
 public:
  static constexpr int kExact = 1 << 28;

  static Laurent zero(gf::Field f, int prec = kExact);
  static Laurent constant(gf::Field f, uint32_t value);
  static Laurent monomial(gf::Field f, uint32_t value, int exponent, int prec = kExact);

  const gf::Field& field() const { return f_; }
  int prec() const { return prec_; }

  // Valuation if a nonzero coefficient is stored; nullopt when the series is
  // zero to its precision (identically zero or indeterminate).
  std::optional<int> valuation() const;
  uint32_t coeff(int exponent) const;  // throws PrecisionExhausted beyond prec

  Laurent operator+(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent scaled(uint32_t s) const;
  Laurent inverse() const;  // throws PrecisionExhausted if valuation unknown
  Laurent pow(uint64_t e) const;
  Laurent truncated(int prec) const;

 private:
  Laurent(gf::Field f, int v0, std::vector<uint32_t> c, int prec);

  gf::Field f_;
  int v0_;
  int prec_;
  std::vector<uint32_t> c_;  // c_[0] nonzero unless empty
};

}  // namespace sepsys::poly
