#include "sepsys/poly.hpp"

#include <algorithm>

namespace sepsys::poly {

void normalize(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

Coeffs add(const gf::Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint32_t x = i < a.size() ? a[i] : 0;
    uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = f.add(x, y);
  }
  normalize(r);
  return r;
}

Coeffs sub(const gf::Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint32_t x = i < a.size() ? a[i] : 0;
    uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = f.sub(x, y);
  }
  normalize(r);
  return r;
}

Coeffs mul(const gf::Field& f, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  normalize(r);
  return r;
}

Coeffs scale(const gf::Field& f, const Coeffs& a, uint32_t s) {
  if (s == 0) return {};
  Coeffs r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], s);
  normalize(r);
  return r;
}

uint32_t eval(const gf::Field& f, const Coeffs& a, uint32_t x) {
  uint32_t r = 0;
  for (size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

Laurent::Laurent(gf::Field f, int v0, std::vector<uint32_t> c, int prec)
    : f_(std::move(f)), v0_(v0), prec_(std::min(prec, kExact)), c_(std::move(c)) {
  if (static_cast<int>(c_.size()) > prec_ - v0_) c_.resize(std::max(0, prec_ - v0_));
  size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    v0_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (c_.empty()) v0_ = prec_;
}

Laurent Laurent::zero(gf::Field f, int prec) { return Laurent(std::move(f), 0, {}, prec); }

Laurent Laurent::constant(gf::Field f, uint32_t value) {
  return Laurent(std::move(f), 0, {value}, kExact);
}

Laurent Laurent::monomial(gf::Field f, uint32_t value, int exponent, int prec) {
  return Laurent(std::move(f), exponent, {value}, prec);
}

std::optional<int> Laurent::valuation() const {
  if (c_.empty()) return std::nullopt;
  return v0_;
}

uint32_t Laurent::coeff(int exponent) const {
  if (exponent >= prec_)
    throw PrecisionExhausted("series coefficient requested beyond truncation order");
  const long i = long{exponent} - v0_;
  if (i < 0 || i >= static_cast<long>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

Laurent Laurent::operator+(const Laurent& o) const {
  const int prec = std::min(prec_, o.prec_);
  // an empty (zero-to-precision) operand contributes no content span
  const int v0 = std::min({prec, v0_, o.v0_});
  int hi = v0;
  if (!c_.empty()) hi = std::max(hi, v0_ + static_cast<int>(c_.size()));
  if (!o.c_.empty()) hi = std::max(hi, o.v0_ + static_cast<int>(o.c_.size()));
  hi = std::min(hi, prec);
  std::vector<uint32_t> c(static_cast<size_t>(std::max(0, hi - v0)), 0);
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    const int e = v0 + i;
    uint32_t a = (e >= v0_ && e - v0_ < static_cast<int>(c_.size())) ? c_[e - v0_] : 0;
    uint32_t b = (e >= o.v0_ && e - o.v0_ < static_cast<int>(o.c_.size())) ? o.c_[e - o.v0_] : 0;
    c[static_cast<size_t>(i)] = f_.add(a, b);
  }
  return Laurent(f_, v0, std::move(c), prec);
}

Laurent Laurent::operator*(const Laurent& o) const {
  // Truncation: the product's coefficients are reliable strictly below
  // min(v0 + o.prec, o.v0 + prec), using the stored lower bounds.
  const int prec = std::min(v0_ + o.prec_, o.v0_ + prec_);
  const int v0 = v0_ + o.v0_;
  int n = 0;
  if (!c_.empty() && !o.c_.empty())
    n = std::min(prec - v0, static_cast<int>(c_.size() + o.c_.size()) - 1);
  std::vector<uint32_t> c(static_cast<size_t>(std::max(0, n)), 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size() && i + j < c.size(); ++j)
      c[i + j] = f_.add(c[i + j], f_.mul(c_[i], o.c_[j]));
  }
  return Laurent(f_, v0, std::move(c), prec);
}

Laurent Laurent::scaled(uint32_t s) const {
  if (s == 0) return zero(f_, prec_);
  std::vector<uint32_t> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = f_.mul(c_[i], s);
  return Laurent(f_, v0_, std::move(c), prec_);
}

Laurent Laurent::inverse() const {
  if (c_.empty())
    throw PrecisionExhausted("cannot invert a series that is zero to its precision");
  // A single exact term inverts exactly.
  if (prec_ == kExact && c_.size() == 1)
    return monomial(f_, f_.inv(c_[0]), -v0_, kExact);
  // (t^v u)^-1 = t^-v u^-1 with u a unit; standard recurrence on u. Exact
  // multi-term series get a generous finite truncation (their true inverse
  // is an infinite series).
  const int nterms = std::min(prec_ - v0_, 1 << 16);
  const uint32_t a0 = f_.inv(c_[0]);
  std::vector<uint32_t> c(static_cast<size_t>(nterms), 0);
  c[0] = a0;
  for (int i = 1; i < nterms; ++i) {
    uint32_t s = 0;
    for (int j = 1; j <= i; ++j) {
      const uint32_t aj = j < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(j)] : 0;
      if (aj) s = f_.add(s, f_.mul(aj, c[static_cast<size_t>(i - j)]));
    }
    c[static_cast<size_t>(i)] = f_.neg(f_.mul(a0, s));
  }
  return Laurent(f_, -v0_, std::move(c), -v0_ + nterms);
}

Laurent Laurent::pow(uint64_t e) const {
  Laurent r = constant(f_, 1);
  Laurent b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Laurent Laurent::truncated(int prec) const {
  return Laurent(f_, v0_, c_, std::min(prec, prec_));
}

}  // namespace sepsys::poly
