#include "sepsys/curves.hpp"

#include <algorithm>

#include "sepsys/linalg.hpp"

namespace sepsys::curves {

using poly::Coeffs;
using poly::Laurent;

namespace {

bool is_power_of(uint32_t value, uint32_t p) {
  while (value % p == 0) value /= p;
  return value == 1;
}

}  // namespace

Curve Curve::projective_line(gf::Field f) {
  auto data = std::make_shared<Data>(
      Data{CurveKind::ProjectiveLine, std::move(f), 0, 0, {}, {}});
  for (uint32_t a = 0; a < data->field.q(); ++a) {
    data->affine_index[{a, 0}] = data->points.size();
    data->points.push_back(Point::affine(a));
  }
  data->points.push_back(Point::at_infinity());
  return Curve(std::move(data));
}

Curve Curve::hermitian(uint32_t q0, gf::Field f) {
  if (q0 < 2 || !is_power_of(q0, f.p()))
    throw std::invalid_argument("hermitian: q0 must be a power of the field characteristic");
  if (f.q() != q0 * q0)
    throw std::invalid_argument("hermitian: field must be the quadratic extension GF(q0^2)");
  auto data = std::make_shared<Data>(Data{CurveKind::Hermitian, std::move(f), q0,
                                          static_cast<int>(q0 * (q0 - 1) / 2),
                                          {},
                                          {}});
  const gf::Field& F = data->field;
  // affine points: y^q0 + y = x^(q0+1), in lexicographic coordinate order
  for (uint32_t a = 0; a < F.q(); ++a) {
    const uint32_t rhs = F.pow(a, q0 + 1);
    for (uint32_t b = 0; b < F.q(); ++b) {
      if (F.add(F.pow(b, q0), b) == rhs) {
        data->affine_index[{a, b}] = data->points.size();
        data->points.push_back(Point::affine(a, b));
      }
    }
  }
  data->points.push_back(Point::at_infinity());
  const size_t expected = size_t{q0} * q0 * q0 + 1;
  if (data->points.size() != expected)
    throw std::logic_error("hermitian: rational point count mismatch");
  return Curve(std::move(data));
}

size_t Curve::index_of(const Point& p) const {
  if (p.infinity) return infinity_index();
  auto it = d_->affine_index.find({p.x, p.y});
  if (it == d_->affine_index.end())
    throw std::invalid_argument("index_of: not a rational point of the curve");
  return it->second;
}

bool Curve::operator==(const Curve& o) const {
  if (d_ == o.d_) return true;
  return d_->kind == o.d_->kind && d_->field == o.d_->field && d_->q0 == o.d_->q0;
}

// ---------------------------------------------------------------------------
// divisors

Divisor Divisor::single(const Curve& c, size_t point_index, int mult) {
  Divisor d(c);
  d.set(point_index, mult);
  return d;
}

int Divisor::degree() const {
  int deg = 0;
  for (const auto& [idx, m] : mult_) deg += m;
  return deg;
}

int Divisor::mult(size_t point_index) const {
  auto it = mult_.find(point_index);
  return it == mult_.end() ? 0 : it->second;
}

Divisor& Divisor::set(size_t point_index, int mult) {
  if (point_index >= curve_.point_count())
    throw std::invalid_argument("divisor: point index out of range");
  if (mult == 0)
    mult_.erase(point_index);
  else
    mult_[point_index] = mult;
  return *this;
}

Divisor Divisor::plus(size_t point_index, int mult) const {
  Divisor d = *this;
  d.set(point_index, d.mult(point_index) + mult);
  return d;
}

Divisor Divisor::operator+(const Divisor& o) const {
  if (!(curve_ == o.curve_)) throw std::invalid_argument("divisor: curves differ");
  Divisor d = *this;
  for (const auto& [idx, m] : o.mult_) d.set(idx, d.mult(idx) + m);
  return d;
}

Divisor Divisor::operator-(const Divisor& o) const { return *this + (-o); }

Divisor Divisor::operator-() const {
  Divisor d(curve_);
  for (const auto& [idx, m] : mult_) d.mult_[idx] = -m;
  return d;
}

Divisor Divisor::scaled(int s) const {
  Divisor d(curve_);
  if (s != 0)
    for (const auto& [idx, m] : mult_) d.mult_[idx] = s * m;
  return d;
}

bool Divisor::operator==(const Divisor& o) const {
  return curve_ == o.curve_ && mult_ == o.mult_;
}

// ---------------------------------------------------------------------------
// bivariate polynomials reduced modulo the curve equation

namespace {

void bipoly_trim(BiPoly& p) {
  while (!p.rows.empty() && p.rows.back().empty()) p.rows.pop_back();
}

// y^q0 -> x^(q0+1) - y, applied until the y-degree is < q0
void bipoly_reduce(const Curve& c, BiPoly& p) {
  if (c.kind() == CurveKind::ProjectiveLine) {
    if (p.rows.size() > 1) throw std::logic_error("bipoly: y on the projective line");
    bipoly_trim(p);
    return;
  }
  const gf::Field& f = c.field();
  const uint32_t q0 = c.q0();
  bipoly_trim(p);
  while (p.rows.size() > q0) {
    Coeffs top = std::move(p.rows.back());
    p.rows.pop_back();
    const size_t d = p.rows.size() - q0;  // leftover y-degree
    if (top.empty()) continue;
    Coeffs xq1(q0 + 2, 0);
    xq1[q0 + 1] = 1;
    p.rows[d] = poly::add(f, p.rows[d], poly::mul(f, top, xq1));
    p.rows[d + 1] = poly::sub(f, p.rows[d + 1], top);
    bipoly_trim(p);
  }
}

}  // namespace

BiPoly bipoly_monomial(const Curve& c, size_t i, size_t j, uint32_t coeff) {
  BiPoly p;
  if (coeff == 0) return p;
  p.rows.resize(j + 1);
  p.rows[j] = Coeffs(i + 1, 0);
  p.rows[j][i] = coeff;
  bipoly_reduce(c, p);
  return p;
}

BiPoly bipoly_add(const Curve& c, const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  r.rows.resize(std::max(a.rows.size(), b.rows.size()));
  for (size_t j = 0; j < r.rows.size(); ++j) {
    const Coeffs& ra = j < a.rows.size() ? a.rows[j] : Coeffs{};
    const Coeffs& rb = j < b.rows.size() ? b.rows[j] : Coeffs{};
    r.rows[j] = poly::add(c.field(), ra, rb);
  }
  bipoly_trim(r);
  return r;
}

BiPoly bipoly_mul(const Curve& c, const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.rows.assign(a.rows.size() + b.rows.size() - 1, {});
  for (size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].empty()) continue;
    for (size_t j = 0; j < b.rows.size(); ++j) {
      if (b.rows[j].empty()) continue;
      r.rows[i + j] = poly::add(c.field(), r.rows[i + j],
                                poly::mul(c.field(), a.rows[i], b.rows[j]));
    }
  }
  bipoly_reduce(c, r);
  return r;
}

BiPoly bipoly_scale(const Curve& c, const BiPoly& a, uint32_t s) {
  BiPoly r;
  if (s == 0) return r;
  r.rows.resize(a.rows.size());
  for (size_t j = 0; j < a.rows.size(); ++j) r.rows[j] = poly::scale(c.field(), a.rows[j], s);
  bipoly_trim(r);
  return r;
}

namespace {

// -v_inf of a nonzero numerator: max monomial weight i*wx + j*wy. The weights
// are pairwise distinct for j < q0, so no cancellation can occur at infinity.
int bipoly_infinity_weight(const Curve& c, const BiPoly& p) {
  int best = -1;
  for (size_t j = 0; j < p.rows.size(); ++j)
    for (size_t i = 0; i < p.rows[j].size(); ++i)
      if (p.rows[j][i]) {
        const int w = static_cast<int>(i) * c.weight_x() +
                      static_cast<int>(j) * (c.kind() == CurveKind::Hermitian ? c.weight_y() : 0);
        best = std::max(best, w);
      }
  return best;
}

Coeffs den_as_poly(const gf::Field& f, const std::map<uint32_t, int>& den) {
  Coeffs r{1};
  for (const auto& [a, e] : den) {
    Coeffs lin{f.neg(a), 1};
    for (int t = 0; t < e; ++t) r = poly::mul(f, r, lin);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// function representatives

FunctionRep::FunctionRep(Curve c, BiPoly num, std::map<uint32_t, int> den)
    : curve_(std::move(c)), num_(std::move(num)), den_(std::move(den)) {
  bipoly_reduce(curve_, num_);
  for (auto it = den_.begin(); it != den_.end();) {
    if (it->second == 0)
      it = den_.erase(it);
    else if (it->second < 0)
      throw std::invalid_argument("function: denominator exponents must be positive");
    else if (it->first >= curve_.field().q())
      throw std::invalid_argument("function: denominator root outside the field");
    else
      ++it;
  }
  if (num_.is_zero()) den_.clear();
}

FunctionRep FunctionRep::constant(const Curve& c, uint32_t value) {
  return FunctionRep(c, bipoly_monomial(c, 0, 0, value), {});
}

FunctionRep FunctionRep::monomial(const Curve& c, size_t i, size_t j) {
  return FunctionRep(c, bipoly_monomial(c, i, j), {});
}

FunctionRep FunctionRep::operator+(const FunctionRep& o) const {
  if (!(curve_ == o.curve_)) throw std::invalid_argument("function: curves differ");
  // common denominator: max exponent per root; numerators are multiplied by
  // the missing univariate factors
  std::map<uint32_t, int> den;
  for (const auto& [a, e] : den_) den[a] = e;
  for (const auto& [a, e] : o.den_) den[a] = std::max(den.count(a) ? den[a] : 0, e);
  auto lift = [&](const FunctionRep& fr) {
    Coeffs extra{1};
    for (const auto& [a, e] : den) {
      const int have = fr.den_.count(a) ? fr.den_.at(a) : 0;
      Coeffs lin{curve_.field().neg(a), 1};
      for (int t = have; t < e; ++t) extra = poly::mul(curve_.field(), extra, lin);
    }
    BiPoly ext;
    ext.rows = {extra};
    return bipoly_mul(curve_, fr.num_, ext);
  };
  return FunctionRep(curve_, bipoly_add(curve_, lift(*this), lift(o)), std::move(den));
}

FunctionRep FunctionRep::operator*(const FunctionRep& o) const {
  if (!(curve_ == o.curve_)) throw std::invalid_argument("function: curves differ");
  std::map<uint32_t, int> den = den_;
  for (const auto& [a, e] : o.den_) den[a] += e;
  return FunctionRep(curve_, bipoly_mul(curve_, num_, o.num_), std::move(den));
}

FunctionRep FunctionRep::scaled(uint32_t s) const {
  return FunctionRep(curve_, bipoly_scale(curve_, num_, s), den_);
}

bool FunctionRep::equals(const FunctionRep& o) const {
  if (!(curve_ == o.curve_)) return false;
  const gf::Field& f = curve_.field();
  BiPoly db, da;
  db.rows = {den_as_poly(f, o.den_)};
  da.rows = {den_as_poly(f, den_)};
  BiPoly lhs = bipoly_mul(curve_, num_, db);
  BiPoly rhs = bipoly_mul(curve_, o.num_, da);
  return lhs.rows == rhs.rows;
}

// ---------------------------------------------------------------------------
// local expansions

namespace {

struct CoordSeries {
  Laurent x;
  std::optional<Laurent> y;
};

// Coordinate functions expanded in the canonical parameter at p, with every
// coefficient below t^prec exact.
CoordSeries coordinate_series(const Curve& c, const Point& p, int prec) {
  const gf::Field& f = c.field();
  if (c.kind() == CurveKind::ProjectiveLine) {
    if (p.infinity) return {Laurent::monomial(f, 1, -1), std::nullopt};  // x = 1/t
    Laurent x = Laurent::constant(f, p.x) + Laurent::monomial(f, 1, 1);  // x = a + t
    return {std::move(x), std::nullopt};
  }
  const uint32_t q0 = c.q0();
  if (!p.infinity) {
    // t = x - a; solve y(t)^q0 + y(t) = x(t)^(q0+1) by Newton steps. The
    // y-derivative of the curve equation is identically 1, and in
    // characteristic p the residual gets raised to the q0-th power each
    // step, so convergence is immediate.
    Laurent x = Laurent::constant(f, p.x) + Laurent::monomial(f, 1, 1);
    Laurent y = Laurent::constant(f, p.y).truncated(prec);
    const Laurent rhs = x.pow(q0 + 1).truncated(prec);
    const uint32_t minus1 = f.neg(1);
    while (true) {
      Laurent resid = (y.pow(q0) + y + rhs.scaled(minus1)).truncated(prec);
      if (!resid.valuation()) break;
      y = (y + resid.scaled(minus1)).truncated(prec);
    }
    return {std::move(x).truncated(prec), std::move(y)};
  }
  // Infinity chart (second projective chart of the curve): coordinates
  // (T, Z) = (x/y, 1/y) satisfy Z + Z^q0 = T^(q0+1), and T is the canonical
  // parameter. Then x = T/Z and y = 1/Z.
  const int pad = 2 * (static_cast<int>(q0) + 1) + 2;
  const int wp = prec + pad;
  Laurent t = Laurent::monomial(f, 1, 1, wp);
  Laurent z = Laurent::zero(f, wp);
  const Laurent rhs = t.pow(q0 + 1).truncated(wp);
  const uint32_t minus1 = f.neg(1);
  while (true) {
    Laurent resid = (z.pow(q0) + z + rhs.scaled(minus1)).truncated(wp);
    if (!resid.valuation()) break;
    z = (z + resid.scaled(minus1)).truncated(wp);
  }
  Laurent zinv = z.inverse();
  return {t * zinv, zinv};
}

// Series of num/den at p with all coefficients below t^prec exact. Never
// indeterminate for nonzero f: the working precision is grown until the
// result's truncation covers the request.
Laurent function_series(const Curve& c, const BiPoly& num, const std::map<uint32_t, int>& den,
                        const Point& p, int prec) {
  const gf::Field& f = c.field();
  if (num.is_zero()) return Laurent::zero(f, prec);

  int den_total = 0;
  for (const auto& [a, e] : den) den_total += e;
  int margin = 4 + den_total * c.weight_x() + std::max(0, bipoly_infinity_weight(c, num));

  for (int attempt = 0; attempt < 8; ++attempt) {
    const int wp = prec + margin;
    CoordSeries cs = coordinate_series(c, p, wp);

    // numerator via Horner in y, rows evaluated as series in x
    Laurent acc = Laurent::zero(f, wp);
    for (size_t j = num.rows.size(); j-- > 0;) {
      Laurent row = Laurent::zero(f, wp);
      if (!num.rows[j].empty()) {
        for (size_t i = num.rows[j].size(); i-- > 0;) {
          row = row * cs.x;
          if (num.rows[j][i]) row = row + Laurent::constant(f, num.rows[j][i]);
        }
      }
      if (cs.y)
        acc = acc * *cs.y + row;
      else
        acc = row;  // the line has no y
    }

    for (const auto& [a, e] : den) {
      Laurent factor = cs.x + Laurent::constant(f, f.neg(a));
      acc = acc * factor.truncated(wp).inverse().pow(static_cast<uint64_t>(e));
    }

    if (acc.prec() >= prec) return acc.truncated(prec);
    margin *= 2;
  }
  throw std::logic_error("function_series: could not reach requested precision");
}

}  // namespace

poly::Laurent local_expansion(const FunctionRep& f, const Point& p, int precision) {
  if (precision < 1) throw std::invalid_argument("local_expansion: precision must be >= 1");
  f.curve().index_of(p);  // validates p
  Laurent s = function_series(f.curve(), f.num(), f.den(), p, precision);
  if (!f.is_zero() && !s.valuation())
    throw poly::PrecisionExhausted(
        "local_expansion: all coefficients zero at this precision; retry higher");
  return s;
}

int valuation(const FunctionRep& f, const Point& p) {
  if (f.is_zero()) throw std::invalid_argument("valuation: zero function");
  const Curve& c = f.curve();
  c.index_of(p);
  if (p.infinity) {
    int den_total = 0;
    for (const auto& [a, e] : f.den()) den_total += e;
    return -bipoly_infinity_weight(c, f.num()) + den_total * c.weight_x();
  }
  int prec = 8;
  for (int attempt = 0; attempt < 16; ++attempt) {
    Laurent s = function_series(c, f.num(), f.den(), p, prec);
    if (auto v = s.valuation()) return *v;
    prec *= 2;
  }
  throw std::logic_error("valuation: nonzero function with no detectable valuation");
}

// ---------------------------------------------------------------------------
// Riemann-Roch spaces

namespace {

struct RRSystem {
  std::vector<std::pair<int, int>> monomials;  // (i, j), sorted by weight
  std::map<uint32_t, int> den;
  linalg::Mat conditions;
};

// Set up the linear system whose kernel is L(D), in the monomial coordinates
// of L(M * P_inf) after clearing denominators:
//   h = prod (x-a)^(e_a) with e_a = max over the fiber of positive
//   multiplicities, M = v_inf(D) + deg_inf(h); a basis element is phi/h with
//   phi a monomial combination vanishing to order e_a - v_P(D) at each
//   affected affine point.
std::optional<RRSystem> rr_system(const Curve& c, const Divisor& d) {
  if (d.degree() < 0) return std::nullopt;
  const gf::Field& f = c.field();
  const auto& pts = c.points();
  const size_t inf_idx = c.infinity_index();

  RRSystem sys;
  for (const auto& [idx, m] : d.support()) {
    if (idx == inf_idx || m <= 0) continue;
    const uint32_t a = pts[idx].x;
    auto it = sys.den.find(a);
    if (it == sys.den.end())
      sys.den[a] = m;
    else
      it->second = std::max(it->second, m);
  }
  int den_total = 0;
  for (const auto& [a, e] : sys.den) den_total += e;
  const int M = d.mult(inf_idx) + den_total * c.weight_x();
  if (M < 0) return std::nullopt;

  if (c.kind() == CurveKind::ProjectiveLine) {
    for (int i = 0; i <= M; ++i) sys.monomials.emplace_back(i, 0);
  } else {
    const int wx = c.weight_x(), wy = c.weight_y();
    for (int w = 0; w <= M; ++w)
      for (int j = 0; j < static_cast<int>(c.q0()); ++j) {
        if (j * wy > w) break;
        if ((w - j * wy) % wx == 0) sys.monomials.emplace_back((w - j * wy) / wx, j);
      }
  }
  if (sys.monomials.empty()) return std::nullopt;

  // vanishing conditions: fibers of cleared roots plus negative affine
  // multiplicities elsewhere
  std::vector<size_t> cond_points;
  for (size_t idx = 0; idx < pts.size(); ++idx) {
    if (idx == inf_idx) continue;
    const int e = sys.den.count(pts[idx].x) ? sys.den.at(pts[idx].x) : 0;
    const int r = e - d.mult(idx);
    if (r > 0) cond_points.push_back(idx);
  }

  for (size_t idx : cond_points) {
    const Point& p = pts[idx];
    const int e = sys.den.count(p.x) ? sys.den.at(p.x) : 0;
    const int r = e - d.mult(idx);
    CoordSeries cs = coordinate_series(c, p, r + 2);
    // powers of the coordinate series, then one row per vanishing order
    int max_i = 0, max_j = 0;
    for (const auto& [i, j] : sys.monomials) {
      max_i = std::max(max_i, i);
      max_j = std::max(max_j, j);
    }
    std::vector<Laurent> xpow{Laurent::constant(f, 1)};
    for (int i = 1; i <= max_i; ++i) xpow.push_back(xpow.back() * cs.x);
    std::vector<Laurent> ypow{Laurent::constant(f, 1)};
    if (cs.y)
      for (int j = 1; j <= max_j; ++j) ypow.push_back(ypow.back() * *cs.y);
    std::vector<Laurent> mono;
    mono.reserve(sys.monomials.size());
    for (const auto& [i, j] : sys.monomials)
      mono.push_back(xpow[static_cast<size_t>(i)] *
                     (j > 0 ? ypow[static_cast<size_t>(j)] : ypow[0]));
    for (int order = 0; order < r; ++order) {
      std::vector<uint32_t> row;
      row.reserve(mono.size());
      for (const auto& s : mono) row.push_back(s.coeff(order));
      sys.conditions.push_back(std::move(row));
    }
  }
  return sys;
}

}  // namespace

int l_dim(const Curve& c, const Divisor& d) {
  if (!(d.curve() == c)) throw std::invalid_argument("l_dim: divisor on a different curve");
  auto sys = rr_system(c, d);
  if (!sys) return 0;
  return static_cast<int>(sys->monomials.size()) -
         static_cast<int>(linalg::rank(c.field(), sys->conditions));
}

std::vector<FunctionRep> riemann_roch_basis(const Curve& c, const Divisor& d) {
  if (!(d.curve() == c))
    throw std::invalid_argument("riemann_roch_basis: divisor on a different curve");
  auto sys = rr_system(c, d);
  std::vector<FunctionRep> basis;
  if (!sys) return basis;
  linalg::Mat ker = linalg::kernel_basis(c.field(), sys->conditions, sys->monomials.size());
  basis.reserve(ker.size());
  for (const auto& v : ker) {
    BiPoly num;
    for (size_t t = 0; t < v.size(); ++t) {
      if (v[t] == 0) continue;
      const auto [i, j] = sys->monomials[t];
      num = bipoly_add(c, num,
                       bipoly_monomial(c, static_cast<size_t>(i), static_cast<size_t>(j), v[t]));
    }
    basis.emplace_back(c, std::move(num), sys->den);
  }
  return basis;
}

Divisor canonical_divisor(const Curve& c) {
  Divisor d(c);
  if (c.kind() == CurveKind::ProjectiveLine)
    d.set(c.infinity_index(), -2);
  else
    d.set(c.infinity_index(), 2 * c.genus() - 2);
  return d;
}

}  // namespace sepsys::curves
