#include "sepsys/agcodes.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "parallel.hpp"

namespace sepsys::ag {

using curves::Curve;
using curves::Divisor;
using curves::FunctionRep;

EvalCodeSpec make_spec(Curve curve, std::vector<size_t> g_points, Divisor d) {
  if (!(d.curve() == curve)) throw std::invalid_argument("make_spec: divisor on another curve");
  if (g_points.empty()) throw std::invalid_argument("make_spec: G must be nonempty");
  std::set<size_t> seen;
  for (size_t idx : g_points) {
    if (idx >= curve.point_count()) throw std::invalid_argument("make_spec: point index range");
    if (!seen.insert(idx).second)
      throw std::invalid_argument("make_spec: G must be multiplicity-free");
  }
  return EvalCodeSpec{std::move(curve), std::move(g_points), std::move(d)};
}

std::vector<uint32_t> evaluate_phi(const EvalCodeSpec& spec, const FunctionRep& f) {
  const auto& pts = spec.curve.points();
  std::vector<uint32_t> word;
  word.reserve(spec.g_points.size());
  for (size_t idx : spec.g_points) {
    const int v = spec.d.mult(idx);
    if (f.is_zero()) {
      word.push_back(0);
      continue;
    }
    int prec = 8;
    for (;; prec *= 2) {
      if (prec > (1 << 14)) throw std::logic_error("evaluate_phi: runaway precision");
      std::optional<poly::Laurent> s;
      try {
        s = curves::local_expansion(f, pts[idx], std::max(1, -v + prec));
      } catch (const poly::PrecisionExhausted&) {
        continue;  // valuation not visible yet; widen the window
      }
      const auto val = s->valuation();
      if (!val) continue;
      if (*val < -v)
        throw std::invalid_argument("evaluate_phi: f has a pole beyond v_P(D); f not in L(D)");
      word.push_back(s->coeff(-v));
      break;
    }
  }
  return word;
}

codes::Code build_code(const EvalCodeSpec& spec) {
  const std::vector<FunctionRep> basis = riemann_roch_basis(spec.curve, spec.d);
  linalg::Mat rows;
  rows.reserve(basis.size());
  for (const auto& f : basis) rows.push_back(evaluate_phi(spec, f));
  linalg::Mat gen = linalg::row_space_basis(spec.curve.field(), std::move(rows));
  return codes::Code::linear(spec.curve.field(), spec.g_points.size(), std::move(gen));
}

namespace {

Divisor g_divisor(const Curve& c, std::span<const size_t> g_points) {
  Divisor g(c);
  for (size_t idx : g_points) g.set(idx, 1);
  return g;
}

}  // namespace

XingCertificate xing_check(const EvalCodeSpec& spec) {
  const int n = static_cast<int>(spec.g_points.size());
  XingCertificate cert;
  cert.deg_d = spec.d.degree();
  if (cert.deg_d >= n)
    throw std::invalid_argument("xing_check: requires deg(D) < n");
  const Divisor a = spec.d.scaled(2) - g_divisor(spec.curve, spec.g_points);
  cert.deg_2d_minus_g = a.degree();
  cert.l_2d_minus_g = l_dim(spec.curve, a);
  cert.certified = cert.l_2d_minus_g == 0;
  return cert;
}

namespace {

// Scan candidates in order for the first index where l(A + mult*P) = 0.
// The per-point tests run concurrently; the minimum hit index wins, so the
// result matches a sequential scan.
std::optional<size_t> scan_for_point(const Curve& c, const Divisor& a,
                                     std::span<const size_t> candidates, int mult) {
  auto hit = detail::chunked_first_hit<size_t>(
      candidates.size(), 2,
      [&](uint64_t b, uint64_t e,
          std::atomic<uint64_t>& best) -> std::optional<std::pair<uint64_t, size_t>> {
        for (uint64_t i = b; i < e; ++i) {
          if (best.load(std::memory_order_relaxed) < i) return std::nullopt;
          const size_t pt = candidates[i];
          if (l_dim(c, a.plus(pt, mult)) == 0) return std::make_pair(i, pt);
        }
        return std::nullopt;
      });
  if (!hit) return std::nullopt;
  return hit->second;
}

}  // namespace

size_t find_point_simple(const Curve& c, const Divisor& a, std::span<const size_t> candidates) {
  if (a.degree() > c.genus() - 2)
    throw std::invalid_argument("find_point_simple: requires deg(A) <= g - 2");
  if (l_dim(c, a) != 0) throw std::invalid_argument("find_point_simple: requires l(A) = 0");
  auto r = scan_for_point(c, a, candidates, 1);
  if (!r)
    throw std::logic_error(
        "find_point_simple: all candidates failed; contradicts the counting bound");
  return *r;
}

size_t find_point_double(const Curve& c, const Divisor& a, std::span<const size_t> candidates) {
  if (a.degree() > c.genus() - 3)
    throw std::invalid_argument("find_point_double: requires deg(A) <= g - 3");
  if (l_dim(c, a) != 0) throw std::invalid_argument("find_point_double: requires l(A) = 0");
  auto r = scan_for_point(c, a, candidates, 2);
  if (!r)
    throw std::logic_error(
        "find_point_double: all candidates failed; contradicts the counting bound");
  return *r;
}

size_t count_bad_points(const Curve& c, const Divisor& a, BadPointMode mode) {
  const int g = c.genus();
  const int limit = mode == BadPointMode::Single ? g - 2 : g - 3;
  if (a.degree() > limit)
    throw std::invalid_argument("count_bad_points: divisor degree beyond the lemma's bound");
  if (l_dim(c, a) != 0) throw std::invalid_argument("count_bad_points: requires l(A) = 0");
  const int mult = mode == BadPointMode::Single ? 1 : 2;
  size_t bad = 0;
  for (size_t idx = 0; idx < c.point_count(); ++idx)
    if (l_dim(c, a.plus(idx, mult)) > 0) ++bad;
  return bad;
}

MutualPair construct_pair(const Curve& c, std::span<const size_t> g_points, int m) {
  const int n = static_cast<int>(g_points.size());
  const int g = c.genus();
  if (n <= g) throw std::invalid_argument("construct_pair: requires n > g");
  if (m < g || m >= n) throw std::invalid_argument("construct_pair: requires g <= m < n");

  const size_t p0 = g_points.front();
  const Divisor gdiv = g_divisor(c, g_points);
  Divisor d = Divisor::single(c, p0, m);
  Divisor dprime(c);
  if (n - 1 - m > 0) dprime.set(p0, n - 1 - m);

  std::vector<size_t> all(c.point_count());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  for (int i = 0; i < g; ++i) {
    const Divisor a = d + dprime - gdiv;
    const size_t pt = find_point_simple(c, a, all);
    dprime = dprime.plus(pt, 1);
  }

  if (l_dim(c, d + dprime - gdiv) != 0)
    throw std::logic_error("construct_pair: postcondition l(D + D' - G) = 0 failed");
  if (dprime.degree() != n + g - 1 - m)
    throw std::logic_error("construct_pair: wrong deg(D')");

  EvalCodeSpec sd = make_spec(c, {g_points.begin(), g_points.end()}, d);
  EvalCodeSpec sdp = make_spec(c, {g_points.begin(), g_points.end()}, dprime);
  return MutualPair{build_code(sd), build_code(sdp), std::move(d), std::move(dprime)};
}

Divisor main_divisor_search(const Curve& c, std::span<const size_t> g_points, size_t p0) {
  const int n = static_cast<int>(g_points.size());
  const int g = c.genus();
  if (static_cast<int>(c.point_count()) <= 4 * g)
    throw std::invalid_argument("main_divisor_search: requires |X(K)| > 4g");
  const Divisor gdiv = g_divisor(c, g_points);

  Divisor d(c);
  if ((n - 1) / 2 > 0) d.set(p0, (n - 1) / 2);
  const int steps = (n + g - 1) / 2 - (n - 1) / 2;

  std::vector<size_t> all(c.point_count());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  for (int i = 0; i < steps; ++i) {
    const Divisor a = d.scaled(2) - gdiv;
    const size_t pt = find_point_double(c, a, all);
    d = d.plus(pt, 1);
  }

  if (d.degree() != (n + g - 1) / 2) throw std::logic_error("main_divisor_search: wrong degree");
  const Divisor a = d.scaled(2) - gdiv;
  if (l_dim(c, a) != 0)
    throw std::logic_error("main_divisor_search: postcondition l(2D - G) = 0 failed");
  return d;
}

BuiltCode build_intersecting(const Curve& c, size_t n, size_t p0) {
  const int g = c.genus();
  if (static_cast<int>(c.point_count()) <= 4 * g)
    throw std::invalid_argument("build_intersecting: requires |X(K)| > 4g");
  if (n <= static_cast<size_t>(g) || n > c.point_count())
    throw std::invalid_argument("build_intersecting: requires g < n <= |X(K)|");

  std::vector<size_t> gpts(n);
  for (size_t i = 0; i < n; ++i) gpts[i] = i;
  Divisor d = main_divisor_search(c, gpts, p0);
  EvalCodeSpec spec = make_spec(c, std::move(gpts), std::move(d));
  XingCertificate cert = xing_check(spec);
  codes::Code code = build_code(spec);
  const int dim_lower = (static_cast<int>(n) + g - 1) / 2 + 1 - g;
  if (static_cast<int>(code.dim()) < dim_lower)
    throw std::logic_error("build_intersecting: dimension below the guaranteed bound");
  return BuiltCode{std::move(code), std::move(spec), cert};
}

}  // namespace sepsys::ag
