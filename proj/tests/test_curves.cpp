#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepsys/curves.hpp"
#include "sepsys/rng.hpp"
#include "support.hpp"

using namespace sepsys;
using namespace sepsys::curves;
using poly::Laurent;

namespace {

Divisor random_divisor(const Curve& c, int target_deg, rng::SplitMix64& prng) {
  Divisor d(c);
  const size_t npts = c.point_count();
  const size_t support = 1 + prng.below(std::min<uint64_t>(4, npts));
  std::vector<size_t> pts;
  while (pts.size() < support) {
    size_t idx = prng.below(npts);
    if (std::find(pts.begin(), pts.end(), idx) == pts.end()) pts.push_back(idx);
  }
  int acc = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const int m = static_cast<int>(prng.below(7)) - 3;
    d.set(pts[i], m);
    acc += m;
  }
  d.set(pts.back(), target_deg - acc);
  return d;
}

// x^e1 y^e2 * prod (x-a)^(pos) / prod (x-a')^(neg): a function whose divisor
// is supported on rational points, so the sum of valuations over all
// rational points is exhaustive.
FunctionRep random_rational_function(const Curve& c, rng::SplitMix64& prng) {
  const gf::Field& f = c.field();
  FunctionRep out = FunctionRep::constant(c, 1 + prng.below32(f.q() - 1));
  const bool hermitian = c.kind() == CurveKind::Hermitian;
  for (int t = 0; t < 3; ++t) {
    const uint32_t a = prng.below32(f.q());
    const int e = static_cast<int>(prng.below(3)) - 1;
    if (e == 0) continue;
    if (e > 0) {
      FunctionRep lin(c, bipoly_add(c, bipoly_monomial(c, 1, 0),
                                    bipoly_monomial(c, 0, 0, f.neg(a))),
                      {});
      out = out * lin;
    } else {
      out = out * FunctionRep(c, bipoly_monomial(c, 0, 0), {{a, 1}});
    }
  }
  if (hermitian && prng.below(2) == 0)
    out = out * FunctionRep::monomial(c, 0, 1);  // a y factor
  return out;
}

}  // namespace

TEST_CASE("curve construction and point enumeration") {
  Curve l2 = Curve::projective_line(gf::Field(2, 1));
  CHECK(l2.point_count() == 3);
  CHECK(l2.genus() == 0);

  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));
  CHECK(h4.point_count() == 9);
  CHECK(h4.genus() == 1);

  Curve h9 = Curve::hermitian(3, gf::Field(3, 2));
  CHECK(h9.point_count() == 28);
  CHECK(h9.genus() == 3);

  // canonical order: affine lexicographic by encodings, infinity last
  CHECK(h4.points().back().infinity);
  for (size_t i = 0; i + 2 < h4.point_count(); ++i) {
    const Point &a = h4.points()[i], &b = h4.points()[i + 1];
    CHECK((a.x < b.x || (a.x == b.x && a.y < b.y)));
  }
  // every affine point satisfies the curve equation
  const gf::Field& f = h9.field();
  for (const Point& p : h9.points()) {
    if (p.infinity) continue;
    CHECK(f.add(f.pow(p.y, 3), p.y) == f.pow(p.x, 4));
  }
  // index_of round-trip
  for (size_t i = 0; i < h9.point_count(); ++i) CHECK(h9.index_of(h9.points()[i]) == i);
  CHECK_THROWS_AS(h4.index_of(Point::affine(1, 0)), std::invalid_argument);

  CHECK_THROWS_AS(Curve::hermitian(2, gf::Field(2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(Curve::hermitian(3, gf::Field(2, 2)), std::invalid_argument);
}

TEST_CASE("local expansions") {
  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));
  const gf::Field& f = h4.field();

  // x - a is the canonical parameter at every affine point: series is t
  for (const Point& p : h4.points()) {
    if (p.infinity) continue;
    FunctionRep xa(h4, bipoly_add(h4, bipoly_monomial(h4, 1, 0),
                                  bipoly_monomial(h4, 0, 0, f.neg(p.x))),
                   {});
    Laurent s = local_expansion(xa, p, 6);
    CHECK(s.valuation() == 1);
    CHECK(s.coeff(1) == 1);
    CHECK(s.coeff(2) == 0);
    CHECK(s.coeff(3) == 0);
  }

  // constants expand to themselves
  Laurent one = local_expansion(FunctionRep::constant(h4, 1), h4.points()[4], 5);
  CHECK(one.valuation() == 0);
  CHECK(one.coeff(0) == 1);
  CHECK(one.coeff(3) == 0);

  // the expansions respect the curve equation: y(t)^2 + y(t) = x(t)^3
  for (const Point& p : {h4.points()[0], h4.points()[5], h4.points().back()}) {
    Laurent sx = local_expansion(FunctionRep::monomial(h4, 1, 0), p, 9);
    Laurent sy = local_expansion(FunctionRep::monomial(h4, 0, 1), p, 9);
    Laurent resid = sy.pow(2) + sy + sx.pow(3).scaled(f.neg(1));
    CHECK(!resid.valuation().has_value());  // zero to precision
  }

  // insufficient precision to see the valuation is a distinct error
  FunctionRep x5 = FunctionRep::monomial(h4, 5, 0);  // vanishes to order 5 at x=0 fibers
  CHECK_THROWS_AS(local_expansion(x5, h4.points()[0], 3), poly::PrecisionExhausted);
  CHECK(local_expansion(x5, h4.points()[0], 7).valuation() == 5);
}

TEST_CASE("valuations") {
  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));
  const gf::Field& f4 = h4.field();
  const Point inf = Point::at_infinity();

  // pole orders at infinity: v(x) = -q0, v(y) = -(q0+1)
  CHECK(valuation(FunctionRep::monomial(h4, 1, 0), inf) == -2);
  CHECK(valuation(FunctionRep::monomial(h4, 0, 1), inf) == -3);
  for (uint32_t c = 1; c < 4; ++c)
    for (const Point& p : h4.points()) CHECK(valuation(FunctionRep::constant(h4, c), p) == 0);

  // v(x - a) = 1 at every point above a
  for (const Point& p : h4.points()) {
    if (p.infinity) continue;
    FunctionRep xa(h4, bipoly_add(h4, bipoly_monomial(h4, 1, 0),
                                  bipoly_monomial(h4, 0, 0, f4.neg(p.x))),
                   {});
    CHECK(valuation(xa, p) == 1);
  }

  CHECK_THROWS_AS(valuation(FunctionRep::constant(h4, 0), inf), std::invalid_argument);

  // principal divisors have degree zero (exhaustive for functions whose
  // zeros and poles are all rational)
  Curve l4 = Curve::projective_line(gf::Field(2, 2));
  Curve h9 = Curve::hermitian(3, gf::Field(3, 2));
  for (const Curve& c : {l4, h4, h9}) {
    rng::SplitMix64 prng(31 + c.point_count());
    for (int i = 0; i < 50; ++i) {
      FunctionRep fr = random_rational_function(c, prng);
      REQUIRE(!fr.is_zero());
      int total = 0;
      for (const Point& p : c.points()) total += valuation(fr, p);
      CHECK(total == 0);
    }
  }
}

TEST_CASE("riemann_roch_basis examples") {
  Curve l4 = Curve::projective_line(gf::Field(2, 2));
  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));

  // L(0) = constants
  for (const Curve& c : {l4, h4}) {
    auto basis = riemann_roch_basis(c, Divisor(c));
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].equals(FunctionRep::constant(c, 1)));
  }

  // line, D = m*inf: polynomials of degree <= m
  for (int m = 0; m <= 3; ++m) {
    auto basis = riemann_roch_basis(l4, Divisor::single(l4, l4.infinity_index(), m));
    REQUIRE(basis.size() == static_cast<size_t>(m + 1));
    for (const auto& b : basis) {
      CHECK(b.den().empty());
      CHECK(b.num().rows.size() == 1);
      CHECK(poly::degree(b.num().rows[0]) <= m);
    }
  }

  // Weierstrass gap at P_inf on the genus-1 Hermitian curve: l(1*Pinf) = 1
  CHECK(l_dim(h4, Divisor::single(h4, h4.infinity_index(), 1)) == 1);
  CHECK(l_dim(h4, Divisor::single(h4, h4.infinity_index(), 2)) == 2);
  CHECK(l_dim(h4, Divisor::single(h4, h4.infinity_index(), 3)) == 3);
}

TEST_CASE("l_dim examples") {
  Curve h9 = Curve::hermitian(3, gf::Field(3, 2));
  // negative degree
  CHECK(l_dim(h9, Divisor::single(h9, 0, -1)) == 0);
  // equality regime at deg = 2g - 1 = 5
  CHECK(l_dim(h9, Divisor::single(h9, h9.infinity_index(), 5)) == 3);
  // canonical divisor
  CHECK(l_dim(h9, canonical_divisor(h9)) == 3);
}

TEST_CASE("canonical divisor") {
  Curve l4 = Curve::projective_line(gf::Field(2, 2));
  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));
  Curve h9 = Curve::hermitian(3, gf::Field(3, 2));
  for (const Curve& c : {l4, h4, h9}) {
    Divisor k = canonical_divisor(c);
    CHECK(k.degree() == 2 * c.genus() - 2);
    CHECK(l_dim(c, k) == c.genus());
  }
  CHECK(canonical_divisor(h4).support().empty());  // genus 1: the zero divisor
}

TEST_CASE("Riemann-Roch identity on random divisors") {
  Curve l4 = Curve::projective_line(gf::Field(2, 2));
  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));
  Curve h9 = Curve::hermitian(3, gf::Field(3, 2));
  for (const Curve& c : {l4, h4, h9}) {
    const int g = c.genus();
    const Divisor omega = canonical_divisor(c);
    rng::SplitMix64 prng(1000 + c.point_count());
    for (int i = 0; i < 40; ++i) {
      const int deg = static_cast<int>(prng.below(static_cast<uint64_t>(3 * g + 9))) - 3;
      Divisor d = random_divisor(c, deg, prng);
      CHECK(l_dim(c, d) - l_dim(c, omega - d) == deg + 1 - g);
    }
  }
}

TEST_CASE("basis elements respect the divisor bounds") {
  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));
  Divisor d =
      Divisor::single(h4, 0, 2).plus(3, 1).plus(h4.infinity_index(), 1).plus(5, -1);
  auto basis = riemann_roch_basis(h4, d);
  REQUIRE(static_cast<int>(basis.size()) == l_dim(h4, d));
  REQUIRE(!basis.empty());
  rng::SplitMix64 prng(8);
  for (const auto& f : basis) {
    for (const auto& [idx, m] : d.support())
      CHECK(valuation(f, h4.points()[idx]) >= -m);
    for (int t = 0; t < 20; ++t) {
      const size_t idx = prng.below(h4.point_count());
      if (d.mult(idx) == 0) CHECK(valuation(f, h4.points()[idx]) >= 0);
    }
  }
}

TEST_CASE("dimension invariant under a shifted clearing denominator") {
  // multiplying L(D) by (x-a) gives L(D + div(x-a)): same dimension, but the
  // computation clears through a different denominator
  Curve h9 = Curve::hermitian(3, gf::Field(3, 2));
  rng::SplitMix64 prng(44);
  for (int i = 0; i < 25; ++i) {
    const int deg = static_cast<int>(prng.below(12)) - 2;
    Divisor d = random_divisor(h9, deg, prng);
    const uint32_t a = prng.below32(h9.field().q());
    Divisor shifted = d;
    for (const Point& p : h9.points()) {
      if (!p.infinity && p.x == a) shifted = shifted.plus(h9.index_of(p), 1);
    }
    shifted = shifted.plus(h9.infinity_index(), -h9.weight_x());
    CHECK(l_dim(h9, d) == l_dim(h9, shifted));
  }
}

TEST_CASE("monotonicity under adding a point") {
  Curve h4 = Curve::hermitian(2, gf::Field(2, 2));
  rng::SplitMix64 prng(13);
  for (int i = 0; i < 40; ++i) {
    const int deg = static_cast<int>(prng.below(9)) - 2;
    Divisor d = random_divisor(h4, deg, prng);
    const size_t idx = prng.below(h4.point_count());
    const int l0 = l_dim(h4, d);
    const int l1 = l_dim(h4, d.plus(idx, 1));
    CHECK(l0 <= l1);
    CHECK(l1 <= l0 + 1);
  }
}

TEST_CASE("function representation arithmetic") {
  Curve h9 = Curve::hermitian(3, gf::Field(3, 2));
  const gf::Field& f = h9.field();

  // (x^2 - a^2) / (x - a) equals (x + a) away from the pole; as function
  // field elements they are identical
  const uint32_t a = 5;
  const uint32_t a2 = f.mul(a, a);
  FunctionRep lhs(h9,
                  bipoly_add(h9, bipoly_monomial(h9, 2, 0),
                             bipoly_monomial(h9, 0, 0, f.neg(a2))),
                  {{a, 1}});
  FunctionRep rhs(h9, bipoly_add(h9, bipoly_monomial(h9, 1, 0), bipoly_monomial(h9, 0, 0, a)),
                  {});
  CHECK(lhs.equals(rhs));
  CHECK(!lhs.equals(FunctionRep::monomial(h9, 1, 0)));

  // y^3 reduces modulo the curve equation to x^4 - y
  FunctionRep y3 = FunctionRep::monomial(h9, 0, 1) * FunctionRep::monomial(h9, 0, 1) *
                   FunctionRep::monomial(h9, 0, 1);
  FunctionRep reduced(h9,
                      bipoly_add(h9, bipoly_monomial(h9, 4, 0),
                                 bipoly_monomial(h9, 0, 1, f.neg(1))),
                      {});
  CHECK(y3.equals(reduced));

  // addition with distinct denominators:
  // 1/(x-1) + 1/(x-2) = ((x-2) + (x-1)) / ((x-1)(x-2))
  FunctionRep inv_a(h9, bipoly_monomial(h9, 0, 0), {{1, 1}});
  FunctionRep inv_b(h9, bipoly_monomial(h9, 0, 0), {{2, 1}});
  FunctionRep sum = inv_a + inv_b;
  BiPoly xm1 = bipoly_add(h9, bipoly_monomial(h9, 1, 0), bipoly_monomial(h9, 0, 0, f.neg(1)));
  BiPoly xm2 = bipoly_add(h9, bipoly_monomial(h9, 1, 0), bipoly_monomial(h9, 0, 0, f.neg(2)));
  FunctionRep expect(h9, bipoly_add(h9, xm1, xm2), {{1, 1}, {2, 1}});
  CHECK(sum.equals(expect));
}
