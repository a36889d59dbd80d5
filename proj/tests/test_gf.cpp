#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sepsys/gf.hpp"
#include "sepsys/rng.hpp"

using sepsys::gf::Field;
using sepsys::gf::FieldElement;
using sepsys::gf::FieldError;

TEST_CASE("field construction and modulus table") {
  Field f2(2, 1);
  CHECK(f2.q() == 2);
  CHECK(f2.modulus() == std::vector<uint32_t>{0, 1});

  Field f4(2, 2);
  CHECK(f4.q() == 4);
  CHECK(f4.modulus() == std::vector<uint32_t>{1, 1, 1});

  Field f121(11, 2);
  CHECK(f121.q() == 121);
  CHECK(f121.modulus() == std::vector<uint32_t>{2, 7, 1});
  // irreducibility of t^2+7t+2 over GF(11): no root among the 11 residues
  Field f11(11, 1);
  for (uint32_t a = 0; a < 11; ++a) {
    uint32_t value = f11.add(f11.add(f11.mul(a, a), f11.mul(7, a)), 2);
    CHECK(value != 0);
  }

  CHECK_THROWS_AS(Field(4, 1), FieldError);   // non-prime p
  CHECK_THROWS_AS(Field(6, 2), FieldError);   // non-prime p
  CHECK_THROWS_AS(Field(2, 0), FieldError);   // k = 0
  CHECK_THROWS_AS(Field(2, 17), FieldError);  // q > 2^16
  CHECK_THROWS_AS(Field(17, 2), FieldError);  // not in modulus table
}

TEST_CASE("basic arithmetic examples") {
  Field f2(2, 1);
  CHECK(f2.mul(1, 1) == 1);

  // GF(4) = GF(2)[t]/(t^2+t+1): t*t = t+1, i.e. enc 2*2 = 3
  Field f4(2, 2);
  CHECK(f4.mul(2, 2) == 3);

  Field f121(11, 2);
  for (uint32_t x = 1; x < 121; ++x) CHECK(f121.mul(x, f121.inv(x)) == 1);

  CHECK_THROWS_AS(f4.inv(0), FieldError);
  CHECK_THROWS_AS((void)f4.div(1, 0), FieldError);
}

TEST_CASE("element ops and field mismatch") {
  Field f4(2, 2);
  Field f9(3, 2);
  FieldElement a = f4.element(2), b = f4.element(3);
  CHECK((a * b).enc() == f4.mul(2, 3));
  CHECK((a + (-a)).is_zero());
  CHECK_THROWS_AS((void)(a + f9.element(1)), FieldError);

  // a second handle to the same field is interchangeable
  Field f4b(2, 2);
  CHECK(f4 == f4b);
  CHECK((a + f4b.element(1)).enc() == f4.add(2, 1));
}

static void check_axioms_exhaustive(const Field& f) {
  const uint32_t q = f.q();
  for (uint32_t a = 0; a < q; ++a) {
    CHECK(f.add(a, f.neg(a)) == 0);
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    for (uint32_t b = 0; b < q; ++b) {
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (uint32_t c = 0; c < q; ++c) {
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

static void check_axioms_sampled(const Field& f, int samples, uint64_t seed) {
  sepsys::rng::SplitMix64 rng(seed);
  const uint32_t q = f.q();
  for (int i = 0; i < samples; ++i) {
    uint32_t a = rng.below32(q), b = rng.below32(q), c = rng.below32(q);
    CHECK(f.add(a, b) == f.add(b, a));
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.add(a, f.neg(a)) == 0);
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("field axioms") {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    Field f(p, k);
    if (f.q() <= 16) check_axioms_exhaustive(f);
  }
  check_axioms_sampled(Field(5, 2), 10000, 1);
  check_axioms_sampled(Field(11, 2), 10000, 2);
  check_axioms_sampled(Field(13, 2), 10000, 3);
  check_axioms_sampled(Field(65521, 1), 10000, 4);  // largest supported prime field
}

TEST_CASE("frobenius is additive") {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{2, 2}, {3, 2}, {2, 4}, {11, 2}}) {
    Field f(p, k);
    sepsys::rng::SplitMix64 rng(7 * p + k);
    for (int i = 0; i < 10000; ++i) {
      uint32_t a = rng.below32(f.q()), b = rng.below32(f.q());
      CHECK(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
    }
  }
}

TEST_CASE("encode/decode round-trip and enumeration order") {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{2, 1}, {2, 2}, {3, 2}, {11, 2}}) {
    Field f(p, k);
    auto elems = f.elements();
    REQUIRE(elems.size() == f.q());
    CHECK(elems[0].enc() == 0);
    CHECK(elems[1].enc() == 1);
    for (uint32_t e = 0; e < f.q(); ++e) {
      CHECK(elems[e].enc() == e);
      auto c = f.decode(e);
      REQUIRE(c.size() == f.k());
      CHECK(f.encode(c) == e);
    }
  }
}

TEST_CASE("enumeration cardinalities") {
  CHECK(Field(2, 1).elements().size() == 2);
  CHECK(Field(2, 2).elements().size() == 4);
  CHECK(Field(11, 2).elements().size() == 121);
}
