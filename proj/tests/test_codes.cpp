#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sepsys/codes.hpp"
#include "sepsys/nordrob.hpp"
#include "sepsys/rng.hpp"
#include "support.hpp"

using namespace sepsys;
using codes::CapExceeded;
using codes::Code;
using codes::Verdict;
using codes::Word;

namespace {

Code binary_code(std::vector<std::vector<uint32_t>> words) {
  const size_t n = words[0].size();
  return Code::listed(gf::Field(2, 1), n, std::move(words));
}

}  // namespace

TEST_CASE("hamming distance") {
  gf::Field f2(2, 1);
  Word a{f2, {0, 0, 0}}, b{f2, {1, 1, 1}}, c{f2, {0, 0, 0}};
  CHECK(hamming_distance(a, c) == 0);
  CHECK(hamming_distance(a, b) == 3);
  CHECK(hamming_distance(b, a) == 3);

  Word short_word{f2, {0, 0}};
  CHECK_THROWS_AS(hamming_distance(a, short_word), std::invalid_argument);
  Word other_field{gf::Field(2, 2), {0, 0, 0}};
  CHECK_THROWS_AS(hamming_distance(a, other_field), gf::FieldError);

  // metric axioms on an exhaustive small sample
  gf::Field f3(3, 1);
  std::vector<std::vector<uint32_t>> words;
  for (uint32_t x = 0; x < 3; ++x)
    for (uint32_t y = 0; y < 3; ++y) words.push_back({x, y});
  for (const auto& x : words)
    for (const auto& y : words) {
      const int dxy = hamming_distance({f3, x}, {f3, y});
      CHECK(dxy == hamming_distance({f3, y}, {f3, x}));
      CHECK((dxy == 0) == (x == y));
      for (const auto& z : words)
        CHECK(hamming_distance({f3, x}, {f3, z}) <= dxy + hamming_distance({f3, y}, {f3, z}));
    }
}

TEST_CASE("code construction and validation") {
  gf::Field f2(2, 1);
  CHECK_THROWS_AS(Code::listed(f2, 2, {{0, 1}, {0, 1}}), std::invalid_argument);  // dup
  CHECK_THROWS_AS(Code::listed(f2, 2, {{0, 1, 1}}), std::invalid_argument);       // ragged
  CHECK_THROWS_AS(Code::listed(f2, 2, {{0, 2}}), std::invalid_argument);          // range

  // dependent generator rows rejected
  gf::Field f4(2, 2);
  CHECK_THROWS_AS(Code::linear(f4, 3, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}), std::invalid_argument);

  Code lin = Code::linear(f4, 3, {{1, 0, 1}, {0, 1, 2}});
  CHECK(lin.dim() == 2);
  CHECK(lin.size() == 16);
  CHECK(lin.codeword_at(0) == std::vector<uint32_t>{0, 0, 0});
  // message digits are little-endian in the index
  CHECK(lin.codeword_at(1) == std::vector<uint32_t>{1, 0, 1});
  CHECK(lin.codeword_at(4) == std::vector<uint32_t>{0, 1, 2});

  // zero-dimensional linear code: just the zero word
  Code zero = Code::linear(f4, 3, {});
  CHECK(zero.dim() == 0);
  CHECK(zero.size() == 1);
}

TEST_CASE("check_sep21 examples") {
  // collinear triple: 100 lies metrically between 000 and 110
  Code bad = binary_code({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  auto r = check_sep21(bad);
  REQUIRE(r.verdict == Verdict::Fail);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->y == std::vector<uint32_t>{1, 0, 0});
  // independent re-verification of the witness
  CHECK(codes::is_middle_word(r.witness->x, r.witness->y, r.witness->z));
  CHECK(hamming_distance({bad.field(), r.witness->x}, {bad.field(), r.witness->z}) ==
        hamming_distance({bad.field(), r.witness->x}, {bad.field(), r.witness->y}) +
            hamming_distance({bad.field(), r.witness->y}, {bad.field(), r.witness->z}));

  // any code with <= 2 codewords passes vacuously
  CHECK(check_sep21(binary_code({{0, 0}, {1, 1}})).verdict == Verdict::Pass);
  CHECK(check_sep21(binary_code({{1, 0}})).verdict == Verdict::Pass);

  // one-shortened Nordstrom-Robinson passes by full enumeration
  Code sh = nordrob::one_shorten(nordrob::build_nr16(), 0);
  auto nr_result = check_sep21(sh);
  CHECK(nr_result.verdict == Verdict::Pass);
  CHECK(nr_result.tested == 128ull * 127 * 126 / 2);
}

TEST_CASE("check_sep21 agrees with a brute-force oracle on random codes") {
  rng::SplitMix64 prng(99);
  gf::Field f2(2, 1);
  int fails = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 2 + prng.below(5);
    const size_t m = 3 + prng.below(6);
    std::set<std::vector<uint32_t>> wordset;
    for (size_t tries = 0; wordset.size() < m && tries < 8 * m; ++tries) {
      std::vector<uint32_t> w(n);
      for (auto& s : w) s = prng.below32(2);
      wordset.insert(std::move(w));
    }
    std::vector<std::vector<uint32_t>> words(wordset.begin(), wordset.end());
    Code c = Code::listed(f2, n, words);
    auto r = check_sep21(c);
    support::BruteTriple bt;
    const bool brute_ok = support::brute_force_sep21(words, &bt);
    CHECK((r.verdict == Verdict::Pass) == brute_ok);
    if (!brute_ok) {
      ++fails;
      REQUIRE(r.witness.has_value());
      CHECK(codes::is_middle_word(r.witness->x, r.witness->y, r.witness->z));
    }
  }
  CHECK(fails > 20);  // the sample must exercise both outcomes
}

TEST_CASE("check_sep21_sampled") {
  Code bad = binary_code({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  auto r = check_sep21_sampled(bad, 10000, 7);
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(codes::is_middle_word(r.witness->x, r.witness->y, r.witness->z));

  // deterministic per seed
  auto r2 = check_sep21_sampled(bad, 10000, 7);
  CHECK(r.tested == r2.tested);
  CHECK(r.witness->x == r2.witness->x);
  CHECK(r.witness->y == r2.witness->y);

  Code sh = nordrob::one_shorten(nordrob::build_nr16(), 0);
  CHECK(check_sep21_sampled(sh, 1000000, 11).verdict == Verdict::PassSampled);

  CHECK(check_sep21_sampled(binary_code({{0, 0}, {1, 1}}), 100, 3).verdict ==
        Verdict::PassSampled);
}

TEST_CASE("check_intersecting examples") {
  gf::Field f2(2, 1);
  // disjoint supports
  Code split = Code::linear(f2, 2, {{1, 0}, {0, 1}});
  auto r = check_intersecting(split);
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(codes::supports_disjoint(r.witness->a, r.witness->b));

  // repetition code has full supports
  Code rep = Code::linear(f2, 5, {{1, 1, 1, 1, 1}});
  CHECK(check_intersecting(rep).verdict == Verdict::Pass);

  // [4,2] Reed-Solomon over GF(4) has distance 3 > 4/2
  gf::Field f4(2, 2);
  Code rs = Code::linear(f4, 4, support::rs_vandermonde(f4, 1));
  CHECK(check_intersecting(rs).verdict == Verdict::Pass);
  CHECK(support::brute_force_intersecting(rs));

  // [4,3] has distance 2 <= n/2 and indeed fails
  Code rs3 = Code::linear(f4, 4, support::rs_vandermonde(f4, 2));
  auto r3 = check_intersecting(rs3);
  REQUIRE(r3.verdict == Verdict::Fail);
  CHECK(codes::supports_disjoint(r3.witness->a, r3.witness->b));
  CHECK(!support::brute_force_intersecting(rs3));

  CHECK_THROWS_AS(check_intersecting(binary_code({{1, 0}})), std::invalid_argument);
}

TEST_CASE("check_mutually_intersecting") {
  gf::Field f2(2, 1);
  Code rep = Code::linear(f2, 4, {{1, 1, 1, 1}});
  CHECK(check_mutually_intersecting(rep, rep).verdict == Verdict::Pass);

  Code left = Code::linear(f2, 4, {{1, 1, 0, 0}});
  Code right = Code::linear(f2, 4, {{0, 0, 1, 1}});
  auto r = check_mutually_intersecting(left, right);
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(codes::supports_disjoint(r.witness->a, r.witness->b));

  // agrees with the self variant on linear test codes
  gf::Field f4(2, 2);
  rng::SplitMix64 prng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t n = 3 + prng.below(4);
    linalg::Mat gen;
    for (size_t r2 = 0; r2 < 2; ++r2) {
      std::vector<uint32_t> row(n);
      for (auto& s : row) s = prng.below32(4);
      gen.push_back(std::move(row));
    }
    if (linalg::rank(f4, gen) != gen.size()) continue;
    Code c = Code::linear(f4, n, gen);
    CHECK(check_intersecting(c).verdict == check_mutually_intersecting(c, c).verdict);
  }

  Code len5 = Code::linear(f2, 5, {{1, 1, 1, 1, 1}});
  CHECK_THROWS_AS(check_mutually_intersecting(rep, len5), std::invalid_argument);
}

TEST_CASE("check_set_system examples and equivalence with check_sep21") {
  Code bad = binary_code({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  auto r = check_set_system(bad);
  REQUIRE(r.verdict == Verdict::Fail);
  // the witness C (middle set) sits between A and B: A∩B ⊆ C ⊆ A∪B
  for (size_t i = 0; i < 3; ++i) {
    const bool in_a = r.witness->x[i], in_b = r.witness->z[i], in_c = r.witness->y[i];
    CHECK((!(in_a && in_b) || in_c));
    CHECK((!in_c || in_a || in_b));
  }

  CHECK(check_set_system(binary_code({{0, 1}, {1, 0}})).verdict == Verdict::Pass);
  Code sh = nordrob::one_shorten(nordrob::build_nr16(), 0);
  CHECK(check_set_system(sh).verdict == Verdict::Pass);

  // needs a binary alphabet
  Code quaternary = Code::listed(gf::Field(2, 2), 2, {{0, 3}});
  CHECK_THROWS_AS(check_set_system(quaternary), std::invalid_argument);

  // equivalence with the metric formulation on seeded random binary codes
  rng::SplitMix64 prng(17);
  gf::Field f2(2, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 1 + prng.below(6);
    const size_t m = 1 + prng.below(8);
    std::set<std::vector<uint32_t>> wordset;
    for (size_t tries = 0; wordset.size() < m && tries < 8 * m; ++tries) {
      std::vector<uint32_t> w(n);
      for (auto& s : w) s = prng.below32(2);
      wordset.insert(std::move(w));
    }
    Code c = Code::listed(f2, n, {wordset.begin(), wordset.end()});
    CHECK(check_sep21(c).verdict == check_set_system(c).verdict);
  }
}

TEST_CASE("distance_set") {
  Code nr16 = nordrob::build_nr16();
  CHECK(distance_set(nr16) == std::set<int>{6, 8, 10, 16});
  CHECK(distance_set(nordrob::one_shorten(nr16, 0)) == std::set<int>{6, 8, 10});
  CHECK(distance_set(binary_code({{0, 0, 0}, {1, 1, 1}})) == std::set<int>{3});

  // the quoted shortened-NR distances back hamming_distance directly
  Code sh = nordrob::one_shorten(nr16, 0);
  Word w0{sh.field(), sh.words()[3]}, w1{sh.field(), sh.words()[77]};
  const int d = hamming_distance(w0, w1);
  CHECK((d == 6 || d == 8 || d == 10));
}

TEST_CASE("caps") {
  Code sh = nordrob::one_shorten(nordrob::build_nr16(), 0);
  codes::CheckLimits tiny;
  tiny.triple_cap = 1000;
  tiny.pair_cap = 10;
  CHECK_THROWS_AS(check_sep21(sh, tiny), CapExceeded);
  CHECK_THROWS_AS(check_set_system(sh, tiny), CapExceeded);
  CHECK_THROWS_AS(distance_set(sh, tiny), CapExceeded);
  gf::Field f4(2, 2);
  Code rs = Code::linear(f4, 4, support::rs_vandermonde(f4, 1));
  CHECK_THROWS_AS(check_intersecting(rs, tiny), CapExceeded);
}

TEST_CASE("rates") {
  Code nr16 = nordrob::build_nr16();
  Code sub121 = nordrob::subcode_first(nordrob::one_shorten(nr16, 0), 121);
  CHECK(rate_bits(sub121) == doctest::Approx(std::log2(121.0) / 15).epsilon(1e-12));

  gf::Field f9(3, 2);
  linalg::Mat gen;
  for (uint32_t i = 0; i < 13; ++i) {
    std::vector<uint32_t> row(28, 0);
    row[i] = 1;
    row[27] = (i + 1) % 9;
    gen.push_back(std::move(row));
  }
  Code c28 = Code::linear(f9, 28, gen);
  CHECK(rate_q(c28) == 13.0 / 28.0);
  CHECK(rate_q_ratio(c28) == std::pair<uint64_t, uint64_t>{13, 28});
  CHECK(rate_bits(c28) == doctest::Approx(13 * std::log2(9.0) / 28).epsilon(1e-12));

  Code one = binary_code({{0, 1, 0}});
  CHECK(rate_bits(one) == 0.0);
  CHECK(rate_q(one) == 0.0);
}
