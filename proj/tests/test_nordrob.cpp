#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "sepsys/codes.hpp"
#include "sepsys/nordrob.hpp"
#include "support.hpp"

using namespace sepsys;
using codes::Code;
using codes::Verdict;

TEST_CASE("build_nr16") {
  Code nr = nordrob::build_nr16();
  CHECK(nr.length() == 16);
  REQUIRE(nr.words().size() == 256);
  CHECK(distance_set(nr) == std::set<int>{6, 8, 10, 16});

  // contains the zero word, and the list is in lexicographic order
  CHECK(nr.words().front() == std::vector<uint32_t>(16, 0));
  CHECK(std::is_sorted(nr.words().begin(), nr.words().end()));

  // nonzero weights in {6, 8, 10, 16} (distances to the zero word)
  for (const auto& w : nr.words()) {
    const int wt = support::weight(w);
    CHECK((wt == 0 || wt == 6 || wt == 8 || wt == 10 || wt == 16));
  }

  // deterministic across rebuilds
  CHECK(nordrob::build_nr16().words() == nr.words());
}

TEST_CASE("one_shorten at every position") {
  Code nr = nordrob::build_nr16();
  for (size_t pos = 0; pos < 16; ++pos) {
    Code sh = nordrob::one_shorten(nr, pos);
    CHECK(sh.length() == 15);
    CHECK(sh.words().size() == 128);
    CHECK(distance_set(sh) == std::set<int>{6, 8, 10});
  }
  CHECK_THROWS_AS(nordrob::one_shorten(nr, 16), std::invalid_argument);

  // shortening a one-word zero code keeps one word and drops a coordinate
  Code zero = Code::listed(gf::Field(2, 1), 4, {{0, 0, 0, 0}});
  Code shz = nordrob::one_shorten(zero, 2);
  CHECK(shz.length() == 3);
  CHECK(shz.words().size() == 1);

  // empty result is an error
  Code ones = Code::listed(gf::Field(2, 1), 2, {{1, 1}});
  CHECK_THROWS_AS(nordrob::one_shorten(ones, 0), std::invalid_argument);
}

TEST_CASE("shortened code is (2,1)-separating by full enumeration") {
  Code sh = nordrob::one_shorten(nordrob::build_nr16(), 0);
  CHECK(check_sep21(sh).verdict == Verdict::Pass);
}

TEST_CASE("subcode_first") {
  Code sh = nordrob::one_shorten(nordrob::build_nr16(), 0);

  Code sub = nordrob::subcode_first(sh, 121);
  CHECK(sub.words().size() == 121);
  // lexicographically first 121: every kept word precedes every dropped one
  auto sorted = sh.words();
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < 121; ++i) CHECK(sub.words()[i] == sorted[i]);
  // subcodes of separating codes stay separating
  CHECK(check_sep21(sub).verdict == Verdict::Pass);

  Code small = nordrob::subcode_first(sh, 4);
  CHECK(small.words().size() == 4);
  CHECK(check_sep21(small).verdict == Verdict::Pass);

  // identity at m = |C|
  Code all = nordrob::subcode_first(sh, 128);
  CHECK(all.words() == sorted);

  CHECK_THROWS_AS(nordrob::subcode_first(sh, 129), std::invalid_argument);
  CHECK_THROWS_AS(nordrob::subcode_first(sh, 0), std::invalid_argument);
}
