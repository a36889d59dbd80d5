#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "sepsys/gf.hpp"
#include "sepsys/linalg.hpp"

namespace sepsys::codes {

// An exhaustive checker refused to run because the enumeration would exceed
// the configured cap; callers switch to the sampled variant.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckLimits {
  uint64_t triple_cap = uint64_t{1} << 24;
  uint64_t pair_cap = uint64_t{1} << 22;
};

struct Word {
  gf::Field field;
  std::vector<uint32_t> symbols;
};

// Number of differing coordinates; throws on length or field mismatch.
int hamming_distance(const Word& a, const Word& b);

enum class CodeKind { Listed, Linear };

// A block code over a finite field: either an explicit codeword list or a
// linear code given by a full-rank generator matrix (k may be zero, in which
// case the code is just the zero word).
class Code {
 public:
  static Code listed(gf::Field f, size_t n, std::vector<std::vector<uint32_t>> words);
  static Code linear(gf::Field f, size_t n, linalg::Mat generator);

  CodeKind kind() const { return kind_; }
  const gf::Field& field() const { return field_; }
  size_t length() const { return n_; }

  const std::vector<std::vector<uint32_t>>& words() const;  // Listed only
  const linalg::Mat& generator() const;                     // Linear only
  size_t dim() const;                                       // Linear only

  bool size_fits_u64() const;
  uint64_t size() const;  // number of codewords; throws CapExceeded if > 2^63
  double size_log2() const;

  // Codeword by enumeration index. Listed: list order. Linear: messages in
  // base-q counting order, digit 0 fastest.
  std::vector<uint32_t> codeword_at(uint64_t index) const;
  std::vector<uint32_t> codeword_of(std::span<const uint32_t> message) const;  // Linear

  Word word_at(uint64_t index) const { return Word{field_, codeword_at(index)}; }

 private:
  Code(CodeKind kind, gf::Field f, size_t n) : kind_(kind), field_(std::move(f)), n_(n) {}

  CodeKind kind_;
  gf::Field field_;
  size_t n_;
  std::vector<std::vector<uint32_t>> words_;
  linalg::Mat gen_;
};

enum class Verdict { Pass, PassSampled, Fail };

struct TripleWitness {
  // y is the middle word: every coordinate of y agrees with x or with z.
  std::vector<uint32_t> x, y, z;
  uint64_t x_index = 0, y_index = 0, z_index = 0;
};

struct PairWitness {
  std::vector<uint32_t> a, b;
};

struct SepResult {
  Verdict verdict;
  std::optional<TripleWitness> witness;
  uint64_t tested = 0;
};

struct IntersectResult {
  Verdict verdict;
  std::optional<PairWitness> witness;
  uint64_t tested = 0;
};

// (2,1)-separation: every pairwise-distinct triple satisfies the strict
// triangle inequality, i.e. the middle word differs from both neighbours in
// some coordinate. Exhaustive over all (middle, unordered pair) triples in
// lexicographic index order; the reported witness is the first failure in
// that order regardless of thread count.
SepResult check_sep21(const Code& c, const CheckLimits& lim = {});
SepResult check_sep21_sampled(const Code& c, uint64_t trials, uint64_t seed);

// Set-system formulation over the supports of a binary code: fails on three
// distinct words with A|supp ∩ B|supp ⊆ C|supp ⊆ A|supp ∪ B|supp.
SepResult check_set_system(const Code& c, const CheckLimits& lim = {});

// Intersecting property of a linear code: all pairs of nonzero codewords
// share a support coordinate. Exhaustive mode works on projective
// representatives (first nonzero message digit = 1).
IntersectResult check_intersecting(const Code& c, const CheckLimits& lim = {});
IntersectResult check_intersecting_sampled(const Code& c, uint64_t trials, uint64_t seed);

IntersectResult check_mutually_intersecting(const Code& a, const Code& b,
                                            const CheckLimits& lim = {});
IntersectResult check_mutually_intersecting_sampled(const Code& a, const Code& b,
                                                    uint64_t trials, uint64_t seed);

std::set<int> distance_set(const Code& c, const CheckLimits& lim = {});

double rate_bits(const Code& c);
double rate_q(const Code& c);
// Exact k/n for linear codes.
std::pair<uint64_t, uint64_t> rate_q_ratio(const Code& c);

// Independent witness re-verification (direct definition, no shared state
// with the checkers' enumeration).
bool is_middle_word(std::span<const uint32_t> x, std::span<const uint32_t> y,
                    std::span<const uint32_t> z);
bool supports_disjoint(std::span<const uint32_t> a, std::span<const uint32_t> b);

}  // namespace sepsys::codes
