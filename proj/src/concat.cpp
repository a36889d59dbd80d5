#include "sepsys/concat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sepsys::concat {

namespace {

// Inner codewords for the first q field elements: lexicographically first q
// words, indexed by symbol encoding.
std::vector<std::vector<uint32_t>> symbol_map(const ConcatSpec& spec) {
  const uint32_t q = spec.outer.field().q();
  if (spec.inner.kind() != codes::CodeKind::Listed || spec.inner.field().q() != 2)
    throw std::invalid_argument("concatenate: inner code must be a listed binary code");
  if (spec.inner.words().size() < q)
    throw std::invalid_argument("concatenate: inner code smaller than the outer alphabet");
  auto sorted = spec.inner.words();
  std::sort(sorted.begin(), sorted.end());
  sorted.resize(q);
  return sorted;
}

}  // namespace

codes::Code concatenate(const ConcatSpec& spec, uint64_t outer_cap) {
  const auto map = symbol_map(spec);
  if (!spec.outer.size_fits_u64() || spec.outer.size() > outer_cap)
    throw codes::CapExceeded("concatenate: outer code too large to enumerate");
  const uint64_t m = spec.outer.size();
  const size_t n_in = spec.inner.length();
  const size_t n_out = spec.outer.length();

  std::vector<std::vector<uint32_t>> words;
  words.reserve(m);
  for (uint64_t i = 0; i < m; ++i) {
    const auto outer_word = spec.outer.codeword_at(i);
    std::vector<uint32_t> w;
    w.reserve(n_in * n_out);
    for (uint32_t s : outer_word) w.insert(w.end(), map[s].begin(), map[s].end());
    words.push_back(std::move(w));
  }
  return codes::Code::listed(gf::Field(2, 1), n_in * n_out, std::move(words));
}

double concat_rate(const ConcatSpec& spec) {
  const double q = spec.outer.field().q();
  const double inner_bits = std::log2(q) / double(spec.inner.length());
  const double outer_rate = spec.outer.size_log2() / std::log2(q) / double(spec.outer.length());
  return inner_bits * outer_rate;
}

RateLedger rate_ledger(uint32_t q) {
  const auto root = static_cast<uint32_t>(std::lround(std::sqrt(double(q))));
  if (root * root != q)
    throw std::invalid_argument("rate_ledger: q must be a square prime power");

  RateLedger lg;
  lg.q = q;
  lg.a_q = double(root) - 1.0;

  lg.prob_lower = 1.0 - 0.5 * std::log2(3.0);
  lg.nr_concat_lower = (std::log2(121.0) / 15.0) * (9.0 / 20.0);
  lg.nr_concat_display = 0.207565;

  const double a = lg.a_q;
  lg.r_tvz = 0.5 - 1.0 / a;
  const double logq2 = std::log2(2.0) / std::log2(double(q));
  lg.r_xing = 0.5 - 1.0 / a + (1.0 - 2.0 * logq2) / (2.0 * a);
  lg.r_new = 0.5 - 1.0 / (2.0 * a);

  lg.a_q_above_4 = a > 4.0;
  if (!lg.a_q_above_4)
    lg.note = q == 25 ? "A(25) = 4: the new bound needs the special q = 25 curve sequence"
                      : "A(q) <= 4: the new bound does not apply at this alphabet";

  if (q == 121) {
    const double inner = std::log2(121.0) / 15.0;
    lg.rho_tvz = inner * lg.r_tvz;
    lg.rho_xing = inner * lg.r_xing;
    lg.rho_new = inner * lg.r_new;
    lg.rho_tvz_display = 0.184503;
  }
  return lg;
}

std::string ledger_table(const RateLedger& lg) {
  std::ostringstream os;
  os.precision(9);
  os << std::fixed;
  os << "rate ledger, q = " << lg.q << " (A(q) = " << lg.a_q << ")\n";
  os << "  probabilistic exponent bound      " << lg.prob_lower << "\n";
  os << "  NR-concatenation exponent bound   " << lg.nr_concat_lower << "  (> "
     << lg.nr_concat_display << ")\n";
  os << "  R_q, TVZ route                    " << lg.r_tvz << "\n";
  os << "  R_q, Xing criterion route         " << lg.r_xing << "\n";
  os << "  R_q, divisor-search route         " << lg.r_new;
  if (!lg.a_q_above_4) os << "  [" << lg.note << "]";
  os << "\n";
  if (lg.rho_tvz) {
    os << "  exponent via TVZ outer code       " << *lg.rho_tvz << "  (published "
       << *lg.rho_tvz_display << ")\n";
    os << "  exponent via Xing outer code      " << *lg.rho_xing << "\n";
    os << "  exponent via divisor-search code  " << *lg.rho_new << "\n";
  }
  return os.str();
}

}  // namespace sepsys::concat
