#pragma once

#include <optional>
#include <string>

#include "sepsys/codes.hpp"

namespace sepsys::concat {

// Concatenation data: a q-ary outer code and a binary listed inner code with
// at least q words. The symbol map is fixed: GF(q) elements in integer
// encoding order onto the lexicographically first q inner codewords.
struct ConcatSpec {
  codes::Code outer;
  codes::Code inner;
};

// Substitute inner codewords for outer symbols and juxtapose. The result has
// |outer| words of length n_in * n_out; concatenating two (2,1)-separating
// codes yields a (2,1)-separating code.
codes::Code concatenate(const ConcatSpec& spec, uint64_t outer_cap = uint64_t{1} << 20);

// (log2 q / n_in) * (log_q |outer| / n_out); equals the bit rate of the
// concatenated code exactly.
double concat_rate(const ConcatSpec& spec);

// Lower bounds on the asymptotic exponent of (2,1)-separating codes and on
// the maximal rate R_q of linear intersecting codes, recomputed from their
// defining formulas at report time (no cached literals).
struct RateLedger {
  uint32_t q = 0;
  double a_q = 0;  // sqrt(q) - 1 for square q

  // alphabet-independent entries
  double prob_lower = 0;        // 1 - (1/2) log2 3, the probabilistic bound
  double nr_concat_lower = 0;   // (log2 121 / 15) * (9/20) = (3/50) log2 11
  double nr_concat_display = 0; // the published rounding of the same value

  // per-q entries (square q)
  double r_tvz = 0;   // 1/2 - 1/A(q)
  double r_xing = 0;  // 1/2 - 1/A(q) + (1 - 2 log_q 2) / (2 A(q))
  double r_new = 0;   // 1/2 - 1/(2 A(q))

  // exponent bounds through the length-15, 121-word inner code (q = 121)
  std::optional<double> rho_tvz;
  std::optional<double> rho_xing;
  std::optional<double> rho_new;
  std::optional<double> rho_tvz_display;  // published value 0.184503

  bool a_q_above_4 = false;  // the new bound needs A(q) > 4, or the special
                             // q = 25 argument
  std::string note;
};

// Throws for non-square q (the A(q)-based entries need a square).
RateLedger rate_ledger(uint32_t q);

std::string ledger_table(const RateLedger& ledger);

}  // namespace sepsys::concat
