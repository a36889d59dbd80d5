#pragma once

#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "sepsys/codes.hpp"
#include "sepsys/concat.hpp"
#include "sepsys/curves.hpp"

namespace sepsys::io {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text code format: header line "q n count kind" with kind in {list, linear},
// then one codeword (list) or generator row (linear) per line as n
// space-separated integer encodings.
codes::Code read_code(std::istream& in);
void write_code(std::ostream& out, const codes::Code& c);

// Curve JSON: {"kind": "p1" | "hermitian", "p": .., "k": .., "q0": ..?}
Json curve_to_json(const curves::Curve& c);
curves::Curve curve_from_json(const Json& j);

// Divisor JSON: {"curve": {...}, "support": [{"point": "inf" | [x, y],
// "mult": m}, ...]}
Json divisor_to_json(const curves::Divisor& d);
curves::Divisor divisor_from_json(const Json& j);
curves::Divisor read_divisor(std::istream& in);
void write_divisor(std::ostream& out, const curves::Divisor& d);

Json witness_to_json(const codes::TripleWitness& w);
Json witness_to_json(const codes::PairWitness& w);

Json ledger_to_json(const concat::RateLedger& lg);

// Check report: {"tool_version", "seed", "checks": [{"name", "mode",
// "result", "witness"?, "elapsed_ms"}], "ledger"?}. Key order is fixed;
// with stable_timing all elapsed fields are written as 0 so identical
// inputs and seeds produce byte-identical documents.
class ReportBuilder {
 public:
  explicit ReportBuilder(uint64_t seed, bool stable_timing = false);

  void add_check(const std::string& name, const std::string& mode, const std::string& result,
                 std::optional<Json> witness, double elapsed_ms);
  void add_sep(const std::string& name, const std::string& mode, const codes::SepResult& r,
               double elapsed_ms);
  void add_intersect(const std::string& name, const std::string& mode,
                     const codes::IntersectResult& r, double elapsed_ms);
  void set_ledger(Json ledger);

  bool all_passed() const { return all_passed_; }
  Json build() const;

 private:
  Json checks_ = Json::array();
  std::optional<Json> ledger_;
  uint64_t seed_;
  bool stable_timing_;
  bool all_passed_ = true;
};

const char* verdict_name(codes::Verdict v);

}  // namespace sepsys::io
