#include "sepsys/io.hpp"

#include <sstream>

#include "sepsys/version.hpp"

namespace sepsys::io {

namespace {

gf::Field field_for_q(uint64_t q) {
  // factor q = p^k with p prime; Field() validates the rest
  if (q < 2) throw ParseError("code header: q must be >= 2");
  uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;  // q prime
  uint32_t k = 0;
  uint64_t t = q;
  while (t % p == 0) {
    t /= p;
    ++k;
  }
  if (t != 1) throw ParseError("code header: q is not a prime power");
  try {
    return gf::Field(static_cast<uint32_t>(p), k);
  } catch (const gf::FieldError& e) {
    throw ParseError(std::string("code header: ") + e.what());
  }
}

}  // namespace

codes::Code read_code(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("code file: missing header line");
  std::istringstream hs(header);
  uint64_t q = 0, count = 0;
  size_t n = 0;
  std::string kind;
  if (!(hs >> q >> n >> count >> kind)) throw ParseError("code file: bad header line");
  if (kind != "list" && kind != "linear")
    throw ParseError("code file: kind must be 'list' or 'linear'");
  gf::Field f = field_for_q(q);

  std::vector<std::vector<uint32_t>> rows;
  rows.reserve(count);
  for (uint64_t r = 0; r < count; ++r) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("code file: fewer rows than the header count");
    std::istringstream ls(line);
    std::vector<uint32_t> row;
    row.reserve(n);
    uint64_t v;
    while (ls >> v) {
      if (v >= q) throw ParseError("code file: symbol out of range");
      row.push_back(static_cast<uint32_t>(v));
    }
    if (row.size() != n) throw ParseError("code file: row width differs from header n");
    rows.push_back(std::move(row));
  }
  try {
    if (kind == "list") return codes::Code::listed(std::move(f), n, std::move(rows));
    return codes::Code::linear(std::move(f), n, std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("code file: ") + e.what());
  }
}

void write_code(std::ostream& out, const codes::Code& c) {
  const bool listed = c.kind() == codes::CodeKind::Listed;
  const auto& rows = listed ? c.words() : c.generator();
  out << c.field().q() << ' ' << c.length() << ' ' << rows.size() << ' '
      << (listed ? "list" : "linear") << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << '\n';
  }
}

Json curve_to_json(const curves::Curve& c) {
  Json j;
  j["kind"] = c.kind() == curves::CurveKind::ProjectiveLine ? "p1" : "hermitian";
  j["p"] = c.field().p();
  j["k"] = c.field().k();
  if (c.kind() == curves::CurveKind::Hermitian) j["q0"] = c.q0();
  return j;
}

curves::Curve curve_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    gf::Field f(j.at("p").get<uint32_t>(), j.at("k").get<uint32_t>());
    if (kind == "p1") return curves::Curve::projective_line(std::move(f));
    if (kind == "hermitian")
      return curves::Curve::hermitian(j.at("q0").get<uint32_t>(), std::move(f));
    throw ParseError("curve: kind must be 'p1' or 'hermitian'");
  } catch (const Json::exception& e) {
    throw ParseError(std::string("curve json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("curve json: ") + e.what());
  }
}

Json divisor_to_json(const curves::Divisor& d) {
  Json j;
  j["curve"] = curve_to_json(d.curve());
  Json support = Json::array();
  for (const auto& [idx, m] : d.support()) {
    Json entry;
    const curves::Point& p = d.curve().points()[idx];
    if (p.infinity)
      entry["point"] = "inf";
    else
      entry["point"] = Json::array({p.x, p.y});
    entry["mult"] = m;
    support.push_back(std::move(entry));
  }
  j["support"] = std::move(support);
  return j;
}

curves::Divisor divisor_from_json(const Json& j) {
  try {
    curves::Curve c = curve_from_json(j.at("curve"));
    curves::Divisor d(c);
    for (const auto& entry : j.at("support")) {
      const int m = entry.at("mult").get<int>();
      size_t idx;
      if (entry.at("point").is_string() && entry.at("point").get<std::string>() == "inf") {
        idx = c.infinity_index();
      } else {
        const auto coords = entry.at("point");
        if (!coords.is_array() || coords.size() != 2)
          throw ParseError("divisor: point must be \"inf\" or [x, y]");
        idx = c.index_of(
            curves::Point::affine(coords[0].get<uint32_t>(), coords[1].get<uint32_t>()));
      }
      d.set(idx, d.mult(idx) + m);
    }
    return d;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("divisor json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("divisor json: ") + e.what());
  }
}

curves::Divisor read_divisor(std::istream& in) {
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("divisor json: ") + e.what());
  }
  return divisor_from_json(j);
}

void write_divisor(std::ostream& out, const curves::Divisor& d) {
  out << divisor_to_json(d).dump(2) << '\n';
}

Json witness_to_json(const codes::TripleWitness& w) {
  Json j;
  j["x"] = w.x;
  j["y"] = w.y;
  j["z"] = w.z;
  j["x_index"] = w.x_index;
  j["y_index"] = w.y_index;
  j["z_index"] = w.z_index;
  return j;
}

Json witness_to_json(const codes::PairWitness& w) {
  Json j;
  j["a"] = w.a;
  j["b"] = w.b;
  return j;
}

Json ledger_to_json(const concat::RateLedger& lg) {
  Json j;
  j["q"] = lg.q;
  j["a_q"] = lg.a_q;
  j["prob_lower"] = lg.prob_lower;
  j["nr_concat_lower"] = lg.nr_concat_lower;
  j["nr_concat_display"] = lg.nr_concat_display;
  j["r_tvz"] = lg.r_tvz;
  j["r_xing"] = lg.r_xing;
  j["r_new"] = lg.r_new;
  j["a_q_above_4"] = lg.a_q_above_4;
  if (lg.rho_tvz) {
    j["rho_tvz"] = *lg.rho_tvz;
    j["rho_tvz_display"] = *lg.rho_tvz_display;
    j["rho_xing"] = *lg.rho_xing;
    j["rho_new"] = *lg.rho_new;
  }
  if (!lg.note.empty()) j["note"] = lg.note;
  return j;
}

const char* verdict_name(codes::Verdict v) {
  switch (v) {
    case codes::Verdict::Pass:
      return "pass";
    case codes::Verdict::PassSampled:
      return "pass-sampled";
    case codes::Verdict::Fail:
      return "fail";
  }
  return "unknown";
}

ReportBuilder::ReportBuilder(uint64_t seed, bool stable_timing)
    : seed_(seed), stable_timing_(stable_timing) {}

void ReportBuilder::add_check(const std::string& name, const std::string& mode,
                              const std::string& result, std::optional<Json> witness,
                              double elapsed_ms) {
  Json c;
  c["name"] = name;
  c["mode"] = mode;
  c["result"] = result;
  if (witness) c["witness"] = std::move(*witness);
  c["elapsed_ms"] = stable_timing_ ? 0.0 : elapsed_ms;
  checks_.push_back(std::move(c));
  if (result == "fail") all_passed_ = false;
}

void ReportBuilder::add_sep(const std::string& name, const std::string& mode,
                            const codes::SepResult& r, double elapsed_ms) {
  std::optional<Json> w;
  if (r.witness) w = witness_to_json(*r.witness);
  add_check(name, mode, verdict_name(r.verdict), std::move(w), elapsed_ms);
}

void ReportBuilder::add_intersect(const std::string& name, const std::string& mode,
                                  const codes::IntersectResult& r, double elapsed_ms) {
  std::optional<Json> w;
  if (r.witness) w = witness_to_json(*r.witness);
  add_check(name, mode, verdict_name(r.verdict), std::move(w), elapsed_ms);
}

void ReportBuilder::set_ledger(Json ledger) { ledger_ = std::move(ledger); }

Json ReportBuilder::build() const {
  Json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = seed_;
  j["checks"] = checks_;
  if (ledger_) j["ledger"] = *ledger_;
  return j;
}

}  // namespace sepsys::io
