#include "sepsys/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "sepsys/agcodes.hpp"
#include "sepsys/codes.hpp"
#include "sepsys/concat.hpp"
#include "sepsys/curves.hpp"
#include "sepsys/io.hpp"
#include "sepsys/nordrob.hpp"
#include "sepsys/repro.hpp"
#include "sepsys/version.hpp"

namespace sepsys::cli {
namespace {

using io::Json;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// "-" or empty selects the session stream.
struct InputFile {
  InputFile(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream = &fallback;
      return;
    }
    file = std::make_unique<std::ifstream>(path);
    if (!*file) throw io::ParseError("cannot open input file: " + path);
    stream = file.get();
  }
  std::istream& get() { return *stream; }
  std::unique_ptr<std::ifstream> file;
  std::istream* stream = nullptr;
};

struct OutputFile {
  OutputFile(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream = &fallback;
      return;
    }
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw io::ParseError("cannot open output file: " + path);
    stream = file.get();
  }
  std::ostream& get() { return *stream; }
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = nullptr;
};

struct GlobalOpts {
  uint64_t seed = 1;
  bool stable = false;
  codes::CheckLimits limits;
};

uint64_t env_u64(const char* name, uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::strtoull(v, nullptr, 10);
}

struct CurveOpts {
  std::string kind = "hermitian";
  uint32_t p = 2, k = 2, q0 = 0;
};

void add_curve_flags(CLI::App* cmd, CurveOpts& c) {
  cmd->add_option("--curve", c.kind, "curve kind: p1 | hermitian")
      ->check(CLI::IsMember({"p1", "hermitian"}));
  cmd->add_option("--p", c.p, "field characteristic");
  cmd->add_option("--k", c.k, "field extension degree");
  cmd->add_option("--q0", c.q0, "Hermitian parameter (default: sqrt(q))");
}

curves::Curve make_curve(const CurveOpts& o) {
  gf::Field f(o.p, o.k);
  if (o.kind == "p1") return curves::Curve::projective_line(std::move(f));
  uint32_t q0 = o.q0;
  if (q0 == 0) {
    q0 = static_cast<uint32_t>(std::lround(std::sqrt(double(f.q()))));
    if (q0 * q0 != f.q())
      throw std::invalid_argument("hermitian: field size is not a square; pass --q0");
  }
  return curves::Curve::hermitian(q0, std::move(f));
}

Json spec_certificate(const ag::EvalCodeSpec& spec, const ag::XingCertificate& cert,
                      size_t dim, Json checks) {
  Json j;
  j["curve"] = io::curve_to_json(spec.curve);
  j["divisor"] = io::divisor_to_json(spec.d)["support"];
  j["n"] = spec.g_points.size();
  j["l2DG"] = cert.l_2d_minus_g;
  j["degD"] = cert.deg_d;
  j["deg2DG"] = cert.deg_2d_minus_g;
  j["certified"] = cert.certified;
  j["dim"] = dim;
  j["checks"] = std::move(checks);
  return j;
}

// Intersecting verification: exhaustive within the pair cap, otherwise
// seeded sampling; the report names the mode that ran.
Json verify_intersecting(const codes::Code& code, const GlobalOpts& g, uint64_t trials,
                         bool* failed) {
  Json checks = Json::array();
  Timer t;
  try {
    codes::IntersectResult r = check_intersecting(code, g.limits);
    Json c;
    c["name"] = "intersecting";
    c["mode"] = "full";
    c["result"] = io::verdict_name(r.verdict);
    if (r.witness) c["witness"] = io::witness_to_json(*r.witness);
    c["elapsed_ms"] = g.stable ? 0.0 : t.ms();
    if (r.verdict == codes::Verdict::Fail) *failed = true;
    checks.push_back(std::move(c));
  } catch (const codes::CapExceeded&) {
    codes::IntersectResult r = check_intersecting_sampled(code, trials, g.seed);
    Json c;
    c["name"] = "intersecting";
    c["mode"] = "sampled";
    c["trials"] = trials;
    c["result"] = io::verdict_name(r.verdict);
    if (r.witness) c["witness"] = io::witness_to_json(*r.witness);
    c["elapsed_ms"] = g.stable ? 0.0 : t.ms();
    if (r.verdict == codes::Verdict::Fail) *failed = true;
    checks.push_back(std::move(c));
  }
  return checks;
}

// codes-module report object: {property, mode, result, witness?, elapsed}
template <class Result>
Json property_report(const std::string& property, const std::string& mode, const Result& r,
                     double elapsed_ms, bool stable) {
  Json j;
  j["property"] = property;
  j["mode"] = mode;
  j["result"] = io::verdict_name(r.verdict);
  if (r.witness) j["witness"] = io::witness_to_json(*r.witness);
  j["elapsed"] = stable ? 0.0 : elapsed_ms;
  return j;
}

int run_checked(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const codes::CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"construction and exact verification of (2,1)-separating and intersecting codes"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  GlobalOpts g;
  g.limits.triple_cap = env_u64("TRIPLE_CAP", g.limits.triple_cap);
  g.limits.pair_cap = env_u64("PAIR_CAP", g.limits.pair_cap);
  app.add_option("--seed", g.seed, "seed for every sampled checker");
  app.add_flag("--stable", g.stable, "zero out timing fields for byte-identical reports");
  app.add_option("--triple-cap", g.limits.triple_cap, "exhaustive triple enumeration cap");
  app.add_option("--pair-cap", g.limits.pair_cap, "exhaustive pair enumeration cap");

  // ---- field ----
  auto* field = app.add_subcommand("field", "finite field utilities");
  field->require_subcommand(1);
  uint32_t fp = 2, fk = 1;
  auto* field_list = field->add_subcommand("list", "list elements as encodings and coefficients");
  field_list->add_option("--p", fp)->required();
  field_list->add_option("--k", fk)->required();
  auto* field_check = field->add_subcommand("check", "validate the modulus table entry");
  field_check->add_option("--p", fp)->required();
  field_check->add_option("--k", fk)->required();

  // ---- nr ----
  auto* nr = app.add_subcommand("nr", "Nordstrom-Robinson constructions");
  nr->require_subcommand(1);
  std::string nr_in = "-", nr_out = "-";
  size_t nr_pos = 0, nr_m = 121;
  auto* nr_build = nr->add_subcommand("build", "emit the (16,256) Nordstrom-Robinson code");
  nr_build->add_option("--out", nr_out);
  auto* nr_shorten = nr->add_subcommand("shorten", "one-shorten a listed code");
  nr_shorten->add_option("--in", nr_in);
  nr_shorten->add_option("--pos", nr_pos, "coordinate to shorten at (default 0)");
  nr_shorten->add_option("--out", nr_out);
  auto* nr_subcode = nr->add_subcommand("subcode", "lexicographic-first m-subcode");
  nr_subcode->add_option("--in", nr_in);
  nr_subcode->add_option("--m", nr_m)->required();
  nr_subcode->add_option("--out", nr_out);

  // ---- curve ----
  auto* curve = app.add_subcommand("curve", "curves, points and Riemann-Roch spaces");
  curve->require_subcommand(1);
  CurveOpts curve_opts;
  auto* curve_points = curve->add_subcommand("points", "list rational points in canonical order");
  add_curve_flags(curve_points, curve_opts);
  std::string div_in = "-";
  auto* curve_rrdim = curve->add_subcommand("rr-dim", "dimension of L(D) for a divisor file");
  curve_rrdim->add_option("--divisor", div_in, "divisor JSON (default stdin)");
  auto* curve_rrbasis = curve->add_subcommand("rr-basis", "basis of L(D) for a divisor file");
  curve_rrbasis->add_option("--divisor", div_in, "divisor JSON (default stdin)");

  // ---- agcode ----
  auto* agc = app.add_subcommand("agcode", "evaluation codes on curves");
  agc->require_subcommand(1);
  CurveOpts ag_curve;
  size_t ag_n = 0;
  bool ag_all = false, ag_p0_inf = false;
  uint64_t ag_trials = 100000;
  std::string ag_out = "-", ag_cert, ag_div = "-";
  int ag_m = 1;
  std::string ag_out_c, ag_out_cp;
  auto* ag_build = agc->add_subcommand("build", "intersecting code via the divisor search");
  add_curve_flags(ag_build, ag_curve);
  ag_build->add_option("--n", ag_n, "code length (number of points of G)");
  ag_build->add_flag("--all-points", ag_all, "take G = all rational points");
  ag_build->add_flag("--p0-inf", ag_p0_inf,
                     "concentrate the start divisor at infinity (fast clearing for large runs)");
  ag_build->add_option("--trials", ag_trials, "sampled trials when above the pair cap");
  ag_build->add_option("--out", ag_out, "code file output");
  ag_build->add_option("--cert", ag_cert, "certificate JSON output file");
  auto* ag_certify = agc->add_subcommand("certify", "recompute the certificate for a divisor");
  ag_certify->add_option("--divisor", ag_div, "divisor JSON (default stdin)");
  ag_certify->add_option("--n", ag_n, "length; default all rational points");
  auto* ag_pair = agc->add_subcommand("pair", "mutually intersecting pair");
  add_curve_flags(ag_pair, ag_curve);
  ag_pair->add_option("--m", ag_m, "degree of D (g <= m < n)")->required();
  ag_pair->add_option("--n", ag_n, "length; default all rational points");
  ag_pair->add_option("--out-c", ag_out_c, "code file for C");
  ag_pair->add_option("--out-cprime", ag_out_cp, "code file for C'");

  // ---- concat ----
  auto* cat = app.add_subcommand("concat", "concatenate outer and inner codes");
  std::string cat_outer, cat_inner, cat_out, cat_verify = "full";
  uint64_t cat_trials = 1000000;
  cat->add_option("--outer", cat_outer, "outer code file")->required();
  cat->add_option("--inner", cat_inner, "inner (binary, listed) code file")->required();
  cat->add_option("--out", cat_out, "write the concatenated code here");
  cat->add_option("--verify", cat_verify, "separation verification: full | sampled | none")
      ->check(CLI::IsMember({"full", "sampled", "none"}));
  cat->add_option("--trials", cat_trials, "trials for sampled verification");

  // ---- check ----
  auto* chk = app.add_subcommand("check", "property verifiers over code files");
  chk->require_subcommand(1);
  std::string chk_in = "-", chk_in2, chk_mode = "full";
  uint64_t chk_trials = 1000000;
  auto add_check_flags = [&](CLI::App* c, bool two_inputs) {
    c->add_option("--in", chk_in, "code file (default stdin)");
    if (two_inputs) c->add_option("--in2", chk_in2, "second code file")->required();
    c->add_option("--mode", chk_mode, "full | sampled")->check(CLI::IsMember({"full", "sampled"}));
    c->add_option("--trials", chk_trials, "trials in sampled mode");
  };
  add_check_flags(chk->add_subcommand("sep2", "(2,1)-separation"), false);
  add_check_flags(chk->add_subcommand("setsystem", "set-system formulation (binary)"), false);
  add_check_flags(chk->add_subcommand("intersecting", "intersecting property (linear)"), false);
  add_check_flags(chk->add_subcommand("mutual", "mutually intersecting pair (linear)"), true);

  // ---- rates ----
  auto* rates = app.add_subcommand("rates", "rate ledger recomputed from the formulas");
  uint32_t rates_q = 121;
  bool rates_json = false;
  rates->add_option("--q", rates_q, "alphabet size (square prime power)");
  rates->add_flag("--json", rates_json, "JSON output instead of the table");

  // ---- repro ----
  auto* rep = app.add_subcommand("repro", "run the full verification pipeline");
  std::string rep_out;
  rep->add_option("--out", rep_out, "write the summary report JSON here");

  std::vector<const char*> argv;
  argv.push_back("sepsys");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  // ---- dispatch ----
  if (field_list->parsed() || field_check->parsed()) {
    return run_checked(
        [&] {
          gf::Field f(fp, fk);
          if (field_check->parsed()) {
            out << "GF(" << f.q() << ") ok: modulus";
            for (uint32_t c : f.modulus()) out << " " << c;
            out << "\n";
            return 0;
          }
          for (const auto& e : f.elements()) {
            out << e.enc() << ":";
            for (uint32_t c : e.coeffs()) out << " " << c;
            out << "\n";
          }
          return 0;
        },
        err);
  }

  if (nr_build->parsed() || nr_shorten->parsed() || nr_subcode->parsed()) {
    return run_checked(
        [&] {
          OutputFile o(nr_out, out);
          if (nr_build->parsed()) {
            io::write_code(o.get(), nordrob::build_nr16());
            return 0;
          }
          InputFile i(nr_in, in);
          codes::Code c = io::read_code(i.get());
          if (nr_shorten->parsed())
            io::write_code(o.get(), nordrob::one_shorten(c, nr_pos));
          else
            io::write_code(o.get(), nordrob::subcode_first(c, nr_m));
          return 0;
        },
        err);
  }

  if (curve_points->parsed()) {
    return run_checked(
        [&] {
          curves::Curve c = make_curve(curve_opts);
          out << "genus " << c.genus() << ", " << c.point_count() << " rational points\n";
          for (size_t i = 0; i < c.point_count(); ++i) {
            const curves::Point& p = c.points()[i];
            if (p.infinity)
              out << i << ": inf\n";
            else
              out << i << ": (" << p.x << ", " << p.y << ")\n";
          }
          return 0;
        },
        err);
  }

  if (curve_rrdim->parsed() || curve_rrbasis->parsed()) {
    return run_checked(
        [&] {
          InputFile i(div_in, in);
          curves::Divisor d = io::read_divisor(i.get());
          if (curve_rrdim->parsed()) {
            Json j;
            j["deg"] = d.degree();
            j["l"] = l_dim(d.curve(), d);
            out << j.dump(2) << "\n";
            return 0;
          }
          const auto basis = riemann_roch_basis(d.curve(), d);
          out << "l = " << basis.size() << "\n";
          for (const auto& f : basis) {
            out << "num rows:";
            for (const auto& row : f.num().rows) {
              out << " [";
              for (size_t t = 0; t < row.size(); ++t) out << (t ? " " : "") << row[t];
              out << "]";
            }
            out << "  den:";
            if (f.den().empty()) out << " 1";
            for (const auto& [a, e] : f.den()) out << " (x-" << a << ")^" << e;
            out << "\n";
          }
          return 0;
        },
        err);
  }

  if (ag_build->parsed()) {
    return run_checked(
        [&] {
          curves::Curve c = make_curve(ag_curve);
          size_t n = ag_all || ag_n == 0 ? c.point_count() : ag_n;
          const size_t p0 = ag_p0_inf ? c.infinity_index() : 0;
          ag::BuiltCode built = ag::build_intersecting(c, n, p0);
          bool failed = false;
          Json checks = verify_intersecting(built.code, g, ag_trials, &failed);
          {
            OutputFile o(ag_out, out);
            io::write_code(o.get(), built.code);
          }
          Json cert = spec_certificate(built.spec, built.cert, built.code.dim(), checks);
          if (!ag_cert.empty()) {
            OutputFile co(ag_cert, out);
            co.get() << cert.dump(2) << "\n";
          }
          return failed || !built.cert.certified ? 1 : 0;
        },
        err);
  }

  if (ag_certify->parsed()) {
    return run_checked(
        [&] {
          InputFile i(ag_div, in);
          curves::Divisor d = io::read_divisor(i.get());
          const curves::Curve& c = d.curve();
          const size_t n = ag_n == 0 ? c.point_count() : ag_n;
          std::vector<size_t> gpts(n);
          for (size_t t = 0; t < n; ++t) gpts[t] = t;
          ag::EvalCodeSpec spec = ag::make_spec(c, std::move(gpts), std::move(d));
          ag::XingCertificate cert = ag::xing_check(spec);
          const int dim = l_dim(c, spec.d) -
                          l_dim(c, spec.d - [&] {
                            curves::Divisor gd(c);
                            for (size_t t = 0; t < n; ++t) gd.set(t, 1);
                            return gd;
                          }());
          Json j = spec_certificate(spec, cert, static_cast<size_t>(dim), Json::array());
          out << j.dump(2) << "\n";
          return cert.certified ? 0 : 1;
        },
        err);
  }

  if (ag_pair->parsed()) {
    return run_checked(
        [&] {
          curves::Curve c = make_curve(ag_curve);
          const size_t n = ag_n == 0 ? c.point_count() : ag_n;
          std::vector<size_t> gpts(n);
          for (size_t t = 0; t < n; ++t) gpts[t] = t;
          ag::MutualPair pair = ag::construct_pair(c, gpts, ag_m);
          if (!ag_out_c.empty()) {
            OutputFile o(ag_out_c, out);
            io::write_code(o.get(), pair.c);
          }
          if (!ag_out_cp.empty()) {
            OutputFile o(ag_out_cp, out);
            io::write_code(o.get(), pair.c_prime);
          }
          bool failed = false;
          Timer t;
          Json j;
          j["curve"] = io::curve_to_json(c);
          j["n"] = n;
          j["m"] = ag_m;
          j["degD"] = pair.d.degree();
          j["degDprime"] = pair.d_prime.degree();
          j["dimC"] = pair.c.dim();
          j["dimCprime"] = pair.c_prime.dim();
          try {
            codes::IntersectResult r = check_mutually_intersecting(pair.c, pair.c_prime, g.limits);
            j["mutual"] = property_report("mutually-intersecting", "full", r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          } catch (const codes::CapExceeded&) {
            codes::IntersectResult r =
                check_mutually_intersecting_sampled(pair.c, pair.c_prime, ag_trials, g.seed);
            j["mutual"] = property_report("mutually-intersecting", "sampled", r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          }
          out << j.dump(2) << "\n";
          return failed ? 1 : 0;
        },
        err);
  }

  if (cat->parsed()) {
    return run_checked(
        [&] {
          InputFile fo(cat_outer, in), fi(cat_inner, in);
          codes::Code outer = io::read_code(fo.get());
          codes::Code inner = io::read_code(fi.get());
          concat::ConcatSpec spec{std::move(outer), std::move(inner)};
          codes::Code result = concat::concatenate(spec);
          if (!cat_out.empty()) {
            OutputFile o(cat_out, out);
            io::write_code(o.get(), result);
          }
          Json j;
          j["length"] = result.length();
          j["count"] = result.words().size();
          j["rate_bits"] = rate_bits(result);
          j["concat_rate"] = concat_rate(spec);
          bool failed = false;
          Timer t;
          if (cat_verify == "full") {
            codes::SepResult r = check_sep21(result, g.limits);
            j["separation"] = property_report("sep21", "full", r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          } else if (cat_verify == "sampled") {
            codes::SepResult r = check_sep21_sampled(result, cat_trials, g.seed);
            j["separation"] = property_report("sep21", "sampled", r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          }
          out << j.dump(2) << "\n";
          return failed ? 1 : 0;
        },
        err);
  }

  if (chk->parsed()) {
    return run_checked(
        [&] {
          CLI::App* sub = chk->get_subcommands().front();
          const std::string name = sub->get_name();
          InputFile i(chk_in, in);
          codes::Code c = io::read_code(i.get());
          const bool sampled = chk_mode == "sampled";
          Timer t;
          Json report;
          bool failed = false;
          if (name == "sep2") {
            codes::SepResult r = sampled ? check_sep21_sampled(c, chk_trials, g.seed)
                                         : check_sep21(c, g.limits);
            report = property_report("sep21", chk_mode, r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          } else if (name == "setsystem") {
            codes::SepResult r = check_set_system(c, g.limits);
            report = property_report("set-system", "full", r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          } else if (name == "intersecting") {
            codes::IntersectResult r = sampled ? check_intersecting_sampled(c, chk_trials, g.seed)
                                               : check_intersecting(c, g.limits);
            report = property_report("intersecting", chk_mode, r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          } else {
            InputFile i2(chk_in2, in);
            codes::Code c2 = io::read_code(i2.get());
            codes::IntersectResult r =
                sampled ? check_mutually_intersecting_sampled(c, c2, chk_trials, g.seed)
                        : check_mutually_intersecting(c, c2, g.limits);
            report = property_report("mutually-intersecting", chk_mode, r, t.ms(), g.stable);
            failed = r.verdict == codes::Verdict::Fail;
          }
          out << report.dump(2) << "\n";
          return failed ? 1 : 0;
        },
        err);
  }

  if (rates->parsed()) {
    return run_checked(
        [&] {
          concat::RateLedger lg = concat::rate_ledger(rates_q);
          if (rates_json) {
            io::ReportBuilder rb(g.seed, g.stable);
            rb.set_ledger(io::ledger_to_json(lg));
            out << rb.build().dump(2) << "\n";
          } else {
            out << concat::ledger_table(lg);
          }
          return 0;
        },
        err);
  }

  if (rep->parsed()) {
    return run_checked(
        [&] {
          auto results = repro::run_all(g.seed, &out);
          io::ReportBuilder rb(g.seed, g.stable);
          for (const auto& r : results)
            rb.add_check(r.name, "pipeline", r.passed ? "pass" : "fail",
                         r.passed ? std::nullopt : std::optional<Json>(Json(r.detail)),
                         r.elapsed_ms);
          rb.set_ledger(io::ledger_to_json(concat::rate_ledger(121)));
          Json report = rb.build();
          if (!rep_out.empty()) {
            OutputFile o(rep_out, out);
            o.get() << report.dump(2) << "\n";
          }
          const bool ok = repro::all_passed(results);
          out << (ok ? "all criteria passed\n" : "FAILURES present\n");
          return ok ? 0 : 1;
        },
        err);
  }

  err << app.help();
  return 2;
}

}  // namespace sepsys::cli
