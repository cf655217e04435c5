#include "qaslopes/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaslopes/certifier.hpp"
#include "qaslopes/cusp.hpp"
#include "qaslopes/errors.hpp"
#include "qaslopes/formal_lspace.hpp"
#include "qaslopes/montesinos.hpp"
#include "qaslopes/sweeps.hpp"
#include "qaslopes/torus.hpp"

namespace qaslopes {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw ParseError("expected a complex number 're,im', got '" + text + "'");
  }
}

FormalSeed parse_seed(const std::string& text) {
  const Slope s = parse_slope(text);
  if (s.is_integer()) return PositiveIntegerSeed{s.p()};
  return PositiveSlopeSeed{s};
}

// A PD code given inline, or the path of a file holding one.
PDCode load_pd(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return parse_pd_code(read_file(arg));
  return parse_pd_code(arg);
}

std::string default_db_path() {
  if (const char* env = std::getenv("QA_SLOPES_DB"); env != nullptr && *env != '\0') return env;
  return std::string(QASLOPES_DATA_DIR) + "/qa_database.csv";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dehn surgery slope and quasi-alternating link toolkit", "qaslopes"};
  app.require_subcommand(1);
  bool as_json = false;
  bool no_timing = false;
  app.add_flag("--json", as_json, "Emit JSON on stdout");
  app.add_flag("--no-timing", no_timing, "Leave timing fields out of JSON output");

  // torus-qa
  std::int64_t ta = 0, tb = 0;
  std::string tslope;
  auto* torus_cmd = app.add_subcommand("torus-qa", "QA threshold of T(a,b), optionally classifying one slope");
  torus_cmd->add_option("a", ta, "First torus parameter")->required();
  torus_cmd->add_option("b", tb, "Second torus parameter")->required();
  torus_cmd->add_option("slope", tslope, "Slope p/q or (p,q)");

  // moser
  std::int64_t ma = 0, mb = 0;
  std::string mslope;
  auto* moser_cmd = app.add_subcommand("moser", "Seifert structure of a torus-knot filling");
  moser_cmd->add_option("a", ma)->required();
  moser_cmd->add_option("b", mb)->required();
  moser_cmd->add_option("slope", mslope)->required();

  // montesinos-qa
  std::string mspec;
  auto* mont_cmd = app.add_subcommand("montesinos-qa", "Quasi-alternating test for a Montesinos link");
  mont_cmd->add_option("spec", mspec, "SFS[S2:(a1,b1)...] or M(e; a1/b1, ...)")->required();

  // formal-propagate
  std::string fseed, fquery, femit;
  auto* formal_cmd = app.add_subcommand("formal-propagate", "Derive a formal L-space slope from a seed");
  formal_cmd->add_option("--seed", fseed, "Integer n >= 1 or positive slope")->required();
  formal_cmd->add_option("--query", fquery, "Target slope")->required();
  formal_cmd->add_option("--emit-derivation", femit, "Write the derivation as JSON");

  // verify-derivation
  std::string vdseed, vdquery, vdpath;
  auto* vder_cmd = app.add_subcommand("verify-derivation", "Check a derivation file");
  vder_cmd->add_option("--seed", vdseed)->required();
  vder_cmd->add_option("--query", vdquery);
  vder_cmd->add_option("derivation", vdpath, "JSON file")->required();

  // certify-qa
  std::string cpd, cdb, cassume, cemit;
  SearchLimits limits;
  auto* cert_cmd = app.add_subcommand("certify-qa", "Search for a quasi-alternating certificate");
  cert_cmd->add_option("--pd", cpd, "PD code, or a file containing one")->required();
  cert_cmd->add_option("--db", cdb, "QA database (default $QA_SLOPES_DB, else the bundled one)");
  cert_cmd->add_option("--assume", cassume, "Diagrams assumed quasi-alternating (CSV name,pd or JSON)");
  cert_cmd->add_option("--max-depth", limits.max_depth)->check(CLI::NonNegativeNumber);
  cert_cmd->add_option("--max-nodes", limits.max_nodes)->check(CLI::PositiveNumber);
  cert_cmd->add_option("--max-crossings", limits.max_crossings)->check(CLI::NonNegativeNumber);
  cert_cmd->add_option("--emit-certificate", cemit, "Write the certificate as JSON");

  // verify-certificate
  std::string vcpath, vcdb;
  auto* vcert_cmd = app.add_subcommand("verify-certificate", "Re-check a certificate file");
  vcert_cmd->add_option("certificate", vcpath)->required();
  vcert_cmd->add_option("--db", vcdb);

  // short-slopes
  std::string smu, slambda;
  double sbound = 0, ssystole = 0, sarea = 1.0;
  bool ssix = false;
  auto* short_cmd = app.add_subcommand("short-slopes", "Slopes of bounded normalized length in a cusp");
  short_cmd->add_option("--mu", smu, "re,im")->required();
  short_cmd->add_option("--lambda", slambda, "re,im")->required();
  auto* bound_opt = short_cmd->add_option("--bound", sbound, "Normalized length bound");
  auto* systole_opt = short_cmd->add_option("--systole", ssystole, "Use the bound C(M) for this systole");
  auto* six_opt = short_cmd->add_flag("--six-theorem", ssix, "Raw length <= 6 instead");
  short_cmd->add_option("--area-lower-bound", sarea, "Used with --six-theorem");
  bound_opt->excludes(systole_opt)->excludes(six_opt);
  systole_opt->excludes(six_opt);

  // sweep
  std::string suite, sout;
  SweepOptions sweep_opts;
  sweep_opts.fixtures = std::string(QASLOPES_DATA_DIR) + "/diagrams.csv";
  std::string fixtures = sweep_opts.fixtures.string();
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an oracle-equivalence sweep and write a CSV report");
  sweep_cmd->add_option("suite", suite)->required()->check(CLI::IsMember(sweep_names()));
  sweep_cmd->add_option("--out", sout, "Report path (default <suite>.csv)");
  sweep_cmd->add_option("--amax", sweep_opts.amax);
  sweep_cmd->add_option("--qmax", sweep_opts.qmax);
  sweep_cmd->add_option("--window", sweep_opts.window);
  sweep_cmd->add_option("--nmax", sweep_opts.nmax);
  sweep_cmd->add_option("--derive-qmax", sweep_opts.derive_qmax);
  sweep_cmd->add_option("--max-crossings", sweep_opts.max_crossings);
  sweep_cmd->add_option("--fixtures", fixtures);
  sweep_cmd->add_option("--seed", sweep_opts.seed);
  sweep_cmd->add_option("--cusps", sweep_opts.cusps);

  std::vector<std::string> argv_store{"qaslopes"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*torus_cmd) {
      const TorusKnot k(ta, tb);
      const QAThreshold t = qa_threshold(k);
      json j = {{"knot", k.str()}, {"genus", k.genus()}, {"m", t.m}, {"n", t.n}, {"threshold", to_string(t.threshold)}};
      int code = kOk;
      if (!tslope.empty()) {
        const Slope s = parse_slope(tslope);
        const bool qa = is_qa_slope(k, s);
        j["slope"] = s.str();
        j["quasi_alternating"] = qa;
        if (!qa) code = kNegative;
      }
      if (as_json) {
        out << j.dump(2) << "\n";
      } else {
        out << k.str() << ": threshold " << to_string(t.threshold) << " (m=" << t.m << ", n=" << t.n << "), genus "
            << k.genus() << "\n";
        if (!tslope.empty()) {
          out << "slope " << j["slope"].get<std::string>() << ": "
              << (j["quasi_alternating"].get<bool>() ? "quasi-alternating" : "not quasi-alternating") << "\n";
        }
      }
      return code;
    }

    if (*moser_cmd) {
      const TorusKnot k(ma, mb);
      const MoserParams mp = moser_params(k);
      const Slope s = parse_slope(mslope);
      const std::string filling = describe(moser_surgery(k, s));
      if (as_json) {
        out << json{{"knot", k.str()}, {"c", mp.c}, {"d", mp.d}, {"slope", s.str()}, {"filling", filling}}.dump(2)
            << "\n";
      } else {
        out << k.str() << " Moser parameters c=" << mp.c << ", d=" << mp.d << "\n";
        out << k.str() << "(" << s.str() << ") = " << filling << "\n";
      }
      return kOk;
    }

    if (*mont_cmd) {
      const MontesinosLink link = parse_montesinos_spec(mspec);
      const MontesinosLink normal = normalize(link);
      const bool qa = issa_qa(normal);
      if (as_json) {
        out << json{{"input", link.str()}, {"normalized", normal.str()}, {"quasi_alternating", qa}}.dump(2) << "\n";
      } else {
        out << normal.str() << ": " << (qa ? "quasi-alternating" : "not quasi-alternating") << "\n";
      }
      return qa ? kOk : kNegative;
    }

    if (*formal_cmd) {
      const FormalSeed seed = parse_seed(fseed);
      const Slope query = parse_slope(fquery);
      PropagationResult res = propagate(seed, query);
      if (const auto* nd = std::get_if<NotDerivable>(&res)) {
        if (as_json) {
          out << json{{"seed", describe(seed)}, {"query", query.str()}, {"derivable", false}, {"reason", nd->reason}}
                     .dump(2)
              << "\n";
        } else {
          out << query.str() << " is not derivable from " << describe(seed) << ": " << nd->reason << "\n";
        }
        return kNegative;
      }
      const Derivation& d = std::get<Derivation>(res);
      const CheckResult check = verify_derivation(d, seed, query);
      if (!check) throw std::logic_error("derivation failed its own check: " + check.diagnostic);
      const json dj = derivation_to_json(d);
      if (!femit.empty()) write_file(femit, dj.dump(2) + "\n");
      if (as_json) {
        out << json{{"seed", describe(seed)}, {"query", query.str()}, {"derivable", true}, {"derivation", dj}}.dump(2)
            << "\n";
      } else {
        out << query.str() << " is a formal L-space slope from " << describe(seed) << " (" << d.size()
            << " steps)\n";
        for (const TriadWitness& w : d) {
          out << "  " << w.target.str() << " <- ";
          if (const auto* lens = std::get_if<LensMarker>(&w.first)) {
            out << "L(" << lens->q << "," << lens->r << ")";
          } else {
            out << std::get<Slope>(w.first).str();
          }
          out << ", " << w.second.str() << (w.rule == TriadRule::IntegerStep ? "  [integer]" : "  [mediant]") << "\n";
        }
      }
      return kOk;
    }

    if (*vder_cmd) {
      const FormalSeed seed = parse_seed(vdseed);
      json j;
      try {
        j = json::parse(read_file(vdpath));
      } catch (const json::exception& e) {
        throw ParseError(std::string("malformed derivation JSON: ") + e.what());
      }
      const Derivation d = derivation_from_json(j);
      const CheckResult check =
          vdquery.empty() ? verify_derivation(d, seed) : verify_derivation(d, seed, parse_slope(vdquery));
      if (as_json) {
        out << json{{"valid", check.ok}, {"diagnostic", check.diagnostic}}.dump(2) << "\n";
      } else {
        out << (check.ok ? "derivation is valid" : "derivation is invalid: " + check.diagnostic) << "\n";
      }
      return check.ok ? kOk : kNegative;
    }

    if (*cert_cmd) {
      const auto start = std::chrono::steady_clock::now();
      const std::string db_path = cdb.empty() ? default_db_path() : cdb;
      const QADatabase db = std::filesystem::exists(db_path) || !cdb.empty() ? load_database(db_path) : QADatabase{};
      const std::vector<Assumption> assumptions = cassume.empty() ? std::vector<Assumption>{} : load_assumptions(cassume);
      const LinkDiagram diagram(load_pd(cpd));
      SearchStats stats;
      const CertifyResult result = certify(diagram, db, assumptions, limits, &stats);
      json j = {{"input", diagram.str()}, {"determinant", determinant(diagram).str()}, {"nodes", stats.nodes}};
      int code = kOk;
      if (const auto* qa = std::get_if<CertifiedQA>(&result)) {
        const CertificateCheck check = verify_certificate(qa->certificate, db);
        if (!check) throw std::logic_error("certificate failed its own check: " + check.diagnostic);
        const json cj = certificate_to_json(qa->certificate);
        if (!cemit.empty()) write_file(cemit, cj.dump(2) + "\n");
        j["verdict"] = "QA";
        j["certificate"] = cj;
        j["assumptions_used"] = check.assumptions_used;
        if (!as_json) {
          out << "quasi-alternating\n" << render_certificate(qa->certificate);
          if (!check.assumptions_used.empty()) {
            out << "conditional on assumed diagrams:";
            for (const auto& n : check.assumptions_used) out << " " << n;
            out << "\n";
          }
        }
      } else {
        j["verdict"] = "Unknown";
        j["reason"] = std::get<Unknown>(result).reason;
        code = kNegative;
        if (!as_json) out << "unknown: " << std::get<Unknown>(result).reason << "\n";
      }
      if (as_json) {
        if (!no_timing) j["elapsed_ms"] = elapsed_ms(start);
        out << j.dump(2) << "\n";
      }
      return code;
    }

    if (*vcert_cmd) {
      const std::string db_path = vcdb.empty() ? default_db_path() : vcdb;
      const QADatabase db = std::filesystem::exists(db_path) || !vcdb.empty() ? load_database(db_path) : QADatabase{};
      json j;
      try {
        j = json::parse(read_file(vcpath));
      } catch (const json::exception& e) {
        throw ParseError(std::string("malformed certificate JSON: ") + e.what());
      }
      const CertificateCheck check = verify_certificate(certificate_from_json(j), db);
      if (as_json) {
        out << json{{"valid", check.ok}, {"diagnostic", check.diagnostic}, {"assumptions_used", check.assumptions_used}}
                   .dump(2)
            << "\n";
      } else {
        out << (check.ok ? "certificate is valid" : "certificate is invalid: " + check.diagnostic) << "\n";
      }
      return check.ok ? kOk : kNegative;
    }

    if (*short_cmd) {
      const CuspShape cusp(parse_complex(smu), parse_complex(slambda));
      std::vector<ShortSlope> slopes;
      double bound = 0;
      std::string kind = "normalized";
      if (ssix) {
        slopes = six_theorem_slopes(cusp, sarea);
        bound = 6.0;
        kind = "raw";
      } else if (systole_opt->count() > 0) {
        bound = fps_bound(ssystole);
        slopes = short_slopes(cusp, bound);
      } else if (bound_opt->count() > 0) {
        bound = sbound;
        slopes = short_slopes(cusp, bound);
      } else {
        throw CLI::RequiredError("one of --bound, --systole, --six-theorem");
      }
      if (as_json) {
        json list = json::array();
        for (const auto& s : slopes) {
          list.push_back({{"p", s.slope.p().str()}, {"q", s.slope.q().str()}, {"length", s.length}});
        }
        out << json{{"bound", bound}, {"length", kind}, {"area", cusp.area()}, {"slopes", list}}.dump(2) << "\n";
      } else {
        out << slopes.size() << " slopes with " << kind << " length <= " << fmt_double(bound) << "\n";
        for (const auto& s : slopes) out << "  " << std::setw(10) << s.slope.str() << "  " << fmt_double(s.length) << "\n";
      }
      return kOk;
    }

    if (*sweep_cmd) {
      const auto start = std::chrono::steady_clock::now();
      sweep_opts.fixtures = fixtures;
      const SweepReport report = run_sweep(suite, sweep_opts);
      const std::string path = sout.empty() ? suite + ".csv" : sout;
      write_report_csv(report, path);
      if (as_json) {
        json j = {{"suite", suite}, {"cases", report.cases}, {"mismatches", report.mismatches}, {"report", path}};
        if (!no_timing) j["elapsed_ms"] = elapsed_ms(start);
        out << j.dump(2) << "\n";
      } else {
        out << suite << ": " << report.cases << " cases, " << report.mismatches << " mismatches (report " << path
            << ")\n";
      }
      return report.mismatches == 0 ? kOk : kNegative;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qaslopes
