#include "qaslopes/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "csv.hpp"
#include "oracles.hpp"
#include "qaslopes/errors.hpp"
#include "qaslopes/formal_lspace.hpp"
#include "qaslopes/link_diagram.hpp"
#include "qaslopes/montesinos.hpp"
#include "qaslopes/torus.hpp"
#include "qaslopes/cusp.hpp"

namespace qaslopes {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

SweepReport thm61(const SweepOptions& o) {
  SweepReport r{"thm61-oracle", {"a", "b", "slopes", "mismatches", "first_mismatch"}, {}, 0, 0};
  for (long long a = 3; a <= o.amax; ++a) {
    for (long long b = 2; b < a; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const TorusKnot k(a, b);
      long long cases = 0, bad = 0;
      std::string first;
      for (long long q = 1; q <= o.qmax; ++q) {
        for (long long p = (a * b - o.window) * q; p <= (a * b + o.window) * q; ++p) {
          if (std::gcd(p, q) != 1) continue;
          const Slope s(p, q);
          ++cases;
          if (is_qa_slope(k, s) != qa_slope_via_pipeline(k, s)) {
            if (bad++ == 0) first = s.str();
          }
        }
      }
      r.cases += cases;
      r.mismatches += bad;
      r.rows.push_back({std::to_string(a), std::to_string(b), std::to_string(cases), std::to_string(bad), first});
    }
  }
  return r;
}

bool derivable(const FormalSeed& seed, const Slope& query, std::string* failure) {
  PropagationResult res = propagate(seed, query);
  const auto* d = std::get_if<Derivation>(&res);
  if (d == nullptr) return false;
  CheckResult check = verify_derivation(*d, seed, query);
  if (!check && failure) *failure = check.diagnostic;
  return true;
}

SweepReport triad(const SweepOptions& o) {
  SweepReport r{"triad-closure", {"check", "seed", "slope", "library", "oracle", "match"}, {}, 0, 0};
  // Every query above the seed derives, and every derivation verifies.
  for (long long n = 2; n <= o.nmax; ++n) {
    const FormalSeed seed = PositiveIntegerSeed{BigInt(n)};
    for (long long q = 1; q <= o.derive_qmax; ++q) {
      for (long long p = n * q; p <= o.pmax_ratio * q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        ++r.cases;
        std::string failure;
        const bool ok = derivable(seed, Slope(p, q), &failure);
        if (!ok || !failure.empty()) {
          ++r.mismatches;
          r.rows.push_back({"derive", std::to_string(n), Slope(p, q).str(), ok ? "derived" : "not derivable",
                            failure.empty() ? "-" : failure, "no"});
        }
      }
    }
  }
  // Derivable set against the brute-force fixed point.
  for (long long n : {2LL, 3LL}) {
    if (n > o.nmax) continue;
    const FormalSeed seed = PositiveIntegerSeed{BigInt(n)};
    const std::set<Slope> closure = oracle::triad_closure({Slope::integer(BigInt(n))}, o.qmax, o.pmax_ratio);
    for (long long q = 1; q <= o.qmax; ++q) {
      for (long long p = 1; p <= o.pmax_ratio * q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const Slope s(p, q);
        ++r.cases;
        const bool lib = derivable(seed, s, nullptr);
        const bool ora = closure.contains(s);
        if (lib != ora) ++r.mismatches;
        r.rows.push_back({"closure", std::to_string(n), s.str(), yes_no(lib), yes_no(ora), yes_no(lib == ora)});
      }
    }
  }
  return r;
}

SweepReport table8(const SweepOptions&) {
  SweepReport r{"table8", {"space", "normalized", "verdict", "expected", "match"}, {}, 0, 0};
  for (const std::string& text : table8_spaces()) {
    const MontesinosLink link = normalize(parse_montesinos_spec(text));
    const bool qa = issa_qa(link);
    ++r.cases;
    if (qa) ++r.mismatches;
    r.rows.push_back({text, link.str(), qa ? "QA" : "not QA", "not QA", yes_no(!qa)});
  }
  return r;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SweepReport det_oracle(const SweepOptions& o) {
  SweepReport r{"det-oracle", {"name", "crossings", "goeritz", "goeritz_dual", "bracket", "stored", "match"}, {}, 0, 0};
  const auto rows = detail::parse_csv(read_file(o.fixtures));
  if (rows.empty()) throw DataError("fixture file " + o.fixtures.string() + " is empty");
  const auto& header = rows[0];
  auto column = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("fixture file lacks column '" + name + "'");
    return it - header.begin();
  };
  const std::size_t name_col = column("name"), pd_col = column("pd"), det_col = column("det");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) continue;
    const PDCode pd = parse_pd_code(rows[i][pd_col]);
    if (static_cast<int>(pd.crossings.size()) > o.max_crossings) continue;
    const LinkDiagram d(pd);
    const BigInt g0 = determinant(d, 0), g1 = determinant(d, 1), b = oracle::bracket_determinant(pd);
    const BigInt stored(rows[i][det_col]);
    const bool ok = g0 == b && g1 == b && b == stored;
    ++r.cases;
    if (!ok) ++r.mismatches;
    r.rows.push_back({rows[i][name_col], std::to_string(pd.crossings.size()), g0.str(), g1.str(), b.str(),
                      stored.str(), yes_no(ok)});
  }
  return r;
}

SweepReport short_slopes_sweep(const SweepOptions& o) {
  SweepReport r{"short-slopes-bruteforce", {"cusp", "mu", "lambda", "bound", "library", "oracle", "match"}, {}, 0, 0};
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < o.cusps; ++i) {
    // A random lattice: shear in [-1,1], aspect in [0.3,3], overall scale and rotation.
    const double scale = 0.2 + 4.8 * unit(rng);
    const double angle = 2 * std::numbers::pi * unit(rng);
    const std::complex<double> rot = std::polar(scale, angle);
    const std::complex<double> mu = rot;
    const std::complex<double> lambda = rot * std::complex<double>(-1 + 2 * unit(rng), 0.3 + 2.7 * unit(rng));
    const CuspShape cusp(mu, lambda);
    for (double bound : o.bounds) {
      std::set<std::pair<long long, long long>> lib;
      for (const ShortSlope& s : short_slopes(cusp, bound)) {
        lib.emplace(s.slope.p().convert_to<long long>(), s.slope.q().convert_to<long long>());
      }
      const auto ora = oracle::rectangle_short_slopes(mu, lambda, bound);
      ++r.cases;
      if (lib != ora) ++r.mismatches;
      auto c = [](std::complex<double> z) { return fmt(z.real()) + "," + fmt(z.imag()); };
      r.rows.push_back({std::to_string(i), c(mu), c(lambda), fmt(bound), std::to_string(lib.size()),
                        std::to_string(ora.size()), yes_no(lib == ora)});
    }
  }
  return r;
}

}  // namespace

const std::vector<std::string>& table8_spaces() {
  static const std::vector<std::string> spaces{
      "SFS[S2:(2,1)(5,2)(7,-4)]", "SFS[S2:(2,1)(5,2)(8,-5)]",  "SFS[S2:(2,1)(7,2)(8,-5)]",
      "SFS[S2:(3,1)(5,3)(7,-5)]", "SFS[S2:(2,1)(8,3)(9,-7)]",  "SFS[S2:(2,1)(5,2)(12,-7)]",
      "SFS[S2:(2,1)(7,3)(11,-7)]", "SFS[S2:(2,1)(8,3)(9,-5)]"};
  return spaces;
}

const std::vector<std::string>& sweep_names() {
  static const std::vector<std::string> names{"thm61-oracle", "triad-closure", "table8", "det-oracle",
                                              "short-slopes-bruteforce"};
  return names;
}

SweepReport run_sweep(const std::string& suite, const SweepOptions& options) {
  SweepReport report;
  if (suite == "thm61-oracle") {
    report = thm61(options);
  } else if (suite == "triad-closure") {
    report = triad(options);
  } else if (suite == "table8") {
    report = table8(options);
  } else if (suite == "det-oracle") {
    report = det_oracle(options);
  } else if (suite == "short-slopes-bruteforce") {
    report = short_slopes_sweep(options);
  } else {
    throw DomainError("unknown sweep suite '" + suite + "'");
  }
  std::sort(report.rows.begin(), report.rows.end());
  return report;
}

void write_report_csv(const SweepReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  detail::write_csv_row(out, report.header);
  for (const auto& row : report.rows) detail::write_csv_row(out, row);
}

}  // namespace qaslopes
