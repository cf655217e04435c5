// Batch property sweeps comparing the library against independent oracles.
// Each sweep yields a table of rows and a mismatch count.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qaslopes {

struct SweepOptions {
  // thm61-oracle
  long long amax = 12;
  long long window = 30;
  // thm61-oracle slope denominators, triad-closure fixed-point denominators
  long long qmax = 12;
  // triad-closure derivation checks: seeds 2..nmax, q <= derive_qmax, p <= pmax_ratio*q
  long long nmax = 6;
  long long derive_qmax = 25;
  long long pmax_ratio = 12;
  // det-oracle
  int max_crossings = 10;
  std::filesystem::path fixtures;
  // short-slopes-bruteforce
  std::uint64_t seed = 20240601;
  int cusps = 20;
  std::vector<double> bounds{2.0, 6.0, 10.1};
};

struct SweepReport {
  std::string suite;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // sorted
  long long cases = 0;
  long long mismatches = 0;
};

const std::vector<std::string>& sweep_names();

/// Throws DomainError for an unknown suite name.
SweepReport run_sweep(const std::string& suite, const SweepOptions& options);

void write_report_csv(const SweepReport& report, const std::filesystem::path& path);

/// The eight small Seifert fibered spaces listed as non-quasi-alternating
/// fillings, as SFS strings.
const std::vector<std::string>& table8_spaces();

}  // namespace qaslopes
