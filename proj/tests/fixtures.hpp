// Shared access to the bundled diagram fixtures.

#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "qaslopes/link_diagram.hpp"

namespace fixtures {

struct Row {
  std::string name;
  int components = 0;
  bool alternating = false;
  qaslopes::BigInt det;
  qaslopes::PDCode pd;
};

inline std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline const std::vector<Row>& diagrams() {
  static const std::vector<Row> rows = [] {
    std::vector<Row> out;
    const auto csv = qaslopes::detail::parse_csv(read(std::string(QASLOPES_DATA_DIR) + "/diagrams.csv"));
    for (std::size_t i = 1; i < csv.size(); ++i) {
      if (csv[i].size() != 5) continue;
      out.push_back({csv[i][0], std::stoi(csv[i][1]), csv[i][2] == "1", qaslopes::BigInt(csv[i][3]),
                     qaslopes::parse_pd_code(csv[i][4])});
    }
    return out;
  }();
  return rows;
}

inline const Row& by_name(const std::string& name) {
  for (const Row& r : diagrams()) {
    if (r.name == name) return r;
  }
  throw std::runtime_error("no fixture " + name);
}

/// Random relabelling, crossing permutation and strand reversal (rotation by
/// two) of a PD code; the diagram is unchanged.
inline qaslopes::PDCode scramble(const qaslopes::PDCode& pd, std::mt19937_64& rng) {
  qaslopes::PDCode out = pd;
  int max_label = 0;
  for (const auto& x : pd.crossings) {
    for (int v : x) max_label = std::max(max_label, v);
  }
  std::vector<int> perm(max_label + 1);
  for (int i = 0; i <= max_label; ++i) perm[i] = i;
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  for (auto& x : out.crossings) {
    for (int& v : x) v = perm[v] + 100;
    if (rng() % 2) std::rotate(x.begin(), x.begin() + 2, x.end());
  }
  std::shuffle(out.crossings.begin(), out.crossings.end(), rng);
  return out;
}

/// Every crossing switched: the same projection with the other strand on top.
inline qaslopes::PDCode mirror(const qaslopes::PDCode& pd) {
  qaslopes::PDCode out = pd;
  for (auto& x : out.crossings) std::rotate(x.begin(), x.begin() + 1, x.end());
  return out;
}

}  // namespace fixtures
