#include "oracles.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qaslopes::oracle {

namespace {

int find(std::map<int, int>& parent, int x) {
  if (!parent.contains(x)) parent[x] = x;
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

BigInt bracket_determinant(const PDCode& pd) {
  const int n = static_cast<int>(pd.crossings.size());
  if (n > 24) throw std::invalid_argument("bracket oracle is limited to 24 crossings");
  // Powers of i summed over one-loop states, indexed by (#A mod 4).
  long long count[4] = {0, 0, 0, 0};
  for (long long state = 0; state < (1LL << n); ++state) {
    std::map<int, int> parent;
    int a_count = 0;
    for (int c = 0; c < n; ++c) {
      const Crossing& x = pd.crossings[c];
      for (int v : x) find(parent, v);
      if ((state >> c) & 1) {
        parent[find(parent, x[0])] = find(parent, x[3]);
        parent[find(parent, x[1])] = find(parent, x[2]);
      } else {
        ++a_count;
        parent[find(parent, x[0])] = find(parent, x[1]);
        parent[find(parent, x[2])] = find(parent, x[3]);
      }
    }
    int loops = pd.free_loops;
    for (auto& [label, p] : parent) {
      if (find(parent, label) == label) ++loops;
    }
    if (loops == 1) ++count[a_count % 4];
  }
  const BigInt re = BigInt(count[0]) - count[2];
  const BigInt im = BigInt(count[1]) - count[3];
  const BigInt norm = re * re + im * im;
  BigInt root = boost::multiprecision::sqrt(norm);
  if (root * root != norm) throw std::logic_error("bracket value at a primitive 8th root has non-integer modulus");
  return root;
}

std::set<Slope> triad_closure(const std::vector<Slope>& seeds, long long max_q, long long max_value) {
  auto inside = [&](long long p, long long q) { return q >= 1 && q <= max_q && p > 0 && p <= max_value * q; };
  std::set<std::pair<long long, long long>> found;  // (p, q), reduced
  for (const Slope& s : seeds) {
    long long p = s.p().convert_to<long long>(), q = s.q().convert_to<long long>();
    if (inside(p, q)) found.emplace(p, q);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<long long, long long>> current(found.begin(), found.end());
    for (auto [p, q] : current) {
      if (inside(p + q, q) && found.emplace(p + q, q).second) grew = true;
    }
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        auto [p0, q0] = current[i];
        auto [p1, q1] = current[j];
        if (std::llabs(p0 * q1 - p1 * q0) != 1) continue;
        if (inside(p0 + p1, q0 + q1) && found.emplace(p0 + p1, q0 + q1).second) grew = true;
      }
    }
  }
  std::set<Slope> out;
  for (auto [p, q] : found) out.insert(Slope(p, q));
  return out;
}

std::set<std::pair<long long, long long>> rectangle_short_slopes(std::complex<double> mu, std::complex<double> lambda,
                                                                 double bound) {
  const double area = std::fabs(mu.real() * lambda.imag() - mu.imag() * lambda.real());
  const double root = std::sqrt(area);
  const long long box = static_cast<long long>(std::ceil(bound * (std::abs(mu) + std::abs(lambda)) / root));
  std::set<std::pair<long long, long long>> out;
  for (long long p = -box; p <= box; ++p) {
    for (long long q = -box; q <= box; ++q) {
      if (p == 0 && q == 0) continue;
      if (std::gcd(p, q) != 1) continue;
      const double re = p * mu.real() + q * lambda.real();
      const double im = p * mu.imag() + q * lambda.imag();
      if (std::sqrt(re * re + im * im) / root > bound * (1 + 1e-9)) continue;
      long long cp = p, cq = q;
      if (cq < 0 || (cq == 0 && cp < 0)) {
        cp = -cp;
        cq = -cq;
      }
      out.emplace(cp, cq);
    }
  }
  return out;
}

}  // namespace qaslopes::oracle
