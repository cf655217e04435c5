#include "qaslopes/cusp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qaslopes/errors.hpp"

namespace qaslopes {

CuspShape::CuspShape(std::complex<double> mu, std::complex<double> lambda) : mu_(mu), lambda_(lambda) {
  if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag()) || !std::isfinite(lambda.real()) ||
      !std::isfinite(lambda.imag())) {
    throw DomainError("cusp translations must be finite");
  }
  area_ = std::abs((std::conj(mu) * lambda).imag());
  if (!(area_ > 1e-12 * std::abs(mu) * std::abs(lambda))) {
    throw DomainError("cusp translations are parallel; the cusp has zero area");
  }
}

double raw_length(const CuspShape& cusp, const Slope& s) {
  return std::abs(s.p().convert_to<double>() * cusp.mu() + s.q().convert_to<double>() * cusp.lambda());
}

double normalized_length(const CuspShape& cusp, const Slope& s) {
  return raw_length(cusp, s) / std::sqrt(cusp.area());
}

double fps_bound(double systole) {
  if (!(systole > 0)) throw DomainError("systole must be positive");
  return std::max(10.1, std::sqrt(2 * std::numbers::pi / systole + 58));
}

namespace {

// All canonical slopes of raw length <= limit. |p| * area = |cross(v, lambda)|
// <= |v| * |lambda| bounds p, and symmetrically for q.
std::vector<ShortSlope> enumerate(const CuspShape& c, double limit, double scale) {
  const long long pmax = static_cast<long long>(std::floor(limit * std::abs(c.lambda()) / c.area())) + 1;
  const long long qmax = static_cast<long long>(std::floor(limit * std::abs(c.mu()) / c.area())) + 1;
  const double allowed = limit * (1 + 1e-9);
  std::vector<ShortSlope> out;
  for (long long q = 0; q <= qmax; ++q) {
    for (long long p = q == 0 ? 1 : -pmax; p <= (q == 0 ? 1 : pmax); ++p) {
      if (std::gcd(p, q) != 1) continue;
      const double len = std::abs(static_cast<double>(p) * c.mu() + static_cast<double>(q) * c.lambda());
      if (len <= allowed) out.push_back({Slope(p, q), len * scale});
    }
  }
  std::sort(out.begin(), out.end(), [](const ShortSlope& a, const ShortSlope& b) {
    if (a.length != b.length) return a.length < b.length;
    const BigInt ap = abs(a.slope.p()), bp = abs(b.slope.p());
    if (ap != bp) return ap < bp;
    if (a.slope.q() != b.slope.q()) return a.slope.q() < b.slope.q();
    return a.slope.p() < b.slope.p();
  });
  return out;
}

}  // namespace

std::vector<ShortSlope> short_slopes(const CuspShape& cusp, double bound) {
  if (!(bound > 0)) throw DomainError("length bound must be positive");
  const double root = std::sqrt(cusp.area());
  return enumerate(cusp, bound * root, 1 / root);
}

std::vector<ShortSlope> six_theorem_slopes(const CuspShape& cusp, double area_lower_bound) {
  const double scale = std::max(1.0, std::sqrt(area_lower_bound / cusp.area()));
  return enumerate(cusp, 6.0 / scale, scale);
}

std::vector<Slope> short_slopes_exact(const ExactCusp& c, const Rational& bound_squared) {
  if (bound_squared <= 0) throw DomainError("length bound must be positive");
  const Rational area = abs(c.mu_re * c.lambda_im - c.mu_im * c.lambda_re);
  if (area == 0) throw DomainError("cusp translations are parallel; the cusp has zero area");
  const Rational mu2 = c.mu_re * c.mu_re + c.mu_im * c.mu_im;
  const Rational la2 = c.lambda_re * c.lambda_re + c.lambda_im * c.lambda_im;
  // p^2 <= B^2 |lambda|^2 / area, likewise for q.
  auto range = [&](const Rational& sq) {
    BigInt r = boost::multiprecision::sqrt(floor(bound_squared * sq / area));
    return r + 1;
  };
  const BigInt pmax = range(la2);
  const BigInt qmax = range(mu2);
  const Rational limit = bound_squared * area;
  std::vector<std::pair<Rational, Slope>> found;
  for (BigInt q = 0; q <= qmax; ++q) {
    for (BigInt p = q == 0 ? BigInt(1) : -pmax; p <= (q == 0 ? BigInt(1) : pmax); ++p) {
      if (boost::multiprecision::gcd(p, q) != 1) continue;
      const Rational re = Rational(p) * c.mu_re + Rational(q) * c.lambda_re;
      const Rational im = Rational(p) * c.mu_im + Rational(q) * c.lambda_im;
      const Rational len2 = re * re + im * im;
      if (len2 <= limit) found.emplace_back(len2, Slope(p, q));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    const BigInt ap = abs(a.second.p()), bp = abs(b.second.p());
    if (ap != bp) return ap < bp;
    if (a.second.q() != b.second.q()) return a.second.q() < b.second.q();
    return a.second.p() < b.second.p();
  });
  std::vector<Slope> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

}  // namespace qaslopes
