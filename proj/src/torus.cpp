#include "qaslopes/torus.hpp"

#include <numeric>
#include <sstream>

#include "qaslopes/errors.hpp"

namespace qaslopes {

namespace {

// Inverse of x modulo m, for gcd(x, m) = 1, in [0, m).
std::int64_t mod_inverse(std::int64_t x, std::int64_t m) {
  std::int64_t old_r = x % m, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  std::int64_t inv = old_s % m;
  return inv < 0 ? inv + m : inv;
}

}  // namespace

TorusKnot::TorusKnot(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
  if (!(a > b && b >= 2)) throw DomainError("torus knot needs a > b >= 2, got " + str());
  if (std::gcd(a, b) != 1) throw DomainError("torus knot parameters must be coprime, got " + str());
}

std::string TorusKnot::str() const {
  return "T(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
}

MoserParams moser_params(const TorusKnot& knot) {
  const std::int64_t a = knot.a();
  const std::int64_t b = knot.b();
  // b*d = -1 (mod a), 0 < d < a; then b > -c > 0 follows from a > d.
  std::int64_t d = (a - mod_inverse(b % a, a)) % a;
  std::int64_t c = (-1 - b * d) / a;
  return {c, d};
}

SurgeryResult moser_surgery(const TorusKnot& knot, const Slope& r) {
  if (r.is_meridian()) throw DomainError("the trivial filling 1/0 is excluded");
  const BigInt a = knot.a();
  const BigInt b = knot.b();
  const BigInt third = a * b * r.q() - r.p();
  if (third == 0) return ConnectedSumOfLens{{knot.a(), knot.b()}, {knot.b(), knot.a()}};
  if (abs(third) <= 1) return LensSpace{abs(r.p())};
  const MoserParams mp = moser_params(knot);
  // (alpha, beta) and (-alpha, -beta) are the same fiber; keep alpha positive.
  const BigInt sign = third < 0 ? BigInt(-1) : BigInt(1);
  return SmallSFS{{Fiber{a, BigInt(mp.d)}, Fiber{b, BigInt(mp.c)}, Fiber{sign * third, sign * r.q()}}};
}

std::string describe(const SurgeryResult& result) {
  std::ostringstream os;
  if (const auto* lens = std::get_if<LensSpace>(&result)) {
    os << "lens space with |H_1| = " << lens->order;
  } else if (const auto* sum = std::get_if<ConnectedSumOfLens>(&result)) {
    os << "L(" << sum->first.first << "," << sum->first.second << ")#L(" << sum->second.first << ","
       << sum->second.second << ")";
  } else {
    const auto& sfs = std::get<SmallSFS>(result);
    os << "SFS[S2:";
    for (const Fiber& f : sfs.fibers) os << "(" << f.alpha << "," << f.beta << ")";
    os << "]";
  }
  return os.str();
}

QAThreshold qa_threshold(const TorusKnot& knot) {
  const std::int64_t a = knot.a();
  const std::int64_t b = knot.b();
  const std::int64_t m = mod_inverse(b % a, a);
  const std::int64_t n = (a * b + 1 - b * m) / a;
  const Rational by_m{BigInt(a), BigInt(m)};
  const Rational by_n{BigInt(b), BigInt(n)};
  Rational threshold = Rational(BigInt(a * b)) - (by_m > by_n ? by_m : by_n);
  return {m, n, threshold};
}

bool is_qa_slope(const TorusKnot& knot, const Slope& r) {
  if (r.is_meridian()) throw DomainError("slope 1/0 is not classified");
  return r.value() > qa_threshold(knot).threshold;
}

Slope lspace_slope_min(const TorusKnot& knot) { return Slope::integer(BigInt(2 * knot.genus() - 1)); }

}  // namespace qaslopes
