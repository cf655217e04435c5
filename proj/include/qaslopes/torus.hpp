// Surgeries on positive torus knots: Seifert invariants of every filling and
// the closed-form quasi-alternating slope threshold.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>

#include "qaslopes/rational.hpp"

namespace qaslopes {

/// The (a,b) torus knot with a > b >= 2 coprime.
class TorusKnot {
 public:
  TorusKnot(std::int64_t a, std::int64_t b);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t genus() const { return (a_ - 1) * (b_ - 1) / 2; }
  std::string str() const;

 private:
  std::int64_t a_;
  std::int64_t b_;
};

/// Integers with a*c + b*d = -1, normalized to a > d > 0 and b > -c > 0.
struct MoserParams {
  std::int64_t c;
  std::int64_t d;
  friend bool operator==(const MoserParams&, const MoserParams&) = default;
};

/// Seifert invariant (alpha, beta) of an exceptional fiber.
struct Fiber {
  BigInt alpha;
  BigInt beta;
  friend bool operator==(const Fiber&, const Fiber&) = default;
};

struct LensSpace {
  BigInt order;  // |H_1|
  friend bool operator==(const LensSpace&, const LensSpace&) = default;
};

/// L(a,b) # L(b,a), the p/q = ab filling.
struct ConnectedSumOfLens {
  std::pair<std::int64_t, std::int64_t> first;
  std::pair<std::int64_t, std::int64_t> second;
  friend bool operator==(const ConnectedSumOfLens&, const ConnectedSumOfLens&) = default;
};

/// SFS[S2:(a,d)(b,c)(abq-p,q)].
struct SmallSFS {
  std::array<Fiber, 3> fibers;
  friend bool operator==(const SmallSFS&, const SmallSFS&) = default;
};

using SurgeryResult = std::variant<LensSpace, ConnectedSumOfLens, SmallSFS>;

std::string describe(const SurgeryResult& result);

struct QAThreshold {
  std::int64_t m;
  std::int64_t n;
  Rational threshold;  // ab - max{a/m, b/n}
};

MoserParams moser_params(const TorusKnot& knot);

/// Throws DomainError for r = 1/0.
SurgeryResult moser_surgery(const TorusKnot& knot, const Slope& r);

QAThreshold qa_threshold(const TorusKnot& knot);

/// True iff r > qa_threshold(knot).threshold. Throws DomainError for 1/0.
bool is_qa_slope(const TorusKnot& knot, const Slope& r);

/// Left end 2g-1 of the L-space slope interval [2g-1, oo).
Slope lspace_slope_min(const TorusKnot& knot);

}  // namespace qaslopes
