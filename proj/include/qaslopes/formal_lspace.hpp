// Formal L-space surgery slopes: constructive propagation from a seed slope
// through surgery triads, derivation checking, and the genus bounds that every
// formal L-space slope obeys.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qaslopes/rational.hpp"
#include "qaslopes/torus.hpp"

namespace qaslopes {

/// Hypothesis "K(r) is a formal L-space" for some r > 0. Propagation only
/// adds integers to r.
struct PositiveSlopeSeed {
  Slope r;
};

/// Hypothesis "K(n) is a formal L-space" for an integer n >= 1. Every slope
/// >= n follows.
struct PositiveIntegerSeed {
  BigInt n;
};

using FormalSeed = std::variant<PositiveSlopeSeed, PositiveIntegerSeed>;

Slope seed_slope(const FormalSeed& seed);
std::string describe(const FormalSeed& seed);

/// The lens space U(q/r) filled alongside K(p/q) in the +1 triad, where
/// p/q = n - r/q with 0 <= r < q. |H_1| = q.
struct LensMarker {
  BigInt q;
  BigInt r;
  friend bool operator==(const LensMarker&, const LensMarker&) = default;
};

using TriadParent = std::variant<Slope, LensMarker>;

enum class TriadRule { IntegerStep, CFStep };

/// One triad: target is a formal L-space because both parents are.
/// IntegerStep: parents (U(q/r), p/q), target (p+q)/q.
/// CFStep: parents (p0/q0, p1/q1), target their mediant.
struct TriadWitness {
  Slope target;
  TriadParent first;
  Slope second;
  TriadRule rule;
};

using Derivation = std::vector<TriadWitness>;

/// The seed does not reach the query by these rules. This says nothing about
/// whether the filling is a formal L-space.
struct NotDerivable {
  std::string reason;
};

using PropagationResult = std::variant<Derivation, NotDerivable>;

/// Builds a derivation of `query` from `seed`, listing every witness after
/// the witnesses of its parents. Throws DomainError for query 1/0 or a
/// non-positive seed.
PropagationResult propagate(const FormalSeed& seed, const Slope& query);

struct CheckResult {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

/// Replays a derivation: each witness must be a genuine triad with additive
/// |H_1| whose slope parents are the seed or earlier targets.
CheckResult verify_derivation(const Derivation& derivation, const FormalSeed& seed);

/// As above, and additionally the derivation must end at `query` (or be empty
/// with query equal to the seed).
CheckResult verify_derivation(const Derivation& derivation, const FormalSeed& seed, const Slope& query);

/// Largest g with 2g <= ceil(r) - sqrt(ceil(r)), exact. Requires r > 0.
BigInt greene_max_genus(const Slope& r);

/// B(g) = 2g + (sqrt(1+8g) - 1)/2; every formal L-space slope r > 0 of a
/// genus-g knot satisfies r > B(g).
class GenusSlopeBound {
 public:
  explicit GenusSlopeBound(BigInt genus);

  const BigInt& genus() const { return genus_; }
  const BigInt& radicand() const { return radicand_; }  // 1 + 8g
  bool is_integer() const { return root_ * root_ == radicand_; }
  /// Exact value when 1+8g is a perfect square; DomainError otherwise.
  BigInt integer_value() const;
  double approx() const;
  std::string str() const;

  /// Exact three-way comparison of B(g) against a rational.
  std::strong_ordering compare(const Rational& r) const;

 private:
  BigInt genus_;
  BigInt radicand_;
  BigInt root_;  // floor(sqrt(radicand))
};

GenusSlopeBound min_formal_slope_bound(const BigInt& genus);

/// Formal L-space slopes of a positive torus knot coincide with its
/// quasi-alternating slopes.
bool formal_slopes_torus(const TorusKnot& knot, const Slope& r);

/// JSON schema: [{"target": "p/q", "parents": [P, "p/q"], "rule": "IntegerStep"|"CFStep"}]
/// where P is "p/q" or {"lens_q": q, "lens_r": r}.
nlohmann::json derivation_to_json(const Derivation& derivation);
Derivation derivation_from_json(const nlohmann::json& j);

}  // namespace qaslopes
