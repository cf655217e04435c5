// Exact slope arithmetic and negative continued fractions.
//
// Every quantity here is an arbitrary-precision integer or rational. A Slope
// is a reduced pair p/q in canonical form (q > 0, or exactly 1/0).

#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qaslopes {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt ceil(const Rational& r);
BigInt floor(const Rational& r);
std::string to_string(const Rational& r);

class Slope {
 public:
  /// Reduces and canonicalizes; throws DomainError for 0/0.
  Slope(BigInt p, BigInt q);
  Slope(long long p, long long q) : Slope(BigInt(p), BigInt(q)) {}
  explicit Slope(const Rational& r);

  static Slope integer(const BigInt& n) { return Slope(n, BigInt(1)); }
  static Slope meridian() { return Slope(BigInt(1), BigInt(0)); }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }

  bool is_meridian() const { return q_ == 0; }
  bool is_integer() const { return q_ == 1; }

  /// Exact value; throws DomainError for 1/0.
  Rational value() const;

  std::string str() const;

  friend bool operator==(const Slope&, const Slope&) = default;
  /// Orders by value, with 1/0 above every finite slope.
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);

 private:
  BigInt p_;
  BigInt q_;
};

std::ostream& operator<<(std::ostream& os, const Slope& s);

/// Parses "p/q", "n", or the pair alias "(p,q)".
Slope parse_slope(std::string_view text);

/// Compares a finite slope with a rational; 1/0 compares greater.
std::strong_ordering compare(const Slope& s, const Rational& r);

/// |p1*q2 - p2*q1|, the geometric intersection number of the two curves.
BigInt distance(const Slope& a, const Slope& b);

/// Negative continued fraction [a1, ..., al]^- = a1 - 1/(a2 - 1/(... - 1/al)).
struct NegCF {
  std::vector<BigInt> coeffs;

  std::size_t length() const { return coeffs.size(); }
  std::string str() const;
  friend bool operator==(const NegCF&, const NegCF&) = default;
};

/// Unique expansion with every coefficient >= 2; requires r > 1 finite.
NegCF neg_cf_expand(const Slope& r);

/// Evaluates right to left. Coefficients must be >= 2 except that the last one
/// may be 1 (the form produced by decrementing a trailing 2).
Slope neg_cf_eval(const NegCF& cf);

/// Rewrites [a1,...,a_l',2,...,2,1] as [a1,...,a_l'-1]. Inputs without a
/// trailing 1 are returned unchanged. An all-2s prefix collapses to [1].
NegCF collapse_trailing_one(NegCF cf);

/// The two slopes that sit in a surgery triad with r: the truncation
/// [a1..a_{l-1}] and the decrement [a1..a_l - 1] (collapsed). Requires a
/// non-integer r > 1. The pair satisfies p = p0 + p1 and q = q0 + q1.
std::pair<Slope, Slope> triad_partners(const Slope& r);

}  // namespace qaslopes
