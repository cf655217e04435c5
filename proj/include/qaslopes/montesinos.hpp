// Montesinos links M(e; alpha_1/beta_1, ..., alpha_n/beta_n), their standard
// form, the quasi-alternating criterion for standard-form links, and the
// dictionary from small Seifert fibered spaces to Montesinos branch sets.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qaslopes/rational.hpp"
#include "qaslopes/torus.hpp"

namespace qaslopes {

/// Rational tangle alpha/beta with alpha >= 2, gcd(alpha, beta) = 1, beta != 0.
struct Tangle {
  BigInt alpha;
  BigInt beta;
  friend bool operator==(const Tangle&, const Tangle&) = default;
};

class MontesinosLink {
 public:
  MontesinosLink(BigInt e, std::vector<Tangle> tangles);

  const BigInt& e() const { return e_; }
  const std::vector<Tangle>& tangles() const { return tangles_; }

  /// Every tangle fraction alpha/beta exceeds 1, i.e. 0 < beta < alpha.
  bool is_standard_form() const;

  /// e - sum beta_i/alpha_i, invariant under normalization.
  Rational euler_number() const;

  std::string str() const;

  friend bool operator==(const MontesinosLink&, const MontesinosLink&) = default;

 private:
  BigInt e_;
  std::vector<Tangle> tangles_;
};

/// SFS[S2:(alpha_i,beta_i)...] is the double branched cover of M(0; alpha_i/beta_i, ...).
MontesinosLink sfs_to_montesinos(const std::vector<Fiber>& fibers);

/// Moves every beta_i into (0, alpha_i), trading whole multiples of alpha_i
/// against the central weight e.
MontesinosLink normalize(const MontesinosLink& link);

/// Quasi-alternating criterion for standard-form inputs; DomainError otherwise.
/// Links with at most two tangles are 2-bridge and return true.
bool issa_qa(const MontesinosLink& link);

/// The classification routed through Seifert invariants: slopes >= ab-1 are
/// QA, slopes below 2g-1 are not L-space slopes, and everything between goes
/// through Moser's fibers, the Montesinos dictionary and the criterion above.
bool qa_slope_via_pipeline(const TorusKnot& knot, const Slope& r);

/// Parses "SFS[S2:(a1,b1)(a2,b2)...]" (spaces allowed, as printed in census
/// tables) into its fibers.
std::vector<Fiber> parse_sfs(std::string_view text);

/// Parses "M(e; a1/b1, a2/b2, ...)".
MontesinosLink parse_montesinos(std::string_view text);

/// Either syntax above; an SFS is mapped through sfs_to_montesinos.
MontesinosLink parse_montesinos_spec(std::string_view text);

}  // namespace qaslopes
