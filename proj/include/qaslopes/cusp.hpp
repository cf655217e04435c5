// Slope lengths on a cusp torus and the short-slope lists they bound.
//
// A cusp is given by the translations mu and lambda of the two basis curves
// in a Euclidean structure on the torus; slope p/q is the closed geodesic in
// the class p*mu + q*lambda. Nothing here computes hyperbolic structures.

#pragma once

#include <complex>
#include <vector>

#include "qaslopes/rational.hpp"

namespace qaslopes {

class CuspShape {
 public:
  /// Throws DomainError when mu and lambda are (numerically) parallel or
  /// not finite.
  CuspShape(std::complex<double> mu, std::complex<double> lambda);

  std::complex<double> mu() const { return mu_; }
  std::complex<double> lambda() const { return lambda_; }
  double area() const { return area_; }

 private:
  std::complex<double> mu_;
  std::complex<double> lambda_;
  double area_;
};

/// |p*mu + q*lambda|.
double raw_length(const CuspShape& cusp, const Slope& s);
/// |p*mu + q*lambda| / sqrt(area).
double normalized_length(const CuspShape& cusp, const Slope& s);

/// max(10.1, sqrt(2*pi/systole + 58)); throws DomainError unless systole > 0.
double fps_bound(double systole);

struct ShortSlope {
  Slope slope;
  double length;  // normalized, or raw for six_theorem_slopes
};

/// Canonical slopes with normalized length <= bound (closed ball, with a
/// 1e-9 relative allowance so nothing on the boundary is lost), sorted by
/// length, then |p|, then q, then p.
std::vector<ShortSlope> short_slopes(const CuspShape& cusp, double bound);

/// Slopes of raw length <= 6. When the cusp's area is below
/// area_lower_bound, lengths are first scaled by sqrt(area_lower_bound/area).
std::vector<ShortSlope> six_theorem_slopes(const CuspShape& cusp, double area_lower_bound = 1.0);

/// Exact translations with rational coordinates.
struct ExactCusp {
  Rational mu_re, mu_im, lambda_re, lambda_im;
};

/// Exact variant of short_slopes: normalized length squared compared with
/// bound_squared in rational arithmetic, no tolerance.
std::vector<Slope> short_slopes_exact(const ExactCusp& cusp, const Rational& bound_squared);

}  // namespace qaslopes
