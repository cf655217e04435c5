// Independent brute-force reference implementations used by the tests, the
// acceptance suite and the CLI sweeps. Deliberately naive.

#pragma once

#include <complex>
#include <set>
#include <vector>

#include "qaslopes/link_diagram.hpp"

namespace qaslopes::oracle {

/// |<D>| at A = exp(i*pi/4). The loop value -A^2 - A^-2 vanishes there, so
/// only states with a single loop contribute. Up to 24 crossings.
BigInt bracket_determinant(const PDCode& pd);

/// Least set of slopes containing `seeds` and closed under s -> s + 1 and
/// (s0, s1 at distance one) -> mediant, restricted to positive slopes with
/// denominator <= max_q and value <= max_value.
std::set<Slope> triad_closure(const std::vector<Slope>& seeds, long long max_q, long long max_value);

/// Canonical slopes with |p*mu + q*lambda| / sqrt(area) <= bound*(1 + 1e-9),
/// scanning the rectangle |p|, |q| <= ceil(bound*(|mu| + |lambda|)/sqrt(area)).
std::set<std::pair<long long, long long>> rectangle_short_slopes(std::complex<double> mu, std::complex<double> lambda,
                                                                 double bound);

}  // namespace qaslopes::oracle
