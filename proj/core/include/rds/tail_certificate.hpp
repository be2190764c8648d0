#pragma once

#include "rds/random_system.hpp"

namespace rds {

/// xi(alpha, beta) = (p + beta) lambda0^-alpha + (1 - p - beta) lambda1^-alpha.
double xi(double lambda0, double lambda1, double p, double alpha, double beta = 0.0);

/// Tail bound at one endpoint: mu((0, x)) <= M x^alpha in unit coordinates
/// (mirrored at 1), valid for every stationary measure of a system within
/// `radius` of the certified one.
struct EndpointCertificate {
  double lambda0 = 0.0, lambda1 = 0.0;  // below the endpoint derivatives
  double alpha = 0.0;
  double M = 0.0;
  double x0 = 0.0;      // unit-coordinate distance to the endpoint where the bounds start
  double y0 = 0.0;      // the same edge in real coordinates
  double radius = 0.0;  // ball radius epsilon
  double xi_value = 0.0;

  /// Bound on mu((0, x)) (left) or mu((1 - x, 1)) (right).
  [[nodiscard]] double bound(double x) const;
};

struct TailCertificate {
  EndpointCertificate left;   // near 0, real -inf
  EndpointCertificate right;  // near 1, real +inf
  // combined view: one (M, alpha, x0) valid at both ends
  double M = 0.0;
  double alpha = 0.0;
  double x0 = 0.0;
  double radius = 0.0;

  /// Certified mu((-inf, y)) for real y.
  [[nodiscard]] double mass_below(double y) const;
  /// Certified mu((y, inf)).
  [[nodiscard]] double mass_above(double y) const;
  /// Real window edge with mass_below(w) <= tau (and mirrored).
  [[nodiscard]] double window_lo(double tau) const;
  [[nodiscard]] double window_hi(double tau) const;
};

/// Follows the invariance argument for N_{M,alpha}: lambda_i = f_i'(0) e^{-Lambda/4},
/// alpha half the positive root of xi(., 0) = 1 (capped at 0.99), x0 = h^-1(y0)
/// where y0 is below every breakpoint and its image, M slightly above x0^-alpha.
TailCertificate tail_certificate(const RandomSystem& system);

}  // namespace rds
