#include "rds/tail_certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rds/errors.hpp"
#include "rds/homeomorphism.hpp"

namespace rds {

double xi(double lambda0, double lambda1, double p, double alpha, double beta) {
  return (p + beta) * std::exp(-alpha * std::log(lambda0)) +
         (1 - (p + beta)) * std::exp(-alpha * std::log(lambda1));
}

double EndpointCertificate::bound(double x) const {
  if (!(x > 0)) return 0.0;
  return std::min(1.0, M * std::pow(x, alpha));
}

namespace {

// a0, a1: log endpoint derivatives of F0, F1; edge: real coordinate of the
// edge of the tail region, mapped to a unit distance from the endpoint.
EndpointCertificate endpoint(double a0, double a1, double p, double lambda, double edge_unit,
                             double edge_real) {
  if (!(lambda > 0)) throw DomainError("tail_certificate: Lyapunov exponent not positive");
  EndpointCertificate c;
  const double shrink = lambda / 4;
  c.lambda0 = std::exp(a0 - shrink);
  c.lambda1 = std::exp(a1 - shrink);
  // xi(., 0) is convex with xi(0) = 1 and slope -3/4 Lambda at 0
  const double l0 = std::log(c.lambda0), l1 = std::log(c.lambda1);
  auto f = [&](double a) { return xi(c.lambda0, c.lambda1, p, a); };
  double root = std::numeric_limits<double>::infinity();
  if (std::min(l0, l1) < 0) {
    double hi = 1.0;
    while (f(hi) < 1.0) hi *= 2;
    double lo = 0.0;
    for (int k = 0; k < 200; ++k) {
      double mid = 0.5 * (lo + hi);
      if (f(mid) < 1.0 || mid == 0.0) lo = mid;
      else hi = mid;
    }
    root = lo;
  }
  c.alpha = std::min(0.5 * root, 0.99);
  c.xi_value = f(c.alpha);
  c.x0 = edge_unit;
  c.y0 = edge_real;
  c.M = std::pow(c.x0, -c.alpha) * (1 + 1e-9);
  // ball radius: tails may move by less than (a_i - log lambda_i)/2 and p by less than delta
  const double slope = std::fabs(std::pow(c.lambda0, -c.alpha) - std::pow(c.lambda1, -c.alpha));
  const double delta = slope > 0 ? (1 - c.xi_value) / slope : std::numeric_limits<double>::infinity();
  c.radius = std::min(shrink / 2, delta);
  return c;
}

}  // namespace

double TailCertificate::mass_below(double y) const {
  return y <= 0 ? left.bound(h_inverse(y)) : 1.0;
}

double TailCertificate::mass_above(double y) const {
  return y >= 0 ? right.bound(1 - h_inverse(y)) : 1.0;
}

double TailCertificate::window_lo(double tau) const {
  // M (e^y / 2)^alpha = tau
  double y = std::log(2.0) + std::log(tau / left.M) / left.alpha;
  return std::min(y, left.y0);
}

double TailCertificate::window_hi(double tau) const {
  double y = -std::log(2.0) - std::log(tau / right.M) / right.alpha;
  return std::max(y, right.y0);
}

TailCertificate tail_certificate(const RandomSystem& s) {
  ValidityReport report = validate(s);
  const LyapunovReport& ly = report.lyapunov;
  // left edge: both maps are translations there and so are their inverses
  double y_left = 0.0;
  double y_right = 0.0;
  for (const MonotoneMap* m : {&s.f0, &s.f1}) {
    if (std::isfinite(m->x_lo())) {
      y_left = std::min({y_left, m->x_lo(), m->x_lo() + m->left_offset()});
    }
    if (std::isfinite(m->x_hi())) {
      y_right = std::max({y_right, m->x_hi(), m->x_hi() + m->right_offset()});
    }
  }
  TailCertificate c;
  c.left = endpoint(ly.f0_left, ly.f1_left, s.p, ly.lambda_minus, h_inverse(y_left), y_left);
  c.right = endpoint(-ly.f0_right, -ly.f1_right, s.p, ly.lambda_plus, 1 - h_inverse(y_right), y_right);
  c.M = std::max(c.left.M, c.right.M);
  c.alpha = std::min(c.left.alpha, c.right.alpha);
  c.x0 = std::min(c.left.x0, c.right.x0);
  c.radius = std::min(c.left.radius, c.right.radius);
  return c;
}

}  // namespace rds
