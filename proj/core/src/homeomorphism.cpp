#include "rds/homeomorphism.hpp"

#include <cmath>

#include "rds/errors.hpp"

namespace rds {

UnitPoint::UnitPoint(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) throw DomainError("UnitPoint outside (0,1)");
}

double h_forward(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("h: argument outside (0,1)");
  // log(2x) and -log(2(1-x)) written to keep precision near 0 and 1
  if (x <= 0.5) return std::log(2.0 * x);
  return -std::log(2.0 * (1.0 - x));
}

double h_inverse(double y) {
  if (!std::isfinite(y)) throw DomainError("h_inverse: non-finite argument");
  if (y <= 0.0) return 0.5 * std::exp(y);
  return 1.0 - 0.5 * std::exp(-y);
}

double dh(double x, double y) { return std::fabs(h_forward(x) - h_forward(y)); }

double h_derivative(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("h': argument outside (0,1)");
  return x <= 0.5 ? 1.0 / x : 1.0 / (1.0 - x);
}

}  // namespace rds
