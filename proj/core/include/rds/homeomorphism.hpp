#pragma once

namespace rds {

/// A point of the open unit interval.
class UnitPoint {
 public:
  explicit UnitPoint(double value);
  [[nodiscard]] double value() const { return value_; }

 private:
  double value_;
};

/// h(x) = log x - log 1/2 for x <= 1/2 and log 1/2 - log(1 - x) for x >= 1/2.
double h_forward(double x);
inline double h_forward(UnitPoint x) { return h_forward(x.value()); }

/// Inverse of h; total on finite reals.
double h_inverse(double y);

/// d_h(x, y) = |h(x) - h(y)|.
double dh(double x, double y);

/// Derivative of h.
double h_derivative(double x);

}  // namespace rds
