#pragma once

#include <algorithm>

namespace rds {

/// Closed interval [lo, hi] of reals; used as a certified bracket.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] double mid() const { return lo + 0.5 * (hi - lo); }
  [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }

  static Interval point(double x) { return {x, x}; }
  static Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
  }
};

}  // namespace rds
