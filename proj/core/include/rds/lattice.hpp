#pragma once

#include <cstdint>

namespace rds {

/// Points origin + i * spacing, i in [0, size].
struct Lattice {
  double origin = 0.0;
  double spacing = 1.0;
  std::int64_t size = 0;
  int refine_factor = 2;
  /// Images within snap * spacing of a lattice point count as that point.
  double snap = 1e-6;

  [[nodiscard]] double position(std::int64_t i) const { return origin + static_cast<double>(i) * spacing; }
  /// Largest index whose point is <= y (up to snap).
  [[nodiscard]] std::int64_t down(double y) const;
  /// Smallest index whose point is >= y (up to snap).
  [[nodiscard]] std::int64_t up(double y) const;
  /// Same window, spacing divided by refine_factor; index i becomes i * refine_factor.
  [[nodiscard]] Lattice refined() const;
};

}  // namespace rds
