#include "rds/lattice.hpp"

#include <cmath>

namespace rds {

std::int64_t Lattice::down(double y) const {
  return static_cast<std::int64_t>(std::floor((y - origin) / spacing + snap));
}

std::int64_t Lattice::up(double y) const {
  return static_cast<std::int64_t>(std::ceil((y - origin) / spacing - snap));
}

Lattice Lattice::refined() const {
  Lattice l = *this;
  l.spacing = spacing / refine_factor;
  l.size = size * refine_factor;
  return l;
}

}  // namespace rds
