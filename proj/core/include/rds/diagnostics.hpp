#pragma once

#include <optional>
#include <vector>

#include "rds/cantor_set.hpp"
#include "rds/interval.hpp"
#include "rds/rational.hpp"
#include "rds/stationary_solver.hpp"

namespace rds {

struct CoverMass {
  int depth = 0;
  std::int64_t cells = 0;        // cells of S spanned by the window
  Rational window_length;        // cells * cell_width
  Rational cover_length;         // window_length * (2/3)^depth
  double length_factor = 1.0;
  double chain_mass = 0.0;       // least mass either chain puts on the cover
  double interval_bound = 0.0;   // mass bound from the CDF envelope alone
};

/// Mass of the generation-`depth` closed cover of S over the cells meeting
/// `window` (default: the solver window). The lattice must be triadic.
CoverMass cover_mass(const CdfEnvelope& env, const GridCantorSet& set, int depth,
                     std::optional<Interval> window = std::nullopt);

struct CellMass {
  double lo = 0.0, hi = 0.0;
  double lower = 0.0;  // bound for mu((lo, hi])
  double upper = 0.0;  // bound for mu([lo, hi])
};

/// Envelope bounds on the mass of n equal cells of the window.
std::vector<CellMass> support_grid_mass(const CdfEnvelope& env, const Interval& window, int cells);

}  // namespace rds
