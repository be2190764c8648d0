#pragma once

#include <cstdint>
#include <vector>

#include "rds/qsqrt2.hpp"
#include "rds/random_system.hpp"

namespace rds {

struct MinimalOffsets {
  ExactOffset eta0;  // rational
  ExactOffset eta1;  // r != 0, so eta1 / eta0 is irrational
  Rational eps;      // effective budget
};

/// eta_i in (L_i - eps/2, L_i) for the left tail offsets L_i, with positive
/// drift p*eta0 + (1-p)*eta1 and an irrational ratio.
MinimalOffsets choose_offsets(const RandomSystem& system, const Rational& eps);

struct MinimalPerturbation {
  RandomSystem system;
  MinimalOffsets offsets;
  Rational R;   // G equals F on [-R, inf)
  Rational eps;
  SystemDistance distance;
};

/// G_i = x + eta_i left of -R - eps, affine connector on [-R - eps, -R], F_i on [-R, inf).
MinimalPerturbation perturb_minimal(const RandomSystem& system, const Rational& eps);

struct DensityReport {
  double window = 0.0;
  int cells = 0;
  std::vector<std::int64_t> hits;         // distinct orbit points found per cell
  std::vector<std::int64_t> word_length;  // shortest word found, -1 when unvisited
  std::int64_t steps = 0;                 // word steps examined
  bool conclusive = false;                // every cell visited
};

struct DensityOptions {
  std::int64_t horizon = 100000;  // word steps
  std::int64_t hit_cap = 16;
  int depth = 12;
};

/// Greedy word search from x0: descend with G0 into the translation regime,
/// move there through x0' + s*eta0 + t*eta1 (exact in Q(sqrt 2)) and climb into
/// each cell of [-K, K] with G1. Evidence for density, not a proof.
DensityReport density_diagnostic(const MinimalPerturbation& g, const Rational& x0, double K,
                                 int cells, const DensityOptions& options = {});

/// Same search for explicit translation offsets (for control systems with a rational ratio).
DensityReport density_diagnostic(const RandomSystem& system, const ExactOffset& eta0,
                                 const ExactOffset& eta1, const Rational& regime_top,
                                 const Rational& x0, double K, int cells,
                                 const DensityOptions& options = {});

}  // namespace rds
