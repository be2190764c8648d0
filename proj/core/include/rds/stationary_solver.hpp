#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rds/cantor_set.hpp"
#include "rds/lattice.hpp"
#include "rds/measure.hpp"
#include "rds/random_system.hpp"
#include "rds/tail_certificate.hpp"

namespace rds {

/// Atomic measure on lattice indices plus masses at -inf and +inf.
struct LatticeChain {
  std::vector<std::int64_t> index;  // strictly increasing
  std::vector<double> weight;
  double minus_inf = 0.0;
  double plus_inf = 0.0;

  [[nodiscard]] double total_mass() const;
  [[nodiscard]] Staircase staircase(const Lattice& lattice) const;
};

struct SolverOptions {
  double tol = 0.005;
  std::optional<double> tail_mass;  // per side; default tol / 8
  std::optional<Lattice> lattice;   // default: about `points` cells across the window
  std::int64_t points = 8192;
  std::optional<GridCantorSet> cantor_set;  // align the lattice with this set
  int cantor_digits = 5;
  int depth = 12;                   // transport refinement depth
  std::int64_t max_iterations = 20000;
  int stall_window = 50;
  int max_refinements = 6;
};

/// Lower and upper CDF staircases bracketing the stationary measure.
struct CdfEnvelope {
  Staircase lower;  // from the stochastically largest chain
  Staircase upper;  // from the stochastically smallest chain
  LatticeChain small_chain;
  LatticeChain large_chain;
  Lattice lattice;
  TailCertificate certificate;
  double tail_mass_lo = 0.0, tail_mass_hi = 0.0;
  double w_lo = 0.0, w_hi = 0.0;
  double gap = 1.0;
  std::int64_t iterations = 0;
  int refinements = 0;
  int depth = 0;
  bool converged = false;
  double max_atom_weight = 0.0;

  /// Midpoint CDF.
  [[nodiscard]] double mid(double x) const { return 0.5 * (lower.value(x) + upper.value(x)); }
};

/// Two bracketing chains started from the window edges. Images are rounded
/// down (small chain) or up (large chain) to the lattice, so the small chain
/// stays below the stationary measure and the large chain above it in
/// stochastic order at every step.
class StationarySolver {
 public:
  StationarySolver(const RandomSystem& system, const SolverOptions& options);

  void step();
  /// sup |upper - lower|.
  [[nodiscard]] double gap() const;
  /// Divides the lattice spacing by its refine factor and deepens transport evaluation.
  void refine();
  [[nodiscard]] CdfEnvelope envelope() const;
  [[nodiscard]] const Lattice& lattice() const { return lattice_; }
  [[nodiscard]] const LatticeChain& small_chain() const { return small_; }
  [[nodiscard]] const LatticeChain& large_chain() const { return large_; }

 private:
  void advance(LatticeChain& chain, bool small) const;

  RandomSystem system_;
  SolverOptions options_;
  TailCertificate certificate_;
  double tau_lo_ = 0.0, tau_hi_ = 0.0;
  bool track_digits_ = false;
  double w_lo_ = 0.0, w_hi_ = 0.0;
  Lattice lattice_;
  LatticeChain small_, large_;
  int depth_ = 0;
  int refinements_ = 0;
  std::int64_t iterations_ = 0;
};

/// Runs the chains until gap + 2 tail_mass <= tol, refining the lattice when
/// the gap stalls; flags the result inconclusive at the iteration cap.
CdfEnvelope stationary_solve(const RandomSystem& system, const SolverOptions& options = {});

/// Lattice aligned with a grid Cantor set: origin on a cell boundary and
/// spacing cell_width / 3^digits, so rounding keeps atoms in the closed cover.
Lattice cantor_lattice(const GridCantorSet& set, double w_lo, double w_hi, int digits);

}  // namespace rds
