#pragma once

#include <cstdint>
#include <vector>

#include "rds/measure.hpp"
#include "rds/random_system.hpp"

namespace rds {

/// Counter-based generator: each draw is a pure function of (seed, stream, step).
std::uint64_t counter_random(std::uint64_t seed, std::uint64_t stream, std::uint64_t step);
/// Uniform in [0, 1) from the same counter.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t step);

struct MonteCarloOptions {
  std::int64_t n_samples = 1000000;
  std::int64_t burn_in = 1000;
  std::uint64_t seed = 1;
  std::int64_t streams = 1000;
  double start = 0.0;
  int depth = 12;    // transport refinement depth for evaluation
  int threads = 0;   // 0: hardware concurrency
};

/// Empirical distribution of the chain after burn-in, pooled over streams.
AtomicMeasure monte_carlo_cdf(const RandomSystem& system, const MonteCarloOptions& options);
AtomicMeasure monte_carlo_cdf(const RandomSystem& system, std::int64_t n_samples,
                              std::int64_t burn_in, std::uint64_t seed);

struct OrbitPoint {
  std::int64_t step;
  int symbol;
  double x;
};

/// One trajectory x_{k+1} = F_{i_k}(x_k) on stream 0.
std::vector<OrbitPoint> sample_orbit(const RandomSystem& system, double start, std::int64_t steps,
                                     std::uint64_t seed, int depth = 12);

}  // namespace rds
