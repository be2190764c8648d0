#pragma once

#include <vector>

#include "rds/cantor_set.hpp"
#include "rds/random_system.hpp"
#include "rds/rational.hpp"

namespace rds {

/// Grid parameters: y levels y_i = -R + i*2R/2^M, x levels x_j = -R + j*2R/2^M'.
struct ConstructionParams {
  Rational R;
  int M = 1;
  int M_prime = 2;
  Rational eps;  // effective budget after shrinking below the Lyapunov exponents

  [[nodiscard]] Rational y_spacing() const;
  [[nodiscard]] Rational x_spacing() const;
  [[nodiscard]] Rational y_level(std::int64_t i) const;
  [[nodiscard]] Rational x_level(std::int64_t j) const;
  [[nodiscard]] GridCantorSet grid_set() const;
};

/// B = [lx, rx] x [ly, ry].
struct Box {
  Rational lx, rx, ly, ry;
};

/// Linked boxes in increasing x order, with entry (Lx, Ly) and exit (Rx, Ry).
struct BoxChain {
  std::vector<Box> boxes;
  Rational Lx, Ly, Rx, Ry;
};

/// Smallest admissible levels for fixed R: M with 2R/2^M below eps/2, below the
/// distance of each map to the diagonal on [-R, R] and below the gaps
/// |-R - F0(R)|, |R - F1(-R)|; then the least M' > M with 2^(M'-M) above the
/// Lipschitz constants. Maps must be affine.
ConstructionParams choose_levels(const MonotoneMap& f0, const MonotoneMap& f1, const Rational& R,
                                 const Rational& eps);

/// Shrinks eps below the Lyapunov exponents, picks R (a power of two beyond
/// every breakpoint and with F0(R) > -R, F1(-R) < R), then the levels.
ConstructionParams choose_params(const RandomSystem& system, const Rational& eps);

/// The linked-boxes loop: right to left for a map below the diagonal, mirrored
/// through the origin for a map above it.
BoxChain build_boxes(const MonotoneMap& map, const ConstructionParams& params, bool below);

/// G_i threaded through the boxes of its chain by Cantor transport, with tails
/// x + (Ly - Lx) and x + (Ry - Rx).
MonotoneMap threaded_map(const BoxChain& chain, const ConstructionParams& params);

struct CantorPerturbation {
  RandomSystem system;
  GridCantorSet set;
  ConstructionParams params;
  BoxChain chain0;
  BoxChain chain1;
  SystemDistance distance;
  int retries = 0;
};

struct CantorOptions {
  int max_retries = 8;
  SupOptions sup{6, 1e-4, 20000};
};

/// Perturbed system whose stationary measure lives on the grid Cantor set S.
/// Retries with M+1, M'+1 when a verification step fails.
CantorPerturbation perturb_cantor(const RandomSystem& system, const Rational& eps,
                                  const CantorOptions& options = {});

}  // namespace rds
