#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "rds/conjugacy.hpp"
#include "rds/monotone_map.hpp"
#include "rds/random_system.hpp"

namespace rds::testing {

using Points = std::vector<std::pair<Rational, Rational>>;

/// n/d in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline MonotoneMap affine(const Points& pts) { return MonotoneMap::from_breakpoints(pts); }

/// Symmetric drift system: F0 through (0,-1/2), (2,1/2); F1(x) = -F0(-x); p = 1/2.
inline RandomSystem s_star() {
  return RandomSystem(affine({{0, Rational(-1, 2)}, {2, Rational(1, 2)}}),
                      affine({{-2, Rational(-1, 2)}, {0, Rational(1, 2)}}), Rational(1, 2));
}

// Independent oracles: direct formulas, no library code.
inline double h_oracle(double u) { return u <= 0.5 ? std::log(2 * u) : -std::log(2 * (1 - u)); }
inline double h_inverse_oracle(double y) { return y <= 0 ? std::exp(y) / 2 : 1 - std::exp(-y) / 2; }

inline double pl_eval(const std::vector<std::pair<double, double>>& pts, double u) {
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (u <= pts[k].first) {
      const auto& [u0, v0] = pts[k - 1];
      const auto& [u1, v1] = pts[k];
      return v0 + (v1 - v0) * (u - u0) / (u1 - u0);
    }
  }
  return pts.back().second;
}

inline double pl_inverse(const std::vector<std::pair<double, double>>& pts, double v) {
  std::vector<std::pair<double, double>> swapped;
  for (const auto& [a, b] : pts) swapped.emplace_back(b, a);
  return pl_eval(swapped, v);
}

/// Increasing piecewise-linear self-map of [0,1] with `inner` random breakpoints.
inline UnitPiecewiseLinear random_unit_map(std::mt19937_64& rng, int inner) {
  std::uniform_real_distribution<double> U(0.05, 0.95);
  std::vector<double> us, vs;
  for (int k = 0; k < inner; ++k) {
    us.push_back(U(rng));
    vs.push_back(U(rng));
  }
  std::sort(us.begin(), us.end());
  std::sort(vs.begin(), vs.end());
  UnitPiecewiseLinear f;
  f.points.emplace_back(0.0, 0.0);
  for (int k = 0; k < inner; ++k) f.points.emplace_back(us[k], vs[k]);
  f.points.emplace_back(1.0, 1.0);
  return f;
}

/// Random valid affine system with exact dyadic breakpoints: F0 below the
/// diagonal, F1 above, both Lyapunov exponents positive.
inline RandomSystem random_affine_system(std::mt19937_64& rng) {
  auto dyadic = [&](int lo, int hi) {  // uniform multiple of 1/16 in [lo/16, hi/16]
    return frac(std::uniform_int_distribution<int>(lo, hi)(rng), 16);
  };
  const Rational p = frac(std::uniform_int_distribution<int>(3, 7)(rng), 10);
  const int n = std::uniform_int_distribution<int>(2, 4)(rng);
  std::vector<Rational> xs;
  Rational x = dyadic(-48, -16);
  for (int k = 0; k < n; ++k) {
    xs.push_back(x);
    x += dyadic(18, 32);  // spacing above every drop difference
  }
  // drops d_k = x - F0(x): small on the left, large on the right
  std::vector<Rational> d0, d1;
  for (int k = 0; k < n; ++k) d0.push_back(k == 0 ? dyadic(4, 8) : k + 1 == n ? dyadic(14, 18) : dyadic(4, 18));
  const Rational ratio = p / (1 - p);
  const Rational e_first = ratio * d0.front() + dyadic(4, 8);
  Rational e_last = ratio * d0.back() - dyadic(2, 4);
  if (e_last < Rational(1, 16)) e_last = Rational(1, 16);
  for (int k = 0; k < n; ++k) {
    d1.push_back(k == 0 ? e_first : k + 1 == n ? e_last : dyadic(2, 16));
  }
  Points p0, p1;
  for (int k = 0; k < n; ++k) {
    p0.emplace_back(xs[k], xs[k] - d0[k]);
    p1.emplace_back(xs[k], xs[k] + d1[k]);
  }
  return RandomSystem(affine(p0), affine(p1), p);
}

}  // namespace rds::testing
