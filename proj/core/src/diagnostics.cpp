#include "rds/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "rds/errors.hpp"

namespace rds {

namespace {

// Number of triadic digits resolved by the lattice inside one cell of S.
int lattice_digits(const Lattice& lattice, double cell_width) {
  const double ratio = cell_width / lattice.spacing;
  const auto per_cell = static_cast<std::int64_t>(std::llround(ratio));
  int d = 0;
  for (std::int64_t p = 1; p <= per_cell; p *= 3, ++d) {
    if (p == per_cell) return d;
  }
  throw DomainError("cover_mass: lattice is not triadic for this set");
}

}  // namespace

CoverMass cover_mass(const CdfEnvelope& env, const GridCantorSet& set, int depth,
                     std::optional<Interval> window) {
  if (depth < 0) throw DomainError("cover_mass: depth must be nonnegative");
  const double h = to_double(set.cell_width);
  const double o = to_double(set.origin);
  const Interval w = window.value_or(Interval{env.w_lo, env.w_hi});
  const auto first = static_cast<std::int64_t>(std::floor((w.lo - o) / h + 1e-9));
  const auto last = static_cast<std::int64_t>(std::ceil((w.hi - o) / h - 1e-9));

  CoverMass r;
  r.depth = depth;
  r.cells = last - first;
  r.window_length = set.cell_width * r.cells;
  Rational factor = 1;
  for (int k = 0; k < depth; ++k) factor *= Rational(2, 3);
  r.cover_length = r.window_length * factor;
  r.length_factor = to_double(factor);

  const int digits = lattice_digits(env.lattice, h);
  if (depth > digits) throw DomainError("cover_mass: depth exceeds the lattice resolution");
  const std::int64_t per_cell = pow3(digits);
  // lattice index of the left end of cell `first`
  const auto shift = static_cast<std::int64_t>(std::llround((o + static_cast<double>(first) * h - env.lattice.origin) /
                                                            env.lattice.spacing));
  const std::int64_t span = r.cells * per_cell;

  auto chain_mass = [&](const LatticeChain& c) {
    double m = 0.0;
    for (std::size_t k = 0; k < c.index.size(); ++k) {
      const std::int64_t i = c.index[k] - shift;
      if (i < 0 || i > span) continue;
      std::int64_t t = i % per_cell;
      if (t == 0 && i > 0 && i == span) t = per_cell;
      if (in_level_cover(t, digits, depth)) m += c.weight[k];
    }
    return m;
  };
  r.chain_mass = std::min(chain_mass(env.small_chain), chain_mass(env.large_chain));

  // closed intervals of the cover, touching ones merged; each contributes lower(b) - upper(a-)
  double bound = 0.0;
  if (depth <= 20) {
    const std::int64_t pieces = std::int64_t{1} << depth;
    const std::int64_t step = pow3(digits - depth);
    std::int64_t run_lo = -1, run_hi = -1;  // lattice indices relative to `shift`
    auto flush = [&] {
      if (run_lo < 0) return;
      const double a = env.lattice.position(shift + run_lo);
      const double b = env.lattice.position(shift + run_hi);
      bound += std::max(0.0, env.lower.value(b) - env.upper.left_limit(a));
    };
    for (std::int64_t c = 0; c < r.cells; ++c) {
      for (std::int64_t k = 0; k < pieces; ++k) {
        // binary digits of k, read as ternary digits 0/2, give the left end
        std::int64_t t = 0, p = pow3(depth - 1 < 0 ? 0 : depth - 1), kk = k;
        for (int j = 0; j < depth; ++j, p /= 3) {
          if ((kk >> (depth - 1 - j)) & 1) t += 2 * p;
        }
        const std::int64_t a = c * per_cell + t * step;
        const std::int64_t b = a + step;
        if (a == run_hi) {
          run_hi = b;
        } else {
          flush();
          run_lo = a;
          run_hi = b;
        }
      }
    }
    flush();
  }
  r.interval_bound = bound;
  return r;
}

std::vector<CellMass> support_grid_mass(const CdfEnvelope& env, const Interval& window, int cells) {
  if (cells <= 0 || !(window.hi > window.lo)) throw DomainError("support_grid_mass: empty grid");
  std::vector<CellMass> out;
  out.reserve(static_cast<std::size_t>(cells));
  const double w = (window.hi - window.lo) / cells;
  for (int k = 0; k < cells; ++k) {
    CellMass m;
    m.lo = window.lo + w * k;
    m.hi = k + 1 == cells ? window.hi : window.lo + w * (k + 1);
    m.lower = std::max(0.0, env.lower.value(m.hi) - env.upper.value(m.lo));
    m.upper = std::min(1.0, env.upper.value(m.hi) - env.lower.left_limit(m.lo));
    out.push_back(m);
  }
  return out;
}

}  // namespace rds
