#include "rds/construct_cantor.hpp"

#include <algorithm>

#include "rds/cantor.hpp"
#include "rds/errors.hpp"

namespace rds {

Rational ConstructionParams::y_spacing() const { return 2 * R / pow2(M); }
Rational ConstructionParams::x_spacing() const { return 2 * R / pow2(M_prime); }
Rational ConstructionParams::y_level(std::int64_t i) const {
  return -R + y_spacing() * Rational(static_cast<long>(i));
}
Rational ConstructionParams::x_level(std::int64_t j) const {
  return -R + x_spacing() * Rational(static_cast<long>(j));
}
GridCantorSet ConstructionParams::grid_set() const { return GridCantorSet{x_spacing(), -R}; }

namespace {

const MonotoneMap& require_affine(const MonotoneMap& m) {
  if (!m.is_affine()) {
    throw DomainError("Cantor construction needs maps with exact affine segments");
  }
  return m;
}

Rational at(const MonotoneMap& m, const Rational& x) {
  auto y = m.eval_exact(x);
  if (!y) throw DomainError("exact evaluation unavailable");
  return *y;
}

// min |F(x) - x| over [-R, R]; F - id is affine between breakpoints
Rational diagonal_distance(const MonotoneMap& m, const Rational& R) {
  std::vector<Rational> xs{-R, R};
  if (!m.is_translation()) {
    for (const auto& [x, y] : m.exact_breakpoints()) {
      if (x > -R && x < R) xs.push_back(x);
    }
  }
  Rational best = abs(at(m, xs[0]) - xs[0]);
  for (const Rational& x : xs) best = std::min(best, Rational(abs(at(m, x) - x)));
  return best;
}

Rational lipschitz(const MonotoneMap& m) {
  Rational best(1);
  if (m.is_translation()) return best;
  auto bp = m.exact_breakpoints();
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    best = std::max(best, Rational((bp[k + 1].second - bp[k].second) / (bp[k + 1].first - bp[k].first)));
  }
  return best;
}

// x -> -F(-x)
MonotoneMap reflect(const MonotoneMap& m) {
  if (m.is_translation()) return MonotoneMap::translation(Rational(-*m.exact_left_offset()));
  auto bp = m.exact_breakpoints();
  std::vector<std::pair<Rational, Rational>> out;
  for (auto it = bp.rbegin(); it != bp.rend(); ++it) out.emplace_back(-it->first, -it->second);
  return MonotoneMap::from_breakpoints(out);
}

Rational ceil_div(const Rational& q) {
  BigInt f = floor_div(q);
  return Rational(f) == q ? Rational(f) : Rational(f + 1);
}

}  // namespace

ConstructionParams choose_levels(const MonotoneMap& f0, const MonotoneMap& f1, const Rational& R,
                                 const Rational& eps) {
  require_affine(f0);
  require_affine(f1);
  if (!(eps > 0)) throw DomainError("choose_levels: eps must be positive");
  const Rational d0 = diagonal_distance(f0, R);
  const Rational d1 = diagonal_distance(f1, R);
  const Rational g0 = abs(-R - at(f0, R));
  const Rational g1 = abs(R - at(f1, -R));
  ConstructionParams p;
  p.R = R;
  p.eps = eps;
  for (p.M = 1; p.M <= 60; ++p.M) {
    const Rational H = p.y_spacing();
    if (H < eps / 2 && H < d0 && H < d1 && H < g0 && H < g1) break;
  }
  if (p.M > 60) throw ConstructionError("choose_levels: no admissible M");
  const Rational lip = std::max(lipschitz(f0), lipschitz(f1));
  p.M_prime = p.M + 1;
  while (pow2(p.M_prime - p.M) <= lip) ++p.M_prime;
  return p;
}

ConstructionParams choose_params(const RandomSystem& system, const Rational& eps) {
  if (!(eps > 0)) throw DomainError("perturb: eps must be positive");
  ValidityReport report = validate(system);
  if (!report.valid()) {
    throw DomainError("perturb: input system fails condition " + report.first_failure()->name);
  }
  const MonotoneMap& f0 = require_affine(system.f0);
  const MonotoneMap& f1 = require_affine(system.f1);
  const Rational p = system.p_exact ? *system.p_exact : exact(system.p);
  const Rational lm = p * *f0.exact_left_offset() + (1 - p) * *f1.exact_left_offset();
  const Rational lp = -p * *f0.exact_right_offset() - (1 - p) * *f1.exact_right_offset();
  Rational e = std::min({eps, Rational(lm / 2), Rational(lp / 2)});

  Rational bound(0);
  for (const MonotoneMap* m : {&f0, &f1}) {
    if (m->is_translation()) continue;
    for (const auto& [x, y] : m->exact_breakpoints()) bound = std::max({bound, Rational(abs(x)), Rational(abs(y))});
  }
  bound = std::max({bound, Rational(-*f0.exact_right_offset() / 2), Rational(*f1.exact_left_offset() / 2)});
  Rational R(1, 2);
  while (!(R > bound)) R *= 2;
  return choose_levels(f0, f1, R, e);
}

BoxChain build_boxes(const MonotoneMap& map, const ConstructionParams& params, bool below) {
  const MonotoneMap f = below ? require_affine(map) : reflect(require_affine(map));
  const MonotoneMap finv = f.inverse();
  const std::int64_t top_i = std::int64_t{1} << params.M;
  const std::int64_t top_j = std::int64_t{1} << params.M_prime;
  const Rational H = params.y_spacing();
  const Rational h = params.x_spacing();

  std::vector<Box> boxes;
  std::int64_t j = top_j;
  Rational rx = params.x_level(j);
  std::int64_t i = std::clamp<std::int64_t>(to_int64(floor_div((at(f, rx) + params.R) / H)), 0, top_i);
  if (i < 1) throw ConstructionError("build_boxes: F(R) lies below the lowest level");
  Rational ry = params.y_level(i);
  while (true) {
    const Rational ly = params.y_level(i - 1);
    const Rational xstar = at(finv, ly);
    j = std::max<std::int64_t>(0, to_int64(floor_div(ceil_div((xstar + params.R) / h))));
    if (j > top_j) throw ConstructionError("build_boxes: no grid point reaches level " + std::to_string(i - 1));
    if (j == 0 && i > 1) {
      throw ConstructionError("build_boxes: left grid end reached at level " + std::to_string(i - 1));
    }
    const Rational lx = params.x_level(j);
    if (!(lx < rx)) throw ConstructionError("build_boxes: zero-width box at level " + std::to_string(i));
    boxes.push_back({lx, rx, ly, ry});
    if (i == 1) break;
    --i;
    rx = lx;
    ry = ly;
  }
  std::reverse(boxes.begin(), boxes.end());
  if (!below) {
    for (Box& b : boxes) b = Box{-b.rx, -b.lx, -b.ry, -b.ly};
    std::reverse(boxes.begin(), boxes.end());
  }
  BoxChain chain;
  chain.boxes = std::move(boxes);
  chain.Lx = chain.boxes.front().lx;
  chain.Ly = chain.boxes.front().ly;
  chain.Rx = chain.boxes.back().rx;
  chain.Ry = chain.boxes.back().ry;
  return chain;
}

MonotoneMap threaded_map(const BoxChain& chain, const ConstructionParams& params) {
  const GridCantorSet s = params.grid_set();
  std::vector<Segment> segs;
  for (const Box& b : chain.boxes) {
    CantorBlock x{to_int64(floor_div((b.lx - s.origin) / s.cell_width)),
                  to_int64(floor_div((b.rx - b.lx) / s.cell_width))};
    CantorBlock y{to_int64(floor_div((b.ly - s.origin) / s.cell_width)),
                  to_int64(floor_div((b.ry - b.ly) / s.cell_width))};
    segs.emplace_back(transport_segment(s, x, s, y));
  }
  return MonotoneMap::from_segments(std::move(segs));
}

CantorPerturbation perturb_cantor(const RandomSystem& system, const Rational& eps,
                                  const CantorOptions& options) {
  ConstructionParams params = choose_params(system, eps);
  std::string last_error;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    try {
      CantorPerturbation out;
      out.params = params;
      out.set = params.grid_set();
      out.chain0 = build_boxes(system.f0, params, true);
      out.chain1 = build_boxes(system.f1, params, false);
      MonotoneMap g0 = threaded_map(out.chain0, params);
      MonotoneMap g1 = threaded_map(out.chain1, params);
      out.system = system.p_exact ? RandomSystem(g0, g1, *system.p_exact) : RandomSystem(g0, g1, system.p);
      ValidityReport report = validate(out.system);
      if (!report.valid()) {
        throw ConstructionError("validation of the perturbed system failed at condition " +
                                report.first_failure()->name);
      }
      out.distance = system_distance(system, out.system, 2000, options.sup);
      if (!(out.distance.d_m_upper < to_double(eps))) {
        throw ConstructionError("closeness check failed: d_m upper bound " +
                                std::to_string(out.distance.d_m_upper));
      }
      out.retries = attempt;
      return out;
    } catch (const ConstructionError& e) {
      last_error = e.what();
      ++params.M;
      ++params.M_prime;
    }
  }
  throw ConstructionError("perturb_cantor: retries exhausted; last failure: " + last_error);
}

}  // namespace rds
