#include "rds/construct_minimal.hpp"

#include <algorithm>
#include <cmath>

#include "rds/errors.hpp"

namespace rds {

namespace {

Rational left_offset_exact(const MonotoneMap& m) {
  return m.exact_left_offset() ? *m.exact_left_offset() : exact(m.left_offset());
}

// Nonzero r with r*sqrt(2) in (lo, hi): r is mid/sqrt(2) truncated to the
// fewest decimal digits that land inside the window.
std::optional<Rational> sqrt2_multiple_in(const Rational& lo, const Rational& hi, const Rational& mid) {
  const double target = to_double(mid) / std::sqrt(2.0);
  BigInt p10(1);
  for (int d = 1; d <= 30; ++d) {
    p10 *= 10;
    const double scaled = std::trunc(target * p10.get_d());
    Rational r(BigInt(scaled), p10);
    r.canonicalize();
    if (r == 0) continue;
    QSqrt2 v(Rational(0), r);
    if (v > QSqrt2(lo) && v < QSqrt2(hi)) return r;
  }
  return std::nullopt;
}

}  // namespace

MinimalOffsets choose_offsets(const RandomSystem& system, const Rational& eps) {
  if (!(eps > 0)) throw DomainError("choose_offsets: eps must be positive");
  const Rational L0 = left_offset_exact(system.f0);
  const Rational L1 = left_offset_exact(system.f1);
  if (!(L0 < 0) || !(L1 > 0)) throw DomainError("choose_offsets: tails on the wrong side of the diagonal");
  const Rational p = system.p_exact ? *system.p_exact : exact(system.p);
  MinimalOffsets out;
  out.eps = eps >= L1 ? Rational(L1 / 2) : eps;
  const Rational& e = out.eps;
  // start at the window midpoints and slide toward the upper ends, where the drift is largest
  for (int k = 2; k <= 60; ++k) {
    const Rational step = e / pow2(k);
    const Rational eta0 = L0 - step;
    auto r = sqrt2_multiple_in(L1 - e / 2, L1, L1 - step);
    if (!r) continue;
    QSqrt2 eta1(Rational(0), *r);
    QSqrt2 drift = QSqrt2(p * eta0) + QSqrt2(1 - p) * eta1;
    if (drift.sign() > 0) {
      out.eta0 = QSqrt2(eta0);
      out.eta1 = eta1;
      return out;
    }
  }
  throw ConstructionError("choose_offsets: no offsets with positive drift inside the windows");
}

namespace {

MonotoneMap connect(const MonotoneMap& f, const QSqrt2& eta, const Rational& R, const Rational& e) {
  const Rational a = -R - e;
  const Rational ya = a + (eta.is_rational() ? eta.q : exact(eta.to_double()));
  std::vector<Segment> segs;
  const Rational fr = f.eval_exact(-R) ? *f.eval_exact(-R) : Rational(-R + exact(f.left_offset()));
  segs.emplace_back(AffineSegment{a, ya, -R, fr});
  if (!f.is_translation()) {
    const Segment& first = f.segments().front();
    Rational x_lo, y_lo;
    if (const auto* u = std::get_if<UnitAffineSegment>(&first)) {
      x_lo = exact(u->x0);
      y_lo = x_lo + exact(f.left_offset());
    } else if (const auto* s = std::get_if<AffineSegment>(&first)) {
      x_lo = s->x0;
      y_lo = s->y0;
    } else {
      const auto& t = std::get<TransportSegment>(first);
      x_lo = t.x0;
      y_lo = t.y0;
    }
    if (x_lo > -R) segs.emplace_back(AffineSegment{-R, fr, x_lo, y_lo});
    for (const Segment& s : f.segments()) segs.push_back(s);
  }
  return MonotoneMap::from_segments(std::move(segs));
}

}  // namespace

MinimalPerturbation perturb_minimal(const RandomSystem& system, const Rational& eps) {
  ValidityReport report = validate(system);
  if (!report.valid()) {
    throw DomainError("perturb: input system fails condition " + report.first_failure()->name);
  }
  if (system.f0.is_composite() || system.f1.is_composite()) {
    throw DomainError("perturb: composite maps are not supported");
  }
  MinimalPerturbation out;
  out.offsets = choose_offsets(system, eps);
  out.eps = eps;
  double reach = 1.0;
  for (const MonotoneMap* m : {&system.f0, &system.f1}) {
    if (std::isfinite(m->x_lo())) reach = std::max(reach, -m->x_lo());
  }
  out.R = Rational(static_cast<long>(std::ceil(reach)));
  std::string failure;
  for (int attempt = 0; attempt < 6; ++attempt, out.R *= 2) {
    MonotoneMap g0 = connect(system.f0, out.offsets.eta0, out.R, out.offsets.eps);
    MonotoneMap g1 = connect(system.f1, out.offsets.eta1, out.R, out.offsets.eps);
    out.system = system.p_exact ? RandomSystem(g0, g1, *system.p_exact) : RandomSystem(g0, g1, system.p);
    ValidityReport r = validate(out.system);
    if (!r.valid()) {
      failure = "validation failed at condition " + r.first_failure()->name;
      continue;
    }
    out.distance = system_distance(system, out.system, 2000);
    if (!(out.distance.d_m_upper < to_double(eps))) {
      failure = "closeness check failed: d_m upper bound " + std::to_string(out.distance.d_m_upper);
      continue;
    }
    return out;
  }
  throw ConstructionError("perturb_minimal: retries exhausted; last failure: " + failure);
}

DensityReport density_diagnostic(const RandomSystem& system, const ExactOffset& eta0,
                                 const ExactOffset& eta1, const Rational& regime_top,
                                 const Rational& x0, double K, int cells,
                                 const DensityOptions& options) {
  if (cells < 1 || !(K > 0)) throw DomainError("density_diagnostic: empty window");
  if (eta0.sign() >= 0 || eta1.sign() <= 0) throw DomainError("density_diagnostic: offsets on the wrong side");
  DensityReport rep;
  rep.window = K;
  rep.cells = cells;
  rep.hits.assign(static_cast<std::size_t>(cells), 0);
  rep.word_length.assign(static_cast<std::size_t>(cells), -1);
  const double width = 2 * K / cells;
  auto cell_of = [&](double x) -> int {
    if (!(x >= -K && x < K)) return -1;
    return std::min(cells - 1, static_cast<int>(std::floor((x + K) / width)));
  };
  {
    int c = cell_of(to_double(x0));
    if (c >= 0) {
      rep.hits[c] = 1;
      rep.word_length[c] = 0;
    }
  }
  // descend into the translation regime; G0 has rational data there so y stays rational
  QSqrt2 y(x0);
  std::int64_t descent = 0;
  while (y > QSqrt2(regime_top)) {
    auto next = system.f0.eval_exact(y.q);
    if (!next) throw DomainError("density_diagnostic: descent needs exact G0");
    y = QSqrt2(*next);
    if (++descent > options.horizon) {
      rep.steps = descent;
      return rep;
    }
  }
  rep.steps = descent;
  const double top = to_double(regime_top);
  const double e0 = eta0.to_double();
  const double e1 = eta1.to_double();
  const double yd = y.to_double();
  const std::int64_t per_cell = std::max<std::int64_t>(1, options.horizon / cells);
  for (int c = 0; c < cells; ++c) {
    const double ca = -K + c * width;
    const double cb = ca + width;
    // pull the cell back with G1 until it lies in the translation regime
    double a = ca, b = cb;
    std::int64_t climbs = 0;
    while (b > top && climbs < options.horizon) {
      a = system.f1.inverse_bracket(a, options.depth).hi;
      b = system.f1.inverse_bracket(b, options.depth).lo;
      ++climbs;
    }
    if (!(b > a) || b > top) continue;
    const Rational A = exact(a), B = exact(b);
    for (std::int64_t t = 0; t < per_cell && rep.hits[c] < options.hit_cap; ++t) {
      ++rep.steps;
      const double base = yd + static_cast<double>(t) * e1;
      const double sf = std::floor((base - a) / -e0);
      if (!(sf >= 0)) continue;
      const std::int64_t s = static_cast<std::int64_t>(sf);
      // exact membership of y + s*eta0 + t*eta1 in (a, b)
      QSqrt2 z = y + QSqrt2(Rational(static_cast<long>(s))) * eta0 +
                 QSqrt2(Rational(static_cast<long>(t))) * eta1;
      if (!(z > QSqrt2(A) && z < QSqrt2(B))) continue;
      double w = z.to_double();
      for (std::int64_t k = 0; k < climbs; ++k) w = system.f1.bracket(w, options.depth).mid();
      if (cell_of(w) != c) continue;
      ++rep.hits[c];
      const std::int64_t len = descent + s + t + climbs;
      if (rep.word_length[c] < 0 || len < rep.word_length[c]) rep.word_length[c] = len;
    }
  }
  rep.conclusive = std::all_of(rep.hits.begin(), rep.hits.end(), [](std::int64_t h) { return h > 0; });
  return rep;
}

DensityReport density_diagnostic(const MinimalPerturbation& g, const Rational& x0, double K,
                                 int cells, const DensityOptions& options) {
  return density_diagnostic(g.system, g.offsets.eta0, g.offsets.eta1, -g.R - g.offsets.eps, x0, K,
                            cells, options);
}

}  // namespace rds
