#include "rds/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rds/errors.hpp"

namespace rds {

void UnitPiecewiseLinear::check() const {
  if (points.size() < 2) throw InvalidMapError("unit map needs at least two points");
  if (points.front() != std::pair<double, double>{0.0, 0.0} ||
      points.back() != std::pair<double, double>{1.0, 1.0}) {
    throw InvalidMapError("unit map must fix 0 and 1");
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto& [u0, v0] = points[i];
    const auto& [u1, v1] = points[i + 1];
    if (!(u1 > u0)) throw InvalidMapError("unit map breakpoints must increase");
    if (!(v1 > v0)) {
      throw InvalidMapError("unit map slope on piece " + std::to_string(i) + " is not positive");
    }
    if (!std::isfinite((v1 - v0) / (u1 - u0))) {
      throw InvalidMapError("unit map slope on piece " + std::to_string(i) + " is infinite");
    }
  }
}

double UnitPiecewiseLinear::operator()(double u) const {
  if (u <= points.front().first) return points.front().second;
  if (u >= points.back().first) return points.back().second;
  auto it = std::upper_bound(points.begin(), points.end(), u,
                             [](double v, const std::pair<double, double>& p) { return v < p.first; });
  const auto& [u1, v1] = *it;
  const auto& [u0, v0] = *std::prev(it);
  return v0 + (u - u0) * (v1 - v0) / (u1 - u0);
}

MonotoneMap transport_map(const UnitPiecewiseLinear& f) {
  f.check();
  const auto& pts = f.points;
  const std::size_t n = pts.size() - 1;  // pieces
  auto slope = [&pts](std::size_t i) {
    return (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
  };
  const double s0 = slope(0);
  const double s1 = slope(n - 1);
  // tails: u and f(u) on the same side of 1/2 and f linear through the endpoint
  const double ut = std::min({pts[1].first, 0.5, 0.5 / s0});
  const double ur = std::max({pts[n - 1].first, 0.5, 1.0 - 0.5 / s1});
  if (!(ut < ur)) {
    // f is the identity near 1/2 with equal germs
    return MonotoneMap::translation(std::log(s0));
  }
  std::vector<double> cuts{ut};
  for (std::size_t i = 1; i < n; ++i) {
    if (pts[i].first > ut && pts[i].first < ur) cuts.push_back(pts[i].first);
  }
  cuts.push_back(ur);
  std::vector<Segment> segs;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double ua = cuts[k];
    const double ub = cuts[k + 1];
    const double mid = 0.5 * (ua + ub);
    auto it = std::upper_bound(pts.begin(), pts.end(), mid,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    const std::size_t i = static_cast<std::size_t>(it - pts.begin()) - 1;
    const double s = slope(i);
    const double va = pts[i].second + (ua - pts[i].first) * s;
    const double vb = pts[i].second + (ub - pts[i].first) * s;
    UnitAffineSegment seg{h_forward(ua), h_forward(va), h_forward(ub), h_forward(vb), ua, va, s};
    segs.emplace_back(seg);
  }
  return MonotoneMap::from_segments(std::move(segs));
}

double UnitMap::operator()(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return h_inverse(map_.bracket(h_forward(u), depth_).mid());
}

UnitMap inverse_transport(const MonotoneMap& map, int depth) { return UnitMap(map, depth); }

std::optional<UnitPiecewiseLinear> unit_form(const MonotoneMap& map) {
  if (!map.is_unit_affine() || map.is_translation()) return std::nullopt;
  const double xl = map.x_lo();
  const double xr = map.x_hi();
  if (xl > 0 || xl + map.left_offset() > 0 || xr < 0 || xr + map.right_offset() < 0) {
    return std::nullopt;
  }
  UnitPiecewiseLinear f;
  f.points.emplace_back(0.0, 0.0);
  for (const Segment& s : map.segments()) {
    const auto& u = std::get<UnitAffineSegment>(s);
    f.points.emplace_back(h_inverse(u.x0), u.v0 + u.slope * (h_inverse(u.x0) - u.u0));
  }
  const auto& last = std::get<UnitAffineSegment>(map.segments().back());
  f.points.emplace_back(h_inverse(last.x1), last.v0 + last.slope * (h_inverse(last.x1) - last.u0));
  f.points.emplace_back(1.0, 1.0);
  return f;
}

AtomicMeasure pushforward_to_real(const AtomicMeasure& unit_measure) {
  std::vector<Atom> out;
  for (const Atom& a : unit_measure.atoms()) out.push_back({h_forward(a.x), a.w});
  return AtomicMeasure(std::move(out));
}

AtomicMeasure pushforward_to_unit(const AtomicMeasure& real_measure) {
  std::vector<Atom> out;
  for (const Atom& a : real_measure.atoms()) out.push_back({h_inverse(a.x), a.w});
  return AtomicMeasure(std::move(out));
}

}  // namespace rds
