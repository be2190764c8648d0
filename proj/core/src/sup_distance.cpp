#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "rds/homeomorphism.hpp"
#include "rds/monotone_map.hpp"

namespace rds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SupBounds affine_sup(const MonotoneMap& f, const MonotoneMap& g) {
  Rational best = abs(*f.exact_left_offset() - *g.exact_left_offset());
  Rational right = abs(*f.exact_right_offset() - *g.exact_right_offset());
  if (right > best) best = right;
  std::vector<Rational> xs;
  for (const MonotoneMap* m : {&f, &g}) {
    if (m->is_translation()) continue;
    for (const auto& [x, y] : m->exact_breakpoints()) xs.push_back(x);
  }
  for (const Rational& x : xs) {
    Rational d = abs(*f.eval_exact(x) - *g.eval_exact(x));
    if (d > best) best = d;
  }
  double v = to_double(best);
  return {v, v, true};
}

// A map that is affine in unit coordinates on pieces [ua, ub] of (0,1):
// v = v0 + slope * (u - u0).
struct UnitPiece {
  double ua, ub, u0, v0, slope;
  [[nodiscard]] double at(double u) const { return v0 + slope * (u - u0); }
};

// Unit-coordinate pieces of a unit-affine map, tails included; empty when the
// tails are not affine in unit coordinates.
std::vector<UnitPiece> unit_pieces(const MonotoneMap& m) {
  std::vector<UnitPiece> out;
  if (m.is_translation() || !m.is_unit_affine()) return out;
  const double xl = m.x_lo();
  const double xr = m.x_hi();
  // left tail: u and its image both <= 1/2 so h(v) = h(u) + a- reads v = e^{a-} u
  // the slack absorbs rounding when a tail starts exactly at the midpoint
  constexpr double slack = 1e-12;
  if (xl > slack || xl + m.left_offset() > slack) return out;
  if (xr < -slack || xr + m.right_offset() < -slack) return out;
  const double ul = h_inverse(xl);
  out.push_back({0.0, ul, 0.0, 0.0, std::exp(m.left_offset())});
  for (const Segment& s : m.segments()) {
    const auto& u = std::get<UnitAffineSegment>(s);
    out.push_back({h_inverse(u.x0), h_inverse(u.x1), u.u0, u.v0, u.slope});
  }
  // right tail: 1 - v = e^{-a+} (1 - u)
  const double ur = h_inverse(xr);
  const double sr = std::exp(-m.right_offset());
  out.push_back({ur, 1.0, 1.0, 1.0, sr});
  return out;
}

double diff_at(const UnitPiece& a, const UnitPiece& b, double u) {
  double va = a.at(u);
  double vb = b.at(u);
  if (!(va > 0 && va < 1 && vb > 0 && vb < 1)) return 0.0;
  return std::fabs(h_forward(va) - h_forward(vb));
}

SupBounds unit_sup(const std::vector<UnitPiece>& pf, const std::vector<UnitPiece>& pg, double left,
                   double right) {
  std::vector<double> cuts{0.0, 1.0};
  auto add_cuts = [&cuts](const std::vector<UnitPiece>& ps) {
    for (const UnitPiece& p : ps) {
      cuts.push_back(p.ua);
      cuts.push_back(p.ub);
      double uh = p.u0 + (0.5 - p.v0) / p.slope;  // where the piece crosses 1/2
      if (uh > p.ua && uh < p.ub) cuts.push_back(uh);
    }
  };
  add_cuts(pf);
  add_cuts(pg);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto piece_for = [](const std::vector<UnitPiece>& ps, double a, double b) -> const UnitPiece& {
    double m = 0.5 * (a + b);
    for (const UnitPiece& p : ps) {
      if (m >= p.ua && m <= p.ub) return p;
    }
    return ps.back();
  };
  double best = std::max(left, right);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    if (!(b > a)) continue;
    const UnitPiece& p = piece_for(pf, a, b);
    const UnitPiece& q = piece_for(pg, a, b);
    if (a > 0) best = std::max(best, diff_at(p, q, a));
    if (b < 1) best = std::max(best, diff_at(p, q, b));
    // mixed sides: |h(f) - h(g)| is -log of a product of affine functions; its
    // extremum is at the vertex of that quadratic
    const double m = 0.5 * (a + b);
    const bool f_low = p.at(m) <= 0.5;
    const bool g_low = q.at(m) <= 0.5;
    if (f_low != g_low) {
      const UnitPiece& lo = f_low ? p : q;
      const UnitPiece& hi = f_low ? q : p;
      // lo.v = alpha + beta u, 1 - hi.v = gamma - delta u
      const double alpha = lo.v0 - lo.slope * lo.u0, beta = lo.slope;
      const double gamma = 1.0 - hi.v0 + hi.slope * hi.u0, delta = hi.slope;
      const double u_star = (beta * gamma - alpha * delta) / (2 * beta * delta);
      if (u_star > a && u_star < b) best = std::max(best, diff_at(p, q, u_star));
    }
  }
  return {best, best, true};
}

struct Cell {
  double a, b, upper;
  bool operator<(const Cell& o) const { return upper < o.upper; }
};

SupBounds certified_sup(const MonotoneMap& f, const MonotoneMap& g, const SupOptions& opt) {
  double lower = 0.0;
  double tails = 0.0;
  const double lo = std::min(f.x_lo(), g.x_lo());
  const double hi = std::max(f.x_hi(), g.x_hi());
  tails = std::max(std::fabs(f.left_offset() - g.left_offset()),
                   std::fabs(f.right_offset() - g.right_offset()));
  lower = tails;
  if (!std::isfinite(lo) && !std::isfinite(hi)) return {tails, tails, true};
  std::vector<double> pts;
  for (const MonotoneMap* m : {&f, &g}) {
    for (const auto& [x, y] : m->breakpoints()) pts.push_back(x);
    if (std::isfinite(m->x_lo())) pts.push_back(m->x_lo());
    if (std::isfinite(m->x_hi())) pts.push_back(m->x_hi());
  }
  if (pts.empty()) return {tails, tails, true};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // slightly beyond the compact parts both maps are translations
  pts.insert(pts.begin(), pts.front() - 1.0);
  pts.push_back(pts.back() + 1.0);

  auto point_lower = [&](double x) {
    Interval a = f.bracket(x, opt.depth);
    Interval b = g.bracket(x, opt.depth);
    return std::max({0.0, a.lo - b.hi, b.lo - a.hi});
  };
  auto cell_upper = [&](double a, double b) {
    Interval fa = f.bracket(a, opt.depth), fb = f.bracket(b, opt.depth);
    Interval ga = g.bracket(a, opt.depth), gb = g.bracket(b, opt.depth);
    return std::max(fb.hi - ga.lo, gb.hi - fa.lo);
  };
  std::priority_queue<Cell> queue;
  for (double x : pts) lower = std::max(lower, point_lower(x));
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    queue.push({pts[k], pts[k + 1], cell_upper(pts[k], pts[k + 1])});
  }
  int budget = opt.max_cells;
  while (!queue.empty() && budget-- > 0) {
    Cell top = queue.top();
    if (top.upper - lower <= opt.target_gap) break;
    const double m = 0.5 * (top.a + top.b);
    if (!(m > top.a && m < top.b)) break;
    queue.pop();
    lower = std::max(lower, point_lower(m));
    queue.push({top.a, m, cell_upper(top.a, m)});
    queue.push({m, top.b, cell_upper(m, top.b)});
  }
  double upper = queue.empty() ? lower : std::max(lower, queue.top().upper);
  upper = std::max(upper, tails);
  return {lower, upper, false};
}

}  // namespace

SupBounds sup_distance(const MonotoneMap& f, const MonotoneMap& g, const SupOptions& options) {
  if (f.is_affine() && g.is_affine() && f.exact_left_offset() && g.exact_left_offset()) {
    return affine_sup(f, g);
  }
  if (f.is_unit_affine() && g.is_unit_affine()) {
    auto pf = unit_pieces(f);
    auto pg = unit_pieces(g);
    if (!pf.empty() && !pg.empty()) {
      return unit_sup(pf, pg, std::fabs(f.left_offset() - g.left_offset()),
                      std::fabs(f.right_offset() - g.right_offset()));
    }
  }
  return certified_sup(f, g, options);
}

}  // namespace rds
