#include "rds/monotone_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "rds/errors.hpp"
#include "rds/homeomorphism.hpp"

namespace rds {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

Interval widen(double y, double slack) { return {y - slack, y + slack}; }

Interval clamp_to(Interval b, double lo, double hi) {
  b.lo = std::clamp(b.lo, lo, hi);
  b.hi = std::clamp(b.hi, lo, hi);
  return b;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)); }

}  // namespace

struct MonotoneMap::Composition {
  MonotoneMap outer;
  MonotoneMap inner;
  double x_lo;
  double x_hi;
};

double segment_x0(const Segment& s) {
  return std::visit(
      [](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, UnitAffineSegment>) return v.x0;
        else return to_double(v.x0);
      },
      s);
}
double segment_x1(const Segment& s) {
  return std::visit(
      [](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, UnitAffineSegment>) return v.x1;
        else return to_double(v.x1);
      },
      s);
}
double segment_y0(const Segment& s) {
  return std::visit(
      [](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, UnitAffineSegment>) return v.y0;
        else return to_double(v.y0);
      },
      s);
}
double segment_y1(const Segment& s) {
  return std::visit(
      [](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, UnitAffineSegment>) return v.y1;
        else return to_double(v.y1);
      },
      s);
}

MonotoneMap::MonotoneMap() = default;

MonotoneMap MonotoneMap::translation(double offset) {
  if (!std::isfinite(offset)) throw InvalidMapError("translation by a non-finite offset");
  MonotoneMap m;
  m.left_offset_ = m.right_offset_ = offset;
  m.left_exact_ = m.right_exact_ = exact(offset);
  return m;
}

MonotoneMap MonotoneMap::translation(const Rational& offset) {
  MonotoneMap m;
  m.left_offset_ = m.right_offset_ = to_double(offset);
  m.left_exact_ = m.right_exact_ = offset;
  return m;
}

MonotoneMap MonotoneMap::from_breakpoints(const std::vector<std::pair<Rational, Rational>>& points) {
  if (points.empty()) throw InvalidMapError("map needs at least one breakpoint");
  if (points.size() == 1) return translation(Rational(points[0].second - points[0].first));
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    segs.emplace_back(AffineSegment{points[i].first, points[i].second, points[i + 1].first,
                                    points[i + 1].second});
  }
  return from_segments(std::move(segs));
}

MonotoneMap MonotoneMap::from_breakpoints(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<Rational, Rational>> q;
  q.reserve(points.size());
  for (const auto& [x, y] : points) q.emplace_back(exact(x), exact(y));
  return from_breakpoints(q);
}

MonotoneMap MonotoneMap::from_segments(std::vector<Segment> segments) {
  if (segments.empty()) throw InvalidMapError("map needs at least one segment");
  MonotoneMap m;
  m.segments_ = std::move(segments);
  m.finish();
  return m;
}

void MonotoneMap::finish() {
  cache_.clear();
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const Segment& s = segments_[k];
    if (const auto* a = std::get_if<AffineSegment>(&s)) {
      if (!(a->x1 > a->x0) || !(a->y1 > a->y0)) {
        throw InvalidMapError("segment " + std::to_string(k) + " is not increasing");
      }
    } else if (const auto* t = std::get_if<TransportSegment>(&s)) {
      if (!(t->x1 > t->x0) || !(t->y1 > t->y0) || !t->plan) {
        throw InvalidMapError("transport segment " + std::to_string(k) + " is degenerate");
      }
      const TransportPlan& p = *t->plan;
      bool ok = t->inverted ? (p.target_lo() == t->x0 && p.target_hi() == t->x1 &&
                               p.source_lo() == t->y0 && p.source_hi() == t->y1)
                            : (p.source_lo() == t->x0 && p.source_hi() == t->x1 &&
                               p.target_lo() == t->y0 && p.target_hi() == t->y1);
      if (!ok) throw InvalidMapError("transport segment " + std::to_string(k) + " box mismatch");
    } else {
      const auto& u = std::get<UnitAffineSegment>(s);
      if (!(u.x1 > u.x0) || !(u.y1 > u.y0) || !(u.slope > 0)) {
        throw InvalidMapError("unit-affine segment " + std::to_string(k) + " is not increasing");
      }
    }
    Cache c{segment_x0(s), segment_y0(s), segment_x1(s), segment_y1(s), 0.0};
    c.slope = (c.y1 - c.y0) / (c.x1 - c.x0);
    cache_.push_back(c);
    if (k > 0) {
      const Segment& prev = segments_[k - 1];
      const auto* pa = std::get_if<UnitAffineSegment>(&prev);
      const auto* ca = std::get_if<UnitAffineSegment>(&s);
      bool joined;
      if (pa == nullptr && ca == nullptr) {
        auto ex = [](const Segment& seg, bool right) -> std::pair<Rational, Rational> {
          return std::visit(
              [right](const auto& v) -> std::pair<Rational, Rational> {
                if constexpr (std::is_same_v<std::decay_t<decltype(v)>, UnitAffineSegment>) {
                  return {};
                } else {
                  return right ? std::pair{v.x1, v.y1} : std::pair{v.x0, v.y0};
                }
              },
              seg);
        };
        joined = ex(prev, true) == ex(s, false);
      } else {
        joined = close(cache_[k - 1].x1, c.x0) && close(cache_[k - 1].y1, c.y0);
      }
      if (!joined) throw InvalidMapError("segments " + std::to_string(k - 1) + " and " +
                                         std::to_string(k) + " do not join");
    }
  }
  const Segment& first = segments_.front();
  const Segment& last = segments_.back();
  left_offset_ = cache_.front().y0 - cache_.front().x0;
  right_offset_ = cache_.back().y1 - cache_.back().x1;
  left_exact_.reset();
  right_exact_.reset();
  std::visit(
      [this](const auto& v) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, UnitAffineSegment>) {
          left_exact_ = Rational(v.y0 - v.x0);
          left_offset_ = to_double(*left_exact_);
        }
      },
      first);
  std::visit(
      [this](const auto& v) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, UnitAffineSegment>) {
          right_exact_ = Rational(v.y1 - v.x1);
          right_offset_ = to_double(*right_exact_);
        }
      },
      last);
}

bool MonotoneMap::is_affine() const {
  if (composite_) return false;
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return std::holds_alternative<AffineSegment>(s); });
}

bool MonotoneMap::is_unit_affine() const {
  if (composite_) return false;
  return std::all_of(segments_.begin(), segments_.end(), [](const Segment& s) {
    return std::holds_alternative<UnitAffineSegment>(s);
  });
}

bool MonotoneMap::has_transport() const {
  if (composite_) return composite_->outer.has_transport() || composite_->inner.has_transport();
  return std::any_of(segments_.begin(), segments_.end(), [](const Segment& s) {
    return std::holds_alternative<TransportSegment>(s);
  });
}

double MonotoneMap::x_lo() const {
  if (composite_) return composite_->x_lo;
  return segments_.empty() ? kInf : cache_.front().x0;
}

double MonotoneMap::x_hi() const {
  if (composite_) return composite_->x_hi;
  return segments_.empty() ? -kInf : cache_.back().x1;
}

std::vector<std::pair<double, double>> MonotoneMap::breakpoints() const {
  std::vector<std::pair<double, double>> out;
  if (composite_ || segments_.empty()) return out;
  for (const Cache& c : cache_) out.emplace_back(c.x0, c.y0);
  out.emplace_back(cache_.back().x1, cache_.back().y1);
  return out;
}

std::vector<std::pair<Rational, Rational>> MonotoneMap::exact_breakpoints() const {
  if (!is_affine()) throw DomainError("exact_breakpoints: map is not affine");
  std::vector<std::pair<Rational, Rational>> out;
  for (const Segment& s : segments_) {
    const auto& a = std::get<AffineSegment>(s);
    out.emplace_back(a.x0, a.y0);
  }
  if (!segments_.empty()) {
    const auto& a = std::get<AffineSegment>(segments_.back());
    out.emplace_back(a.x1, a.y1);
  }
  return out;
}

Interval MonotoneMap::segment_bracket(std::size_t k, double x, int depth) const {
  const Cache& c = cache_[k];
  const Segment& s = segments_[k];
  if (std::holds_alternative<AffineSegment>(s)) {
    if (x == c.x0) return Interval::point(c.y0);
    if (x == c.x1) return Interval::point(c.y1);
    double y = c.y0 + (x - c.x0) * c.slope;
    double slack = 8 * kEps * (std::fabs(c.y0) + std::fabs(c.y1) + 1.0) * std::max(1.0, c.slope);
    return clamp_to(widen(y, slack), c.y0, c.y1);
  }
  if (const auto* u = std::get_if<UnitAffineSegment>(&s)) {
    if (x == c.x0) return Interval::point(c.y0);
    if (x == c.x1) return Interval::point(c.y1);
    double uu = h_inverse(x);
    double v = u->v0 + u->slope * (uu - u->u0);
    v = std::clamp(v, h_inverse(c.y0), h_inverse(c.y1));
    double y = v <= 0.0 ? c.y0 : (v >= 1.0 ? c.y1 : h_forward(v));
    double slack = 1e-13 * (1.0 + std::fabs(y)) * std::max(1.0, u->slope);
    return clamp_to(widen(y, slack), c.y0, c.y1);
  }
  const auto& t = std::get<TransportSegment>(s);
  return t.inverted ? t.plan->inverse_bracket(x, depth) : t.plan->bracket(x, depth);
}

Interval MonotoneMap::segment_inverse_bracket(std::size_t k, double y, int depth) const {
  const Cache& c = cache_[k];
  const Segment& s = segments_[k];
  if (std::holds_alternative<AffineSegment>(s)) {
    if (y == c.y0) return Interval::point(c.x0);
    if (y == c.y1) return Interval::point(c.x1);
    double x = c.x0 + (y - c.y0) / c.slope;
    double slack = 8 * kEps * (std::fabs(c.x0) + std::fabs(c.x1) + 1.0) * std::max(1.0, 1.0 / c.slope);
    return clamp_to(widen(x, slack), c.x0, c.x1);
  }
  if (const auto* u = std::get_if<UnitAffineSegment>(&s)) {
    if (y == c.y0) return Interval::point(c.x0);
    if (y == c.y1) return Interval::point(c.x1);
    double v = h_inverse(y);
    double uu = u->u0 + (v - u->v0) / u->slope;
    uu = std::clamp(uu, h_inverse(c.x0), h_inverse(c.x1));
    double x = uu <= 0.0 ? c.x0 : (uu >= 1.0 ? c.x1 : h_forward(uu));
    double slack = 1e-13 * (1.0 + std::fabs(x)) * std::max(1.0, 1.0 / u->slope);
    return clamp_to(widen(x, slack), c.x0, c.x1);
  }
  const auto& t = std::get<TransportSegment>(s);
  return t.inverted ? t.plan->bracket(y, depth) : t.plan->inverse_bracket(y, depth);
}

Interval MonotoneMap::bracket(double x, int depth) const {
  if (composite_) {
    Interval i = composite_->inner.bracket(x, depth);
    Interval lo = composite_->outer.bracket(i.lo, depth);
    Interval hi = i.hi == i.lo ? lo : composite_->outer.bracket(i.hi, depth);
    return {lo.lo, hi.hi};
  }
  if (segments_.empty() || x < cache_.front().x0) {
    double y = x + left_offset_;
    return widen(y, 2 * kEps * (std::fabs(x) + std::fabs(left_offset_)));
  }
  if (x > cache_.back().x1) {
    double y = x + right_offset_;
    return widen(y, 2 * kEps * (std::fabs(x) + std::fabs(right_offset_)));
  }
  auto it = std::upper_bound(cache_.begin(), cache_.end(), x,
                             [](double v, const Cache& c) { return v < c.x0; });
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - cache_.begin()) - 1));
  return segment_bracket(k, x, depth);
}

Interval MonotoneMap::inverse_bracket(double y, int depth) const {
  if (composite_) {
    Interval i = composite_->outer.inverse_bracket(y, depth);
    Interval lo = composite_->inner.inverse_bracket(i.lo, depth);
    Interval hi = i.hi == i.lo ? lo : composite_->inner.inverse_bracket(i.hi, depth);
    return {lo.lo, hi.hi};
  }
  if (segments_.empty() || y < cache_.front().y0) {
    double x = y - left_offset_;
    return widen(x, 2 * kEps * (std::fabs(y) + std::fabs(left_offset_)));
  }
  if (y > cache_.back().y1) {
    double x = y - right_offset_;
    return widen(x, 2 * kEps * (std::fabs(y) + std::fabs(right_offset_)));
  }
  auto it = std::upper_bound(cache_.begin(), cache_.end(), y,
                             [](double v, const Cache& c) { return v < c.y0; });
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - cache_.begin()) - 1));
  return segment_inverse_bracket(k, y, depth);
}

double MonotoneMap::eval(double x, double tol) const {
  if (!(tol > 0)) throw DomainError("eval: tolerance must be positive");
  if (!has_transport()) return bracket(x, 0).mid();
  Interval b;
  for (int d = 4; d <= TransportPlan::kMaxDepth; d += 2) {
    b = bracket(x, d);
    if (b.width() <= 2 * tol) return b.mid();
  }
  throw DomainError("eval: tolerance below transport resolution");
}

double MonotoneMap::invert(double y, double tol) const {
  if (!(tol > 0)) throw DomainError("invert: tolerance must be positive");
  if (!has_transport()) return inverse_bracket(y, 0).mid();
  Interval b;
  for (int d = 4; d <= TransportPlan::kMaxDepth; d += 2) {
    b = inverse_bracket(y, d);
    if (b.width() <= 2 * tol) return b.mid();
  }
  throw DomainError("invert: tolerance below transport resolution");
}

std::optional<Rational> MonotoneMap::eval_exact(const Rational& x, int max_depth) const {
  if (composite_) {
    auto i = composite_->inner.eval_exact(x, max_depth);
    if (!i) return std::nullopt;
    return composite_->outer.eval_exact(*i, max_depth);
  }
  if (segments_.empty()) {
    if (!left_exact_) return std::nullopt;
    return Rational(x + *left_exact_);
  }
  for (const Segment& s : segments_) {
    if (std::holds_alternative<UnitAffineSegment>(s)) return std::nullopt;
  }
  auto lo = [](const Segment& s) -> const Rational& {
    return std::holds_alternative<AffineSegment>(s) ? std::get<AffineSegment>(s).x0
                                                    : std::get<TransportSegment>(s).x0;
  };
  if (x <= lo(segments_.front())) return Rational(x + *left_exact_);
  double xd = to_double(x);
  auto it = std::upper_bound(cache_.begin(), cache_.end(), xd,
                             [](double v, const Cache& c) { return v < c.x0; });
  std::ptrdiff_t guess = (it - cache_.begin()) - 1;
  for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(0, guess - 1);
       k <= std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(segments_.size()) - 1, guess + 1);
       ++k) {
    const Segment& s = segments_[static_cast<std::size_t>(k)];
    if (const auto* a = std::get_if<AffineSegment>(&s)) {
      if (x >= a->x0 && x <= a->x1) {
        return Rational(a->y0 + (x - a->x0) * (a->y1 - a->y0) / (a->x1 - a->x0));
      }
    } else {
      const auto& t = std::get<TransportSegment>(s);
      if (x >= t.x0 && x <= t.x1) {
        return t.inverted ? t.plan->inverse_exact(x, max_depth) : t.plan->eval_exact(x, max_depth);
      }
    }
  }
  return Rational(x + *right_exact_);
}

std::optional<Rational> MonotoneMap::invert_exact(const Rational& y, int max_depth) const {
  return inverse().eval_exact(y, max_depth);
}

MonotoneMap MonotoneMap::inverse() const {
  if (composite_) return compose(composite_->inner.inverse(), composite_->outer.inverse());
  MonotoneMap m;
  if (segments_.empty()) {
    m.left_offset_ = m.right_offset_ = -left_offset_;
    if (left_exact_) m.left_exact_ = m.right_exact_ = Rational(-*left_exact_);
    else m.left_exact_ = m.right_exact_ = std::nullopt;
    return m;
  }
  for (const Segment& s : segments_) {
    if (const auto* a = std::get_if<AffineSegment>(&s)) {
      m.segments_.emplace_back(AffineSegment{a->y0, a->x0, a->y1, a->x1});
    } else if (const auto* u = std::get_if<UnitAffineSegment>(&s)) {
      m.segments_.emplace_back(
          UnitAffineSegment{u->y0, u->x0, u->y1, u->x1, u->v0, u->u0, 1.0 / u->slope});
    } else {
      const auto& t = std::get<TransportSegment>(s);
      m.segments_.emplace_back(TransportSegment{t.y0, t.x0, t.y1, t.x1, t.plan, !t.inverted});
    }
  }
  m.finish();
  return m;
}

double MonotoneMap::max_slope() const {
  if (composite_) return kInf;
  double s = 1.0;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (!std::holds_alternative<AffineSegment>(segments_[k])) return kInf;
    s = std::max(s, cache_[k].slope);
  }
  return s;
}

MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner) {
  if (outer.is_affine() && inner.is_affine() && outer.left_exact_ && inner.left_exact_) {
    if (outer.is_translation() && inner.is_translation()) {
      return MonotoneMap::translation(Rational(*outer.left_exact_ + *inner.left_exact_));
    }
    std::vector<Rational> xs;
    if (!inner.is_translation()) {
      for (const auto& [x, y] : inner.exact_breakpoints()) xs.push_back(x);
    }
    if (!outer.is_translation()) {
      MonotoneMap inv = inner.inverse();
      for (const auto& [x, y] : outer.exact_breakpoints()) xs.push_back(*inv.eval_exact(x));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rational, Rational>> pts;
    for (const Rational& x : xs) pts.emplace_back(x, *outer.eval_exact(*inner.eval_exact(x)));
    return MonotoneMap::from_breakpoints(pts);
  }
  MonotoneMap m;
  double lo = inner.x_lo();
  double hi = inner.x_hi();
  if (std::isfinite(outer.x_lo())) lo = std::min(lo, inner.inverse_bracket(outer.x_lo(), 0).lo);
  if (std::isfinite(outer.x_hi())) hi = std::max(hi, inner.inverse_bracket(outer.x_hi(), 0).hi);
  m.composite_ = std::make_shared<const MonotoneMap::Composition>(
      MonotoneMap::Composition{outer, inner, lo, hi});
  m.left_offset_ = outer.left_offset_ + inner.left_offset_;
  m.right_offset_ = outer.right_offset_ + inner.right_offset_;
  m.left_exact_ = (outer.left_exact_ && inner.left_exact_)
                      ? std::optional<Rational>(*outer.left_exact_ + *inner.left_exact_)
                      : std::nullopt;
  m.right_exact_ = (outer.right_exact_ && inner.right_exact_)
                       ? std::optional<Rational>(*outer.right_exact_ + *inner.right_exact_)
                       : std::nullopt;
  return m;
}

std::pair<double, double> endpoint_derivatives(const MonotoneMap& map) {
  return {std::exp(map.left_offset()), std::exp(-map.right_offset())};
}

}  // namespace rds
