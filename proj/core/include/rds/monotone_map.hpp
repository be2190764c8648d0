#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "rds/interval.hpp"
#include "rds/rational.hpp"
#include "rds/transport_plan.hpp"

namespace rds {

/// Affine piece through (x0, y0) and (x1, y1), exact endpoints.
struct AffineSegment {
  Rational x0, y0, x1, y1;
};

/// Piece that is affine in unit coordinates: with u = h^-1(x),
/// F(x) = h(v0 + slope * (u - u0)) on [x0, x1].
struct UnitAffineSegment {
  double x0, y0, x1, y1;
  double u0, v0, slope;
};

/// Cantor transport from [x0, x1] onto [y0, y1]; `inverted` runs the plan backwards.
struct TransportSegment {
  Rational x0, y0, x1, y1;
  std::shared_ptr<const TransportPlan> plan;
  bool inverted = false;
};

using Segment = std::variant<AffineSegment, UnitAffineSegment, TransportSegment>;

double segment_x0(const Segment& s);
double segment_x1(const Segment& s);
double segment_y0(const Segment& s);
double segment_y1(const Segment& s);

/// Increasing homeomorphism of the real line equal to x + a- left of x_lo
/// and x + a+ right of x_hi. Immutable; copies share transport plans.
class MonotoneMap {
 public:
  /// The identity.
  MonotoneMap();

  static MonotoneMap translation(double offset);
  static MonotoneMap translation(const Rational& offset);
  static MonotoneMap identity() { return translation(Rational(0)); }
  /// Piecewise-affine map through the given points (x and y strictly increasing).
  /// One point gives the translation through it.
  static MonotoneMap from_breakpoints(const std::vector<std::pair<Rational, Rational>>& points);
  static MonotoneMap from_breakpoints(const std::vector<std::pair<double, double>>& points);
  /// Continuous chain of segments; throws InvalidMapError on gaps or decreasing pieces.
  static MonotoneMap from_segments(std::vector<Segment> segments);

  [[nodiscard]] const std::vector<Segment>& segments() const { return segments_; }
  [[nodiscard]] bool is_composite() const { return composite_ != nullptr; }
  /// No segments at all (a translation).
  [[nodiscard]] bool is_translation() const { return segments_.empty() && !composite_; }
  /// Every segment affine with exact endpoints (translations included).
  [[nodiscard]] bool is_affine() const;
  /// Every segment affine in unit coordinates (translations included).
  [[nodiscard]] bool is_unit_affine() const;
  [[nodiscard]] bool has_transport() const;

  [[nodiscard]] double left_offset() const { return left_offset_; }
  [[nodiscard]] double right_offset() const { return right_offset_; }
  [[nodiscard]] const std::optional<Rational>& exact_left_offset() const { return left_exact_; }
  [[nodiscard]] const std::optional<Rational>& exact_right_offset() const { return right_exact_; }

  /// Left end of the non-translation part (+inf for a translation).
  [[nodiscard]] double x_lo() const;
  [[nodiscard]] double x_hi() const;

  /// Segment endpoints in increasing order (empty for translations and composites).
  [[nodiscard]] std::vector<std::pair<double, double>> breakpoints() const;
  /// Exact breakpoints of an affine map.
  [[nodiscard]] std::vector<std::pair<Rational, Rational>> exact_breakpoints() const;

  /// Certified enclosure of F(x); transport plans are consulted at `depth`.
  [[nodiscard]] Interval bracket(double x, int depth) const;
  /// Certified enclosure of F^-1(y).
  [[nodiscard]] Interval inverse_bracket(double y, int depth) const;

  /// F(x) with certified absolute error <= tol.
  [[nodiscard]] double eval(double x, double tol = 1e-9) const;
  /// F^-1(y) with certified absolute error <= tol.
  [[nodiscard]] double invert(double y, double tol = 1e-9) const;
  double operator()(double x) const { return eval(x); }

  /// Exact image when it is a rational computable from exact data (affine
  /// pieces, tails, transport at resolved points); nullopt otherwise.
  [[nodiscard]] std::optional<Rational> eval_exact(const Rational& x, int max_depth = 16) const;
  [[nodiscard]] std::optional<Rational> invert_exact(const Rational& y, int max_depth = 16) const;

  [[nodiscard]] MonotoneMap inverse() const;

  /// Upper bound on the slope of affine and unit-affine pieces, inf when unknown.
  [[nodiscard]] double max_slope() const;

  friend MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner);

 private:
  struct Composition;
  struct Cache {
    double x0, y0, x1, y1, slope;
  };

  void finish();
  [[nodiscard]] Interval segment_bracket(std::size_t k, double x, int depth) const;
  [[nodiscard]] Interval segment_inverse_bracket(std::size_t k, double y, int depth) const;

  std::vector<Segment> segments_;
  std::vector<Cache> cache_;
  std::shared_ptr<const Composition> composite_;
  double left_offset_ = 0.0;
  double right_offset_ = 0.0;
  std::optional<Rational> left_exact_{Rational(0)};
  std::optional<Rational> right_exact_{Rational(0)};
};

/// outer o inner. Exact breakpoint merge for affine inputs, lazy node otherwise.
MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner);

/// Lower and upper bound on sup_x |F(x) - G(x)|.
struct SupBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

struct SupOptions {
  int depth = 10;            // transport refinement depth for brackets
  double target_gap = 1e-9;  // stop refining once upper - lower is below this
  int max_cells = 200000;    // bisection budget
};

/// sup over the real line of |F - G|: exact for two affine maps and for two
/// unit-affine maps, certified bounds otherwise.
SupBounds sup_distance(const MonotoneMap& f, const MonotoneMap& g, const SupOptions& options = {});

/// (f'(0), f'(1)) = (e^{a-}, e^{-a+}) of the unit-interval original.
std::pair<double, double> endpoint_derivatives(const MonotoneMap& map);

}  // namespace rds
