#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rds/homeomorphism.hpp"
#include "rds/measure.hpp"
#include "rds/monotone_map.hpp"

namespace rds {

/// Increasing piecewise-linear self-map of [0,1] through (0,0) and (1,1).
struct UnitPiecewiseLinear {
  std::vector<std::pair<double, double>> points;

  /// Throws InvalidMapError unless the points describe an increasing
  /// homeomorphism with positive finite endpoint slopes.
  void check() const;
  [[nodiscard]] double operator()(double u) const;
};

/// phi(f) = h o f o h^-1 as a MonotoneMap. Exact piece by piece: each linear
/// piece of f becomes a unit-affine segment, and the germs at 0 and 1 become
/// the translation tails x + log f'(0) and x - log f'(1).
MonotoneMap transport_map(const UnitPiecewiseLinear& f);

/// Inverse transport f = h^-1 o F o h as an evaluator on [0,1].
class UnitMap {
 public:
  explicit UnitMap(MonotoneMap map, int depth = 12) : map_(std::move(map)), depth_(depth) {}
  [[nodiscard]] double operator()(double u) const;
  [[nodiscard]] const MonotoneMap& real_map() const { return map_; }

 private:
  MonotoneMap map_;
  int depth_;
};

UnitMap inverse_transport(const MonotoneMap& map, int depth = 12);

/// The piecewise-linear original of a unit-affine map whose tails are linear
/// in unit coordinates (every output of transport_map qualifies).
std::optional<UnitPiecewiseLinear> unit_form(const MonotoneMap& map);

/// h_* mu for a measure on (0,1).
AtomicMeasure pushforward_to_real(const AtomicMeasure& unit_measure);
/// (h^-1)_* mu.
AtomicMeasure pushforward_to_unit(const AtomicMeasure& real_measure);

}  // namespace rds
