#pragma once

#include <vector>

#include "rds/random_system.hpp"

namespace rds {

struct Atom {
  double x = 0.0;
  double w = 0.0;
};

/// Finite atomic measure with strictly increasing positions and positive weights.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  /// Sorts, merges equal positions and drops non-positive weights.
  explicit AtomicMeasure(std::vector<Atom> atoms);
  static AtomicMeasure dirac(double x, double w = 1.0);

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] std::size_t size() const { return atoms_.size(); }
  [[nodiscard]] bool empty() const { return atoms_.empty(); }
  [[nodiscard]] double total_mass() const;
  /// mu((-inf, x]).
  [[nodiscard]] double cdf(double x) const;
  /// mu((-inf, x)).
  [[nodiscard]] double cdf_left(double x) const;
  [[nodiscard]] double max_weight() const;

 private:
  std::vector<Atom> atoms_;
};

/// Right-continuous nondecreasing step function with mass `base` at -inf and
/// limit 1 at +inf (the remainder sits at +inf).
struct Staircase {
  double base = 0.0;
  std::vector<double> x;    // strictly increasing jump positions
  std::vector<double> cum;  // value at and right of x[k]

  static Staircase from_measure(const AtomicMeasure& m, double base = 0.0);

  [[nodiscard]] double value(double t) const;
  [[nodiscard]] double left_limit(double t) const;
  /// Value just below +inf.
  [[nodiscard]] double top() const { return cum.empty() ? base : cum.back(); }
};

/// sup_t |A(t) - B(t)| including left limits and both infinities.
double kolmogorov_distance(const Staircase& a, const Staircase& b);
double kolmogorov_distance(const AtomicMeasure& a, const AtomicMeasure& b);

struct MarkovOptions {
  int depth = 12;  // transport refinement depth
  double quantum = 0.0;  // > 0: snap images to multiples of quantum (keeps long runs finite)
};

/// p (F0)_* mu + (1 - p) (F1)_* mu.
AtomicMeasure apply_markov(const RandomSystem& system, const AtomicMeasure& mu,
                           const MarkovOptions& options = {});

}  // namespace rds
