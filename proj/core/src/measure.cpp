#include "rds/measure.hpp"

#include <algorithm>
#include <cmath>

#include "rds/errors.hpp"

namespace rds {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.x)) throw DomainError("atom at a non-finite position");
    if (!(a.w > 0)) continue;
    if (!atoms_.empty() && atoms_.back().x == a.x) {
      atoms_.back().w += a.w;
    } else {
      atoms_.push_back(a);
    }
  }
}

AtomicMeasure AtomicMeasure::dirac(double x, double w) { return AtomicMeasure({{x, w}}); }

double AtomicMeasure::total_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.w;
  return s;
}

double AtomicMeasure::cdf(double x) const {
  double s = 0.0;
  for (const Atom& a : atoms_) {
    if (a.x > x) break;
    s += a.w;
  }
  return s;
}

double AtomicMeasure::cdf_left(double x) const {
  double s = 0.0;
  for (const Atom& a : atoms_) {
    if (a.x >= x) break;
    s += a.w;
  }
  return s;
}

double AtomicMeasure::max_weight() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m = std::max(m, a.w);
  return m;
}

Staircase Staircase::from_measure(const AtomicMeasure& m, double base) {
  Staircase s;
  s.base = base;
  double c = base;
  for (const Atom& a : m.atoms()) {
    c += a.w;
    s.x.push_back(a.x);
    s.cum.push_back(c);
  }
  return s;
}

double Staircase::value(double t) const {
  auto it = std::upper_bound(x.begin(), x.end(), t);
  if (it == x.begin()) return base;
  return cum[static_cast<std::size_t>(it - x.begin()) - 1];
}

double Staircase::left_limit(double t) const {
  auto it = std::lower_bound(x.begin(), x.end(), t);
  if (it == x.begin()) return base;
  return cum[static_cast<std::size_t>(it - x.begin()) - 1];
}

double kolmogorov_distance(const Staircase& a, const Staircase& b) {
  double d = std::fabs(a.base - b.base);
  d = std::max(d, std::fabs(a.top() - b.top()));
  // both are constant between merged jump positions
  std::size_t i = 0, j = 0;
  double va = a.base, vb = b.base;
  while (i < a.x.size() || j < b.x.size()) {
    double t;
    if (j >= b.x.size() || (i < a.x.size() && a.x[i] <= b.x[j])) t = a.x[i];
    else t = b.x[j];
    d = std::max(d, std::fabs(va - vb));  // left limits at t
    if (i < a.x.size() && a.x[i] == t) va = a.cum[i++];
    if (j < b.x.size() && b.x[j] == t) vb = b.cum[j++];
    d = std::max(d, std::fabs(va - vb));
  }
  return d;
}

double kolmogorov_distance(const AtomicMeasure& a, const AtomicMeasure& b) {
  return kolmogorov_distance(Staircase::from_measure(a), Staircase::from_measure(b));
}

AtomicMeasure apply_markov(const RandomSystem& system, const AtomicMeasure& mu,
                           const MarkovOptions& options) {
  std::vector<Atom> out;
  out.reserve(2 * mu.size());
  auto snap = [&](double y) {
    return options.quantum > 0 ? std::round(y / options.quantum) * options.quantum : y;
  };
  for (const Atom& a : mu.atoms()) {
    out.push_back({snap(system.f0.bracket(a.x, options.depth).mid()), system.p * a.w});
    out.push_back({snap(system.f1.bracket(a.x, options.depth).mid()), (1.0 - system.p) * a.w});
  }
  return AtomicMeasure(std::move(out));
}

}  // namespace rds
