#include "rds/stationary_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "rds/errors.hpp"
#include "rds/transport_plan.hpp"

namespace rds {

double LatticeChain::total_mass() const {
  double s = minus_inf + plus_inf;
  for (double w : weight) s += w;
  return s;
}

Staircase LatticeChain::staircase(const Lattice& lattice) const {
  Staircase s;
  s.base = minus_inf;
  double c = minus_inf;
  s.x.reserve(index.size());
  s.cum.reserve(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    c += weight[k];
    s.x.push_back(lattice.position(index[k]));
    s.cum.push_back(c);
  }
  return s;
}

Lattice cantor_lattice(const GridCantorSet& set, double w_lo, double w_hi, int digits) {
  const double h = to_double(set.cell_width);
  const double o = to_double(set.origin);
  const double first = std::floor((w_lo - o) / h);
  const double last = std::ceil((w_hi - o) / h);
  Lattice l;
  l.refine_factor = 3;
  l.origin = o + first * h;
  const auto per_cell = pow3(digits);
  l.spacing = h / static_cast<double>(per_cell);
  l.size = static_cast<std::int64_t>(last - first) * per_cell;
  return l;
}

StationarySolver::StationarySolver(const RandomSystem& system, const SolverOptions& options)
    : system_(system), options_(options) {
  if (!(options.tol > 0)) throw DomainError("stationary_solve: tol must be positive");
  ValidityReport report = validate(system);
  if (!report.valid()) {
    throw DomainError("stationary_solve: system fails condition " + report.first_failure()->name);
  }
  certificate_ = tail_certificate(system);
  const double tau = options.tail_mass.value_or(options.tol / 8);
  if (!(tau > 0 && tau < 0.5)) throw DomainError("stationary_solve: tail mass out of range");
  depth_ = options.depth;
  if (options.lattice) {
    lattice_ = *options.lattice;
  } else if (options.cantor_set) {
    lattice_ = cantor_lattice(*options.cantor_set, certificate_.window_lo(tau),
                              certificate_.window_hi(tau), options.cantor_digits);
    // level-D lattice points are gap endpoints of generation <= D, resolved exactly at depth D
    depth_ = options.cantor_digits;
    track_digits_ = true;
  } else {
    const double lo = certificate_.window_lo(tau);
    const double hi = certificate_.window_hi(tau);
    lattice_.origin = lo;
    lattice_.size = std::max<std::int64_t>(1, options.points);
    lattice_.spacing = (hi - lo) / static_cast<double>(lattice_.size);
  }
  if (lattice_.size < 1 || !(lattice_.spacing > 0)) throw DomainError("stationary_solve: empty lattice");
  w_lo_ = lattice_.position(0);
  w_hi_ = lattice_.position(lattice_.size);
  tau_lo_ = certificate_.mass_below(w_lo_);
  tau_hi_ = certificate_.mass_above(w_hi_);
  if (!(tau_lo_ < 0.5 && tau_hi_ < 0.5)) throw DomainError("stationary_solve: window too narrow for the tail bound");
  small_.minus_inf = tau_lo_;
  small_.index = {0};
  small_.weight = {1 - tau_lo_};
  large_.plus_inf = tau_hi_;
  large_.index = {lattice_.size};
  large_.weight = {1 - tau_hi_};
}

void StationarySolver::advance(LatticeChain& chain, bool small) const {
  const double p = system_.p;
  const std::int64_t top = lattice_.size;
  std::vector<std::pair<std::int64_t, double>> img[2];
  for (int m = 0; m < 2; ++m) {
    const MonotoneMap& f = system_.map(m);
    const double share = m == 0 ? p : 1 - p;
    auto& out = img[m];
    out.reserve(chain.index.size());
    for (std::size_t k = 0; k < chain.index.size(); ++k) {
      const double w = chain.weight[k] * share;
      const Interval b = f.bracket(lattice_.position(chain.index[k]), depth_);
      std::int64_t j = small ? lattice_.down(b.lo) : lattice_.up(b.hi);
      if (small) {
        if (j < 0) {
          chain.minus_inf += w;
          continue;
        }
        j = std::min(j, top);
      } else {
        if (j > top) {
          chain.plus_inf += w;
          continue;
        }
        j = std::max<std::int64_t>(j, 0);
      }
      if (!out.empty() && out.back().first == j) out.back().second += w;
      else out.emplace_back(j, w);
    }
  }
  // both image lists are sorted because the maps and the rounding are monotone
  std::vector<std::int64_t> idx;
  std::vector<double> wt;
  idx.reserve(img[0].size() + img[1].size());
  wt.reserve(idx.capacity());
  std::size_t a = 0, b = 0;
  auto push = [&](std::int64_t j, double w) {
    if (!idx.empty() && idx.back() == j) wt.back() += w;
    else {
      idx.push_back(j);
      wt.push_back(w);
    }
  };
  while (a < img[0].size() || b < img[1].size()) {
    if (b >= img[1].size() || (a < img[0].size() && img[0][a].first <= img[1][b].first)) {
      push(img[0][a].first, img[0][a].second);
      ++a;
    } else {
      push(img[1][b].first, img[1][b].second);
      ++b;
    }
  }
  // the stationary measure has at most tau mass beyond each window edge
  if (small && chain.minus_inf > tau_lo_) {
    const double excess = chain.minus_inf - tau_lo_;
    chain.minus_inf = tau_lo_;
    if (!idx.empty() && idx.front() == 0) wt.front() += excess;
    else {
      idx.insert(idx.begin(), 0);
      wt.insert(wt.begin(), excess);
    }
  }
  if (!small && chain.plus_inf > tau_hi_) {
    const double excess = chain.plus_inf - tau_hi_;
    chain.plus_inf = tau_hi_;
    if (!idx.empty() && idx.back() == top) wt.back() += excess;
    else {
      idx.push_back(top);
      wt.push_back(excess);
    }
  }
  chain.index = std::move(idx);
  chain.weight = std::move(wt);
}

void StationarySolver::step() {
  advance(small_, true);
  advance(large_, false);
  ++iterations_;
}

double StationarySolver::gap() const {
  return kolmogorov_distance(small_.staircase(lattice_), large_.staircase(lattice_));
}

void StationarySolver::refine() {
  const int f = lattice_.refine_factor;
  lattice_ = lattice_.refined();
  for (LatticeChain* c : {&small_, &large_}) {
    for (auto& i : c->index) i *= f;
  }
  if (track_digits_) depth_ = std::min(depth_ + 1, TransportPlan::kMaxDepth);
  ++refinements_;
}

CdfEnvelope StationarySolver::envelope() const {
  CdfEnvelope e;
  e.small_chain = small_;
  e.large_chain = large_;
  e.upper = small_.staircase(lattice_);
  e.lower = large_.staircase(lattice_);
  e.lattice = lattice_;
  e.certificate = certificate_;
  e.tail_mass_lo = tau_lo_;
  e.tail_mass_hi = tau_hi_;
  e.w_lo = w_lo_;
  e.w_hi = w_hi_;
  e.gap = kolmogorov_distance(e.upper, e.lower);
  e.iterations = iterations_;
  e.refinements = refinements_;
  e.depth = depth_;
  for (const LatticeChain* c : {&small_, &large_}) {
    for (double w : c->weight) e.max_atom_weight = std::max(e.max_atom_weight, w);
  }
  e.converged = e.gap + tau_lo_ + tau_hi_ <= options_.tol;
  return e;
}

CdfEnvelope stationary_solve(const RandomSystem& system, const SolverOptions& options) {
  StationarySolver solver(system, options);
  CdfEnvelope env = solver.envelope();
  const double tails = env.tail_mass_lo + env.tail_mass_hi;
  std::deque<double> history;
  std::int64_t since_refine = 0;
  for (std::int64_t it = 0; it < options.max_iterations; ++it) {
    solver.step();
    ++since_refine;
    const double g = solver.gap();
    if (g + tails <= options.tol) break;
    history.push_back(g);
    if (static_cast<int>(history.size()) > options.stall_window) history.pop_front();
    if (since_refine >= options.stall_window &&
        static_cast<int>(history.size()) == options.stall_window &&
        history.front() - g < 0.02 * g) {
      if (solver.envelope().refinements >= options.max_refinements) break;
      solver.refine();
      since_refine = 0;
      history.clear();
    }
  }
  return solver.envelope();
}

}  // namespace rds
