// Acceptance criteria: one PASS/FAIL line each, with runtime against its limit.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rds/conjugacy.hpp"
#include "rds/construct_cantor.hpp"
#include "rds/construct_minimal.hpp"
#include "rds/diagnostics.hpp"
#include "rds/measure.hpp"
#include "rds/monte_carlo.hpp"
#include "rds/stationary_solver.hpp"
#include "rds/tail_certificate.hpp"
#include "systems.hpp"

using namespace rds;
using namespace rds::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---- 1: isometry ----------------------------------------------------------

double first_slope(const UnitPiecewiseLinear& f) { return f.points[1].second / f.points[1].first; }
double last_slope(const UnitPiecewiseLinear& f) {
  const auto& a = f.points[f.points.size() - 2];
  return (1 - a.second) / (1 - a.first);
}

// sup_u |h(f(u)) - h(g(u))| from samples: a uniform grid, every breakpoint,
// every preimage of 1/2 and the limits at both ends. Between these points the
// difference is monotone, so the maximum over them is the supremum.
double sampled_unit_sup(const UnitPiecewiseLinear& f, const UnitPiecewiseLinear& g, int n) {
  std::vector<double> us;
  for (int k = 1; k < n; ++k) us.push_back(static_cast<double>(k) / n);
  for (const auto* m : {&f, &g}) {
    for (const auto& [u, v] : m->points) us.push_back(u);
    us.push_back(pl_inverse(m->points, 0.5));
  }
  double best = std::max(std::fabs(std::log(first_slope(f) / first_slope(g))),
                         std::fabs(std::log(last_slope(f) / last_slope(g))));
  for (double u : us) {
    if (!(u > 0 && u < 1)) continue;
    best = std::max(best, std::fabs(h_oracle(pl_eval(f.points, u)) - h_oracle(pl_eval(g.points, u))));
  }
  return best;
}

Outcome isometry() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> inner(1, 4);
  std::uniform_real_distribution<double> P(0.2, 0.8);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const UnitPiecewiseLinear f0 = random_unit_map(rng, inner(rng)), f1 = random_unit_map(rng, inner(rng));
    const UnitPiecewiseLinear g0 = random_unit_map(rng, inner(rng)), g1 = random_unit_map(rng, inner(rng));
    const double p = P(rng), q = P(rng);
    const double sampled =
        std::max({sampled_unit_sup(f0, g0, 100000), sampled_unit_sup(f1, g1, 100000), std::fabs(p - q)});
    const RandomSystem F(transport_map(f0), transport_map(f1), p);
    const RandomSystem G(transport_map(g0), transport_map(g1), q);
    const SystemDistance d = system_distance(F, G, 100);
    worst = std::max(worst, std::fabs(d.d_m_upper - sampled));
    worst = std::max(worst, d.d_m_upper - d.d_m_lower);
  }
  return {worst <= 1e-6, "50 system pairs, max |d_C - d_m| = " + fmt("%.3g", worst) + " (limit 1e-6)"};
}

// ---- 2: derivative continuity ---------------------------------------------

UnitPiecewiseLinear nudge(const UnitPiecewiseLinear& f, std::mt19937_64& rng, double delta) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  UnitPiecewiseLinear g = f;
  for (std::size_t k = 1; k + 1 < g.points.size(); ++k) {
    g.points[k].first += delta * U(rng) * 0.01;
    g.points[k].second += delta * U(rng) * 0.01;
  }
  return g;
}

Outcome derivative_continuity() {
  std::mt19937_64 rng(202);
  int pairs = 0, violations = 0;
  for (double eps : {0.1, 0.01}) {
    for (int k = 0; k < 50; ++k) {
      const UnitPiecewiseLinear f = random_unit_map(rng, 3);
      const MonotoneMap F = transport_map(f);
      double delta = 8.0;
      UnitPiecewiseLinear g;
      MonotoneMap G;
      SupBounds s;
      while (true) {
        delta /= 2;
        g = nudge(f, rng, delta);
        try {
          g.check();
        } catch (const std::exception&) {
          continue;  // nudged out of order; retry smaller
        }
        G = transport_map(g);
        s = sup_distance(F, G);
        if (s.upper < eps) break;
      }
      ++pairs;
      // derivatives straight from the unit maps
      const double f0 = first_slope(f), g0 = first_slope(g), f1 = last_slope(f), g1 = last_slope(g);
      const bool ok = g0 > std::exp(-eps) * f0 && g0 < std::exp(eps) * f0 && g1 > std::exp(-eps) * f1 &&
                      g1 < std::exp(eps) * f1;
      const auto [G0, G1] = endpoint_derivatives(G);
      const bool agree = std::fabs(G0 / g0 - 1) < 1e-12 && std::fabs(G1 / g1 - 1) < 1e-12;
      if (!ok || !agree) ++violations;
    }
  }
  return {violations == 0,
          std::to_string(pairs) + " pairs with sup distance below eps in {0.1, 0.01}, " + std::to_string(violations) +
              " derivative violations"};
}

// ---- 3: Cantor construction -----------------------------------------------

Outcome cantor_construction() {
  std::mt19937_64 rng(303);
  std::vector<RandomSystem> systems;
  while (systems.size() < 20) {
    RandomSystem f = random_affine_system(rng);
    if (validate(f).valid()) systems.push_back(std::move(f));
  }
  int runs = 0, failures = 0, endpoints = 0, images = 0, escapes = 0;
  double worst_ratio = 0.0;
  std::string first_error;
  for (const Rational eps : {Rational(1, 2), Rational(1, 10)}) {
    for (const RandomSystem& f : systems) {
      ++runs;
      try {
        const CantorPerturbation g = perturb_cantor(f, eps);
        const double e = to_double(eps);
        worst_ratio = std::max(worst_ratio, g.distance.d_m_upper / e);
        if (!(g.distance.d_m_upper < e) || !validate(g.system).valid()) {
          ++failures;
          continue;
        }
        // 5 gap endpoints per run, 100 per budget, inside the box region
        const GridCantorSet& s = g.set;
        const std::int64_t lo = s.cell_of(g.chain0.Lx), hi = s.cell_of(g.chain1.Rx);
        std::uniform_int_distribution<std::int64_t> cell(std::min(lo, hi), std::max(lo, hi));
        std::uniform_int_distribution<int> gen(1, 3);
        for (int j = 0; j < 5; ++j) {
          const auto gs = gaps(s, {cell(rng), 1}, gen(rng));
          const RationalGap& gap = gs[std::uniform_int_distribution<std::size_t>(0, gs.size() - 1)(rng)];
          const Rational x0 = j % 2 == 0 ? gap.left : gap.right;
          ++endpoints;
          std::vector<Rational> layer{x0};
          for (int len = 1; len <= 6; ++len) {
            std::vector<Rational> next;
            next.reserve(layer.size() * 2);
            for (const Rational& x : layer) {
              for (int i = 0; i < 2; ++i) {
                const auto y = g.system.map(i).eval_exact(x, TransportPlan::kMaxDepth);
                ++images;
                if (!y || !membership(s, *y)) {
                  ++escapes;
                  continue;
                }
                next.push_back(*y);
              }
            }
            layer = std::move(next);
          }
        }
      } catch (const std::exception& ex) {
        ++failures;
        if (first_error.empty()) first_error = ex.what();
      }
    }
  }
  std::string detail = std::to_string(runs - failures) + "/" + std::to_string(runs) +
                       " constructions valid with d_m < eps (max d_m/eps " + fmt("%.3f", worst_ratio) + "), " +
                       std::to_string(images) + " word images of " + std::to_string(endpoints) +
                       " gap endpoints, " + std::to_string(escapes) + " outside S";
  if (!first_error.empty()) detail += "; first error: " + first_error;
  return {failures == 0 && escapes == 0 && endpoints == 200, detail};
}

// ---- 4: hand-traced box chain ---------------------------------------------

Outcome hand_trace() {
  const MonotoneMap down = MonotoneMap::translation(Rational(-3, 8));
  const MonotoneMap up = MonotoneMap::translation(Rational(3, 8));
  const ConstructionParams p = choose_levels(down, up, frac(1, 2), frac(3, 10));
  const BoxChain c = build_boxes(down, p, true);
  // the loop's output, listed by increasing x
  const std::vector<std::array<Rational, 4>> expected{
      {frac(-1, 8), frac(0, 1), frac(-1, 2), frac(-3, 8)}, {frac(0, 1), frac(1, 8), frac(-3, 8), frac(-1, 4)},
      {frac(1, 8), frac(1, 4), frac(-1, 4), frac(-1, 8)},  {frac(1, 4), frac(3, 8), frac(-1, 8), frac(0, 1)},
      {frac(3, 8), frac(1, 2), frac(0, 1), frac(1, 8)}};
  bool boxes_ok = c.boxes.size() == expected.size();
  for (std::size_t k = 0; boxes_ok && k < expected.size(); ++k) {
    const Box& b = c.boxes[k];
    boxes_ok = b.lx == expected[k][0] && b.rx == expected[k][1] && b.ly == expected[k][2] && b.ry == expected[k][3];
  }
  const bool ends = c.Lx == frac(-1, 8) && c.Ly == frac(-1, 2) && c.Rx == frac(1, 2) && c.Ry == frac(1, 8);
  const MonotoneMap g0 = threaded_map(c, p);
  const bool tails = g0.exact_left_offset() && g0.exact_right_offset() &&
                     *g0.exact_left_offset() == frac(-3, 8) && *g0.exact_right_offset() == frac(-3, 8);
  const bool levels = p.M == 3 && p.M_prime == 4;
  std::ostringstream d;
  d << "M = " << p.M << ", M' = " << p.M_prime << ", " << c.boxes.size() << " boxes "
    << (boxes_ok ? "match" : "differ") << ", entry/exit " << (ends ? "match" : "differ") << ", G0 tails "
    << (g0.exact_left_offset() ? to_string(*g0.exact_left_offset()) : "?") << " / "
    << (g0.exact_right_offset() ? to_string(*g0.exact_right_offset()) : "?");
  return {levels && boxes_ok && ends && tails, d.str()};
}

// ---- 5: singularity --------------------------------------------------------

Outcome singularity() {
  const CantorPerturbation g = perturb_cantor(s_star(), frac(1, 10));
  SolverOptions opt;
  opt.tol = 0.005;
  opt.cantor_set = g.set;
  opt.cantor_digits = 6;
  const CdfEnvelope env = stationary_solve(g.system, opt);
  const CoverMass c = cover_mass(env, g.set, 6);
  Rational factor(1);
  for (int k = 0; k < 6; ++k) factor *= frac(2, 3);
  const bool exact_length = c.cover_length == c.window_length * factor;
  std::ostringstream d;
  d << "solver " << (env.converged ? "converged" : "NOT converged") << " (gap " << fmt("%.4f", env.gap)
    << "), depth-6 cover mass " << fmt("%.6f", c.chain_mass) << " (>= 0.99), cover length " << to_string(c.cover_length)
    << " = " << fmt("%.7f", c.length_factor) << " x window " << to_string(c.window_length);
  return {env.converged && c.chain_mass >= 0.99 && exact_length, d.str()};
}

// ---- 6: full support -------------------------------------------------------

Outcome full_support() {
  const MinimalPerturbation g = perturb_minimal(s_star(), frac(1, 10));
  SolverOptions opt;
  opt.tol = 5e-4;
  const CdfEnvelope env = stationary_solve(g.system, opt);
  const auto cells = support_grid_mass(env, {-5.0, 5.0}, 40);
  int positive = 0;
  double min_lower = 1.0;
  for (const CellMass& c : cells) {
    positive += c.lower > 0;
    min_lower = std::min(min_lower, c.lower);
  }
  const DensityReport rep = density_diagnostic(g, frac(0, 1), 5.0, 40);
  int visited = 0;
  for (auto h : rep.hits) visited += h > 0;
  std::ostringstream d;
  d << "eta0 = " << g.offsets.eta0.str() << ", eta1 = " << g.offsets.eta1.str() << ", solver "
    << (env.converged ? "converged" : "NOT converged") << ", " << positive << "/40 cells with certified mass > 0 (min "
    << fmt("%.2e", min_lower) << "), density search visited " << visited << "/40 in " << rep.steps << " steps";
  return {env.converged && positive == 40 && rep.conclusive && rep.steps <= 100000, d.str()};
}

// ---- 7: solver against Monte Carlo ----------------------------------------

Outcome solver_vs_monte_carlo() {
  const RandomSystem f = s_star();
  const CdfEnvelope env = stationary_solve(f);
  MonteCarloOptions mc;
  mc.n_samples = 1000000;
  const Staircase emp = Staircase::from_measure(monte_carlo_cdf(f, mc));
  const double dk = std::max(kolmogorov_distance(emp, env.lower), kolmogorov_distance(emp, env.upper));
  const double lo = env.lower.value(0.0), hi = env.upper.value(0.0);
  std::ostringstream d;
  d << "d_K(envelope, 1e6-sample MC) = " << fmt("%.4f", dk) << " (<= 0.01), CDF(0) in [" << fmt("%.4f", lo) << ", "
    << fmt("%.4f", hi) << "] (0.5 +- 0.005)";
  return {env.converged && dk <= 0.01 && lo >= 0.495 && hi <= 0.505, d.str()};
}

// ---- 8: tail certificate ---------------------------------------------------

// Probability measure in unit coordinates whose tails follow the bound
// mu((0,x)) <= M x^alpha closely, pushed to the real line.
AtomicMeasure saturating_measure(std::mt19937_64& rng, double M, double alpha, double x0) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Atom> unit;
  double total = 0.0;
  for (int side = 0; side < 2; ++side) {
    std::vector<double> us;
    for (int k = 0; k < 30; ++k) us.push_back(x0 * 0.5 * std::pow(10.0, -8.0 * U(rng)));
    std::sort(us.begin(), us.end());
    const double scale = std::min(1.0, 0.45 / (M * std::pow(us.back(), alpha)));
    double cum = 0.0;
    for (double u : us) {
      const double target = scale * M * std::pow(u, alpha) * (0.9 + 0.1 * U(rng));
      if (target > cum) {
        unit.push_back({side == 0 ? u : 1 - u, target - cum});
        total += target - cum;
        cum = target;
      }
    }
  }
  unit.push_back({0.5, 1.0 - total});
  return pushforward_to_real(AtomicMeasure(unit));
}

Outcome tail_certificate_check() {
  const double x = xi(0.45, 3.5, 0.5, 0.2, 0.0);
  const double direct = 0.5 * (std::pow(0.45, -0.2) + std::pow(3.5, -0.2));
  // 0.9757 is the four-digit truncation of 0.97577
  bool ok = std::fabs(x - 0.9757) < 1e-4 && std::fabs(x - direct) < 1e-15 && x < 1 && xi(0.45, 3.5, 0.5, 0.0) == 1.0;

  const RandomSystem f = s_star();
  const TailCertificate c = tail_certificate(f);
  std::mt19937_64 rng(808);
  int measures = 0, checks = 0, violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const AtomicMeasure mu = saturating_measure(rng, c.M, c.alpha, c.x0);
    const AtomicMeasure pmu = apply_markov(f, mu);
    ++measures;
    for (int j = 0; j < 100; ++j) {
      // log-spaced unit points in (0, x0]
      const double u = c.x0 * std::pow(10.0, -8.0 * j / 99.0);
      const double bound = c.M * std::pow(u, c.alpha);
      const double left = pmu.cdf_left(h_oracle(u));                  // mu((0, u))
      const double right = pmu.total_mass() - pmu.cdf(h_oracle(1 - u));  // mu((1 - u, 1))
      // the input measure sits in N_{M,alpha}, its image must too
      const double in_left = mu.cdf_left(h_oracle(u));
      checks += 2;
      if (in_left > bound * (1 + 1e-12)) ++violations;
      if (left > bound * (1 + 1e-12) + 1e-15) ++violations;
      if (right > bound * (1 + 1e-12) + 1e-15) ++violations;
      worst = std::max({worst, left / bound, right / bound});
    }
  }
  ok = ok && violations == 0;
  std::ostringstream d;
  d << "xi(0.2, 0) = " << fmt("%.5f", x) << " < 1; S* certificate M = " << fmt("%.4g", c.M)
    << ", alpha = " << fmt("%.4g", c.alpha) << "; " << measures << " measures, " << checks
    << " tail checks after one step, max mass/bound " << fmt("%.4f", worst) << ", " << violations << " violations";
  return {ok, d.str()};
}

// ---- 9: Markov basics ------------------------------------------------------

AtomicMeasure random_measure(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> X(-15.0, 15.0), W(0.1, 1.0);
  std::vector<Atom> atoms;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    atoms.push_back({X(rng), W(rng)});
    total += atoms.back().w;
  }
  for (Atom& a : atoms) a.w /= total;
  return AtomicMeasure(atoms);
}

// CDF(a) >= CDF(b) everywhere, checked at every jump and just left of it.
bool dominated(const AtomicMeasure& a, const AtomicMeasure& b) {
  for (const auto* m : {&a, &b}) {
    for (const Atom& t : m->atoms()) {
      if (a.cdf(t.x) < b.cdf(t.x) - 1e-12 || a.cdf_left(t.x) < b.cdf_left(t.x) - 1e-12) return false;
    }
  }
  return true;
}

Outcome markov_basics() {
  const RandomSystem f = s_star();
  std::mt19937_64 rng(909);
  AtomicMeasure mu = random_measure(rng, 200);
  MarkovOptions snap;
  snap.quantum = 1.0 / 64;
  double drift = 0.0;
  for (int k = 0; k < 1000; ++k) {
    mu = apply_markov(f, mu, snap);
    drift = std::max(drift, std::fabs(mu.total_mass() - 1.0));
  }
  int order_fail = 0, expand_fail = 0;
  std::uniform_real_distribution<double> shift(0.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const RandomSystem g = k % 2 == 0 ? f : random_affine_system(rng);
    const AtomicMeasure a = random_measure(rng, 40);
    std::vector<Atom> moved = a.atoms();
    for (Atom& t : moved) t.x += shift(rng);
    const AtomicMeasure b(moved);  // a below b in stochastic order
    const AtomicMeasure pa = apply_markov(g, a), pb = apply_markov(g, b);
    if (!dominated(pa, pb)) ++order_fail;
    const AtomicMeasure c = random_measure(rng, 40);
    if (kolmogorov_distance(apply_markov(g, a), apply_markov(g, c)) > kolmogorov_distance(a, c) + 1e-12) ++expand_fail;
  }
  std::ostringstream d;
  d << "max |mass - 1| over 1000 steps = " << fmt("%.2e", drift) << " (<= 1e-12); order preserved on "
    << 100 - order_fail << "/100 pairs; nonexpansive on " << 100 - expand_fail << "/100 pairs";
  return {drift <= 1e-12 && order_fail == 0 && expand_fail == 0, d.str()};
}

// ---- 10: continuity trend --------------------------------------------------

Outcome continuity_trend() {
  const RandomSystem f = s_star();
  const double tol = 0.005;
  const CdfEnvelope base = stationary_solve(f);
  std::vector<double> D;
  bool ok = base.converged;
  std::ostringstream d;
  d << "D_n =";
  for (int n = 1; n <= 6; ++n) {
    const Rational shift = pow2(-n);
    Points pts;
    for (const auto& [x, y] : f.f0.exact_breakpoints()) pts.emplace_back(x, y - shift);
    const RandomSystem fn(affine(pts), f.f1, frac(1, 2));
    const SystemDistance dist = system_distance(f, fn, 100);
    ok = ok && dist.d0_sup.exact && dist.d_m_upper == to_double(shift);
    const CdfEnvelope env = stationary_solve(fn);
    ok = ok && env.converged;
    D.push_back(std::max(kolmogorov_distance(env.lower, base.lower), kolmogorov_distance(env.upper, base.upper)));
    d << ' ' << fmt("%.4f", D.back());
  }
  for (std::size_t k = 1; k < D.size(); ++k) ok = ok && D[k] <= D[k - 1] + 2 * tol;
  d << " for d_m = 2^-1..2^-6 (each D_{n+1} <= D_n + " << 2 * tol << ")";
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "isometry of the conjugacy", 10, isometry},
      {2, "derivative continuity", 1, derivative_continuity},
      {3, "Cantor construction", 60, cantor_construction},
      {4, "hand-traced box chain", 1, hand_trace},
      {5, "singularity at desk scale", 300, singularity},
      {6, "full support at desk scale", 300, full_support},
      {7, "solver against Monte Carlo", 120, solver_vs_monte_carlo},
      {8, "tail certificate", 10, tail_certificate_check},
      {9, "Markov operator basics", 10, markov_basics},
      {10, "continuity trend", 600, continuity_trend},
  };
  int ran = 0, passed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    passed += pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << "  [" << fmt("%.2f", secs) << " s / "
              << c.limit_s << " s" << (in_time ? "" : ", over limit") << "]  " << o.detail << std::endl;
  }
  std::cout << passed << "/" << ran << " criteria passed" << std::endl;
  return passed == ran ? 0 : 1;
}
