#include "rds/monte_carlo.hpp"

#include <algorithm>
#include <thread>

#include "rds/errors.hpp"

namespace rds {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double step_map(const RandomSystem& s, int symbol, double x, int depth) {
  const MonotoneMap& f = s.map(symbol);
  if (!f.has_transport() && !f.is_composite()) return f.eval(x);
  return f.bracket(x, depth).mid();
}

int draw(const RandomSystem& s, std::uint64_t seed, std::uint64_t stream, std::uint64_t k) {
  return counter_uniform(seed, stream, k) < s.p ? 0 : 1;
}

}  // namespace

std::uint64_t counter_random(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
  return mix(mix(seed) ^ mix(stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL) ^ step);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
  return static_cast<double>(counter_random(seed, stream, step) >> 11) * 0x1.0p-53;
}

AtomicMeasure monte_carlo_cdf(const RandomSystem& system, const MonteCarloOptions& o) {
  if (o.n_samples <= 0 || o.burn_in <= 0 || o.streams <= 0) {
    throw DomainError("monte_carlo_cdf: sample counts must be positive");
  }
  const std::int64_t streams = std::min(o.streams, o.n_samples);
  std::vector<std::vector<double>> per(static_cast<std::size_t>(streams));
  auto run = [&](std::int64_t s) {
    const std::int64_t n = o.n_samples / streams + (s < o.n_samples % streams ? 1 : 0);
    auto& out = per[static_cast<std::size_t>(s)];
    out.reserve(static_cast<std::size_t>(n));
    double x = o.start;
    const auto stream = static_cast<std::uint64_t>(s);
    std::uint64_t k = 0;
    for (std::int64_t i = 0; i < o.burn_in; ++i, ++k) x = step_map(system, draw(system, o.seed, stream, k), x, o.depth);
    for (std::int64_t i = 0; i < n; ++i, ++k) {
      x = step_map(system, draw(system, o.seed, stream, k), x, o.depth);
      out.push_back(x);
    }
  };
  int threads = o.threads > 0 ? o.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(streams)));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::int64_t s = t; s < streams; s += threads) run(s);
    });
  }
  for (auto& th : pool) th.join();

  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(o.n_samples));
  const double w = 1.0 / static_cast<double>(o.n_samples);
  for (const auto& v : per) {
    for (double x : v) atoms.push_back({x, w});
  }
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure monte_carlo_cdf(const RandomSystem& system, std::int64_t n_samples,
                              std::int64_t burn_in, std::uint64_t seed) {
  MonteCarloOptions o;
  o.n_samples = n_samples;
  o.burn_in = burn_in;
  o.seed = seed;
  return monte_carlo_cdf(system, o);
}

std::vector<OrbitPoint> sample_orbit(const RandomSystem& system, double start, std::int64_t steps,
                                     std::uint64_t seed, int depth) {
  if (steps <= 0) throw DomainError("sample_orbit: steps must be positive");
  std::vector<OrbitPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back({0, -1, start});
  double x = start;
  for (std::int64_t k = 0; k < steps; ++k) {
    const int i = draw(system, seed, 0, static_cast<std::uint64_t>(k));
    x = step_map(system, i, x, depth);
    out.push_back({k + 1, i, x});
  }
  return out;
}

}  // namespace rds
