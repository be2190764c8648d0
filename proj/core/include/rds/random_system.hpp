#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rds/monotone_map.hpp"
#include "rds/rational.hpp"

namespace rds {

/// (F0, F1, p): F0 is applied with probability p.
struct RandomSystem {
  MonotoneMap f0;
  MonotoneMap f1;
  double p = 0.5;
  std::optional<Rational> p_exact;

  RandomSystem() = default;
  RandomSystem(MonotoneMap f0_, MonotoneMap f1_, double p_);
  RandomSystem(MonotoneMap f0_, MonotoneMap f1_, const Rational& p_);

  [[nodiscard]] const MonotoneMap& map(int i) const { return i == 0 ? f0 : f1; }
};

struct LyapunovReport {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double f0_left = 0.0, f0_right = 0.0, f1_left = 0.0, f1_right = 0.0;
};

LyapunovReport lyapunov(const RandomSystem& system);

enum class Verdict { pass, fail, undecided };

std::string to_string(Verdict v);

struct ConditionResult {
  std::string name;  // "(i)" ... "(v)"
  std::string description;
  Verdict verdict = Verdict::undecided;
  std::string detail;
};

struct ValidityReport {
  std::vector<ConditionResult> conditions;
  LyapunovReport lyapunov;
  std::pair<double, double> derivatives_f0;
  std::pair<double, double> derivatives_f1;

  [[nodiscard]] bool valid() const;
  /// First condition that does not pass, if any.
  [[nodiscard]] const ConditionResult* first_failure() const;
};

/// Whether F(x) < x (below) or F(x) > x (above) for every real x; undecided
/// only for lazy compositions.
Verdict diagonal_side(const MonotoneMap& map, bool below);

ValidityReport validate(const RandomSystem& system);

struct SystemDistance {
  SupBounds d0_sup;  // sup |F0 - G0|
  SupBounds d1_sup;  // sup |F1 - G1|
  double dp = 0.0;
  double d_m_lower = 0.0;
  double d_m_upper = 0.0;
  double d_0 = 0.0;  // sampled, unit coordinates
};

/// d_m = max(sup|F0 - G0|, sup|F1 - G1|, |p - q|); d_0 sampled in unit coordinates
/// on `samples` points.
SystemDistance system_distance(const RandomSystem& a, const RandomSystem& b, int samples = 20000,
                               const SupOptions& options = {});

}  // namespace rds
