#include "rds/random_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rds/errors.hpp"
#include "rds/homeomorphism.hpp"

namespace rds {

RandomSystem::RandomSystem(MonotoneMap f0_, MonotoneMap f1_, double p_)
    : f0(std::move(f0_)), f1(std::move(f1_)), p(p_) {}

RandomSystem::RandomSystem(MonotoneMap f0_, MonotoneMap f1_, const Rational& p_)
    : f0(std::move(f0_)), f1(std::move(f1_)), p(to_double(p_)), p_exact(p_) {}

LyapunovReport lyapunov(const RandomSystem& s) {
  LyapunovReport r;
  r.f0_left = s.f0.left_offset();
  r.f0_right = s.f0.right_offset();
  r.f1_left = s.f1.left_offset();
  r.f1_right = s.f1.right_offset();
  r.lambda_minus = s.p * r.f0_left + (1 - s.p) * r.f1_left;
  r.lambda_plus = -s.p * r.f0_right - (1 - s.p) * r.f1_right;
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "undecided";
  }
}

bool ValidityReport::valid() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionResult& c) { return c.verdict == Verdict::pass; });
}

const ConditionResult* ValidityReport::first_failure() const {
  for (const ConditionResult& c : conditions) {
    if (c.verdict != Verdict::pass) return &c;
  }
  return nullptr;
}

namespace {

int sign_of(const std::optional<Rational>& exact_value, double value) {
  if (exact_value) return sgn(*exact_value);
  return value < 0 ? -1 : (value > 0 ? 1 : 0);
}

}  // namespace

Verdict diagonal_side(const MonotoneMap& map, bool below) {
  const int want = below ? -1 : 1;
  if (map.is_composite()) return Verdict::undecided;
  if (sign_of(map.exact_left_offset(), map.left_offset()) != want) return Verdict::fail;
  if (sign_of(map.exact_right_offset(), map.right_offset()) != want) return Verdict::fail;
  bool undecided = false;
  for (const Segment& s : map.segments()) {
    if (const auto* a = std::get_if<AffineSegment>(&s)) {
      // F - id is affine on the piece: its sign is fixed by the endpoints
      if (sgn(Rational(a->y0 - a->x0)) != want || sgn(Rational(a->y1 - a->x1)) != want) {
        return Verdict::fail;
      }
    } else if (const auto* u = std::get_if<UnitAffineSegment>(&s)) {
      // v - u is affine in u and has the sign of F(x) - x
      double d0 = u->y0 - u->x0;
      double d1 = u->y1 - u->x1;
      if ((d0 < 0 ? -1 : (d0 > 0 ? 1 : 0)) != want || (d1 < 0 ? -1 : (d1 > 0 ? 1 : 0)) != want) {
        return Verdict::fail;
      }
    } else {
      const auto& t = std::get<TransportSegment>(s);
      // box strictly on one side of the diagonal
      bool ok = below ? (t.y1 < t.x0) : (t.y0 > t.x1);
      if (!ok) {
        if (below ? (t.y0 >= t.x1) : (t.y1 <= t.x0)) return Verdict::fail;
        undecided = true;
      }
    }
  }
  return undecided ? Verdict::undecided : Verdict::pass;
}

ValidityReport validate(const RandomSystem& s) {
  ValidityReport r;
  r.lyapunov = lyapunov(s);
  r.derivatives_f0 = endpoint_derivatives(s.f0);
  r.derivatives_f1 = endpoint_derivatives(s.f1);
  r.conditions.push_back({"(i)", "F0 and F1 are homeomorphisms", Verdict::pass,
                          "increasing, continuous, translation tails"});
  Verdict below = diagonal_side(s.f0, true);
  r.conditions.push_back({"(ii)", "F0(x) < x for all x", below,
                          below == Verdict::pass ? "" : "F0 meets or crosses the diagonal"});
  Verdict above = diagonal_side(s.f1, false);
  r.conditions.push_back({"(iii)", "F1(x) > x for all x", above,
                          above == Verdict::pass ? "" : "F1 meets or crosses the diagonal"});
  bool p_ok = s.p_exact ? (*s.p_exact > 0 && *s.p_exact < 1) : (s.p > 0 && s.p < 1);
  std::ostringstream pd;
  pd.precision(17);
  pd << "p = " << s.p;
  r.conditions.push_back({"(iv)", "p in (0,1)", p_ok ? Verdict::pass : Verdict::fail, pd.str()});
  std::ostringstream ld;
  ld.precision(17);
  ld << "Lambda_-inf = " << r.lyapunov.lambda_minus << ", Lambda_+inf = " << r.lyapunov.lambda_plus;
  bool lyap_ok = r.lyapunov.lambda_minus > 0 && r.lyapunov.lambda_plus > 0;
  r.conditions.push_back({"(v)", "Lyapunov exponents at both ends positive",
                          lyap_ok ? Verdict::pass : Verdict::fail, ld.str()});
  return r;
}

SystemDistance system_distance(const RandomSystem& a, const RandomSystem& b, int samples,
                               const SupOptions& options) {
  SystemDistance d;
  d.d0_sup = sup_distance(a.f0, b.f0, options);
  d.d1_sup = sup_distance(a.f1, b.f1, options);
  d.dp = (a.p_exact && b.p_exact) ? to_double(abs(*a.p_exact - *b.p_exact)) : std::fabs(a.p - b.p);
  d.d_m_lower = std::max({d.d0_sup.lower, d.d1_sup.lower, d.dp});
  d.d_m_upper = std::max({d.d0_sup.upper, d.d1_sup.upper, d.dp});
  auto unit_sup = [&](const MonotoneMap& f, const MonotoneMap& g) {
    double best = 0.0;
    for (int k = 1; k <= samples; ++k) {
      double u = static_cast<double>(k) / (samples + 1);
      double x = h_forward(u);
      double fu = h_inverse(f.bracket(x, options.depth).mid());
      double gu = h_inverse(g.bracket(x, options.depth).mid());
      best = std::max(best, std::fabs(fu - gu));
    }
    return best;
  };
  d.d_0 = d.dp + unit_sup(a.f0, b.f0) + unit_sup(a.f1, b.f1);
  return d;
}

}  // namespace rds
