#pragma once

#include <string>

#include "rds/rational.hpp"

namespace rds {

/// q + r*sqrt(2) with exact rational parts.
struct QSqrt2 {
  Rational q{0};
  Rational r{0};

  QSqrt2() = default;
  QSqrt2(Rational q_, Rational r_ = Rational(0)) : q(std::move(q_)), r(std::move(r_)) {}

  [[nodiscard]] bool is_rational() const { return r == 0; }
  /// Exact sign.
  [[nodiscard]] int sign() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  friend QSqrt2 operator+(const QSqrt2& a, const QSqrt2& b) { return {a.q + b.q, a.r + b.r}; }
  friend QSqrt2 operator-(const QSqrt2& a, const QSqrt2& b) { return {a.q - b.q, a.r - b.r}; }
  friend QSqrt2 operator-(const QSqrt2& a) { return {-a.q, -a.r}; }
  friend QSqrt2 operator*(const QSqrt2& a, const QSqrt2& b) {
    return {a.q * b.q + 2 * a.r * b.r, a.q * b.r + a.r * b.q};
  }
  friend QSqrt2 operator/(const QSqrt2& a, const QSqrt2& b);
  friend bool operator==(const QSqrt2& a, const QSqrt2& b) { return a.q == b.q && a.r == b.r; }
  friend bool operator<(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() >= 0; }
};

using ExactOffset = QSqrt2;

}  // namespace rds
