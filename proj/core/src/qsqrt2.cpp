#include "rds/qsqrt2.hpp"

#include <cmath>

#include "rds/errors.hpp"

namespace rds {

int QSqrt2::sign() const {
  const int sq = sgn(q);
  const int sr = sgn(r);
  if (sr == 0) return sq;
  if (sq == 0) return sr;
  if (sq == sr) return sq;
  // opposite signs: compare q^2 with 2 r^2 (never equal, sqrt(2) is irrational)
  const int c = cmp(Rational(q * q), Rational(2 * r * r));
  return c > 0 ? sq : sr;
}

double QSqrt2::to_double() const {
  if (r == 0) return rds::to_double(q);
  // the two parts may nearly cancel; long double keeps a few extra bits
  long double v = static_cast<long double>(q.get_d()) +
                  static_cast<long double>(r.get_d()) * std::sqrt(2.0L);
  return static_cast<double>(v);
}

std::string QSqrt2::str() const {
  return rds::to_string(q) + " + " + rds::to_string(r) + "*sqrt(2)";
}

QSqrt2 operator/(const QSqrt2& a, const QSqrt2& b) {
  // multiply by the conjugate q - r sqrt(2)
  const Rational norm = b.q * b.q - 2 * b.r * b.r;
  if (norm == 0) throw DomainError("QSqrt2: division by zero");
  QSqrt2 num = a * QSqrt2(b.q, -b.r);
  return {num.q / norm, num.r / norm};
}

}  // namespace rds
