#include "rds/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rds/errors.hpp"

namespace rds {

Rational exact(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("exact: non-finite double");
  }
  // mpq_set_d is exact for finite doubles.
  Rational q(value);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw ParseError("empty rational literal");
  try {
    auto dot = s.find('.');
    auto exp = s.find_first_of("eE");
    if (dot == std::string::npos && exp == std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
      q.canonicalize();
      return q;
    }
    // decimal literal: mantissa with optional exponent
    std::string mant = exp == std::string::npos ? s : s.substr(0, exp);
    long e10 = exp == std::string::npos ? 0 : std::stol(s.substr(exp + 1));
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant.erase(mant.begin());
    std::string digits;
    long frac_len = 0;
    bool after = false;
    for (char c : mant) {
      if (c == '.') {
        if (after) throw ParseError("bad decimal '" + s + "'");
        after = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad decimal '" + s + "'");
      digits.push_back(c);
      if (after) ++frac_len;
    }
    if (digits.empty()) throw ParseError("bad decimal '" + s + "'");
    BigInt num(digits, 10);
    long scale = e10 - frac_len;
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    Rational q = scale >= 0 ? Rational(num * p10) : Rational(num, p10);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  return q.get_str(10);
}

double to_double(const Rational& value) {
  // get_d truncates; step to the neighbour when it is nearer
  const double d = value.get_d();
  const Rational e = exact(d);
  if (e == value || !std::isfinite(d)) return d;
  const double n = std::nextafter(d, value > e ? HUGE_VAL : -HUGE_VAL);
  return abs(value - e) <= abs(exact(n) - value) ? d : n;
}

Rational pow2(int exponent) {
  Rational q(1);
  if (exponent >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(exponent));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-exponent));
  }
  return q;
}

BigInt floor_div(const Rational& value) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

std::int64_t to_int64(const BigInt& value) {
  if (!value.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<std::int64_t>(value.get_si());
}

}  // namespace rds
