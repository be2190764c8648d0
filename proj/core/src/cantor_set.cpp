#include "rds/cantor_set.hpp"

#include <set>
#include <stdexcept>

#include "rds/errors.hpp"

namespace rds {

std::int64_t pow3(int k) {
  if (k < 0 || k > 39) throw std::out_of_range("pow3 exponent");
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

std::int64_t GridCantorSet::cell_of(const Rational& x) const {
  return to_int64(floor_div((x - origin) / cell_width));
}

bool GridCantorSet::same_set_as(const GridCantorSet& other) const {
  if (cell_width != other.cell_width) return false;
  Rational shift = (origin - other.origin) / cell_width;
  return shift.get_den() == 1;
}

bool in_middle_thirds(const Rational& t_in) {
  Rational t = t_in;
  t.canonicalize();
  if (t < 0 || t > 1) return false;
  // Digits of t in base 3 with the convention that a terminating expansion
  // 0.d1..dk1 equals 0.d1..dk0222..., which is in C when d1..dk avoid 1.
  BigInt num = t.get_num();
  const BigInt den = t.get_den();
  std::set<BigInt> seen;
  while (true) {
    if (num == 0 || num == den) return true;
    if (!seen.insert(num).second) return true;  // periodic with no digit 1 so far
    BigInt three = num * 3;
    BigInt digit = three / den;
    BigInt rest = three - digit * den;
    if (digit == 1) return rest == 0;
    num = rest;
  }
}

bool membership(const GridCantorSet& set, const Rational& x) {
  Rational u = (x - set.origin) / set.cell_width;
  BigInt cell = floor_div(u);
  Rational t = u - Rational(cell);
  return in_middle_thirds(t);
}

std::vector<RationalGap> gaps(const GridCantorSet& set, const CantorBlock& block, int generation) {
  if (generation < 1) throw DomainError("gaps: generation must be >= 1");
  if (block.cell_count < 1) throw DomainError("gaps: empty block");
  std::vector<RationalGap> out;
  BigInt p3;
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(generation));
  const Rational len = set.cell_width / Rational(p3);
  const std::int64_t per_cell = std::int64_t{1} << (generation - 1);
  out.reserve(static_cast<std::size_t>(per_cell * block.cell_count));
  for (std::int64_t c = 0; c < block.cell_count; ++c) {
    const Rational base = set.cell_start(block.start_cell + c);
    for (std::int64_t t = 0; t < per_cell; ++t) {
      // bits of t (most significant first) choose the left or right third
      Rational left = base;
      Rational scale = set.cell_width;
      for (int k = generation - 2; k >= 0; --k) {
        scale /= 3;
        if ((t >> k) & 1) left += 2 * scale;
      }
      left += len;
      out.push_back({left, left + len, generation});
    }
  }
  return out;
}

bool in_level_cover(std::int64_t t, int digits, int level) {
  if (t < 0) return false;
  std::int64_t full = pow3(digits);
  if (t > full) return false;
  if (t == full) return true;
  // ternary digits most significant first
  std::int64_t place = full / 3;
  for (int k = 1; k <= level; ++k) {
    std::int64_t d = t / place;
    t -= d * place;
    if (d == 1) return t == 0;  // 0.x1000... equals 0.x0222...
    place /= 3;
  }
  return true;
}

}  // namespace rds
