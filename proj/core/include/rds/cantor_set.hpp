#pragma once

#include <cstdint>
#include <vector>

#include "rds/rational.hpp"

namespace rds {

/// The set S: a middle-thirds Cantor set on every cell
/// [origin + z*cell_width, origin + (z+1)*cell_width], z in Z.
struct GridCantorSet {
  Rational cell_width{1};
  Rational origin{0};

  /// Left end of cell z.
  [[nodiscard]] Rational cell_start(std::int64_t z) const { return origin + cell_width * z; }
  /// Index of the cell whose half-open span [start, start + width) holds x.
  [[nodiscard]] std::int64_t cell_of(const Rational& x) const;
  /// Same set translated by k cells (S is invariant under this).
  [[nodiscard]] bool same_set_as(const GridCantorSet& other) const;
};

/// m adjacent cells of a GridCantorSet, starting at cell `start_cell`.
struct CantorBlock {
  std::int64_t start_cell = 0;
  std::int64_t cell_count = 1;
};

struct RationalGap {
  Rational left;
  Rational right;
  int generation = 1;
};

/// Whether t in [0,1] lies in the middle-thirds Cantor set. Decided through the
/// (eventually periodic) ternary expansion of t.
bool in_middle_thirds(const Rational& t);

/// Exact membership of x in S.
bool membership(const GridCantorSet& set, const Rational& x);

/// Gaps of generation exactly `generation` (>= 1) of every cell of the block,
/// increasing. Cells are adjacent so no gap separates them.
std::vector<RationalGap> gaps(const GridCantorSet& set, const CantorBlock& block, int generation);

/// Closed level-`level` cover membership for a point t / 3^digits of the unit
/// cell, 0 <= t <= 3^digits, level <= digits.
bool in_level_cover(std::int64_t t, int digits, int level);

/// 3^k as a 64-bit integer (k <= 39).
std::int64_t pow3(int k);

}  // namespace rds
