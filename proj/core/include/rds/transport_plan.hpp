#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rds/cantor_set.hpp"
#include "rds/interval.hpp"
#include "rds/rational.hpp"

namespace rds {

/// Local block coordinate. Partner generations grow about twice as fast as
/// the refinement depth, so 64-bit integers run out of ternary digits early.
__extension__ using LocalInt = __int128;

/// Decimal text of a local coordinate.
std::string to_string(LocalInt value);
/// Exact rational value of a local coordinate.
Rational to_rational(LocalInt value);

/// A gap of a block in local integer coordinates: units of cell_width * 3^-kScaleDigits
/// measured from the left end of the block.
struct LocalGap {
  int generation = 1;
  LocalInt left = 0;
  LocalInt right = 0;
};

/// Order-preserving homeomorphism between two Cantor blocks, built by
/// deterministic back-and-forth gap matching.
///
/// Steps alternate forth (source side) and back (target side). Each step
/// takes the next unmatched gap of its side in (generation, left endpoint)
/// order and pairs it with the least-generation, then leftmost, gap of the
/// other side lying between the images of its matched neighbours. Matched gap
/// closures map affinely onto each other, so gap endpoints map to gap
/// endpoints exactly. Depth d means every gap of generation <= d on both
/// sides is matched; the state at depth d is a fixed prefix of one infinite
/// step sequence, so results never depend on the order of refinement requests.
///
/// Refinement is serialised by a mutex. Lookup tables are published once per
/// depth and read without locking.
class TransportPlan {
 public:
  static constexpr int kScaleDigits = 64;
  // pairs grow as cells * 2^depth; depth 20 is about 1 GB for two cells
  static constexpr int kMaxDepth = 20;

  struct MatchedPair {
    LocalGap source;
    LocalGap target;
  };

  TransportPlan(GridCantorSet source_set, CantorBlock source, GridCantorSet target_set,
                CantorBlock target);
  ~TransportPlan();

  TransportPlan(const TransportPlan&) = delete;
  TransportPlan& operator=(const TransportPlan&) = delete;

  [[nodiscard]] const GridCantorSet& source_set() const { return source_set_; }
  [[nodiscard]] const GridCantorSet& target_set() const { return target_set_; }
  [[nodiscard]] const CantorBlock& source_block() const { return source_; }
  [[nodiscard]] const CantorBlock& target_block() const { return target_; }

  [[nodiscard]] Rational source_lo() const;
  [[nodiscard]] Rational source_hi() const;
  [[nodiscard]] Rational target_lo() const;
  [[nodiscard]] Rational target_hi() const;

  /// Certified enclosure of the image of x at refinement depth `depth`.
  [[nodiscard]] Interval bracket(double x, int depth) const;
  /// Certified enclosure of the preimage of y at refinement depth `depth`.
  [[nodiscard]] Interval inverse_bracket(double y, int depth) const;

  /// Exact image of a point lying in the closure of some gap (or at a block
  /// end). Refines up to max_depth; nullopt when x is not resolved by then.
  [[nodiscard]] std::optional<Rational> eval_exact(const Rational& x, int max_depth = 16) const;
  [[nodiscard]] std::optional<Rational> inverse_exact(const Rational& y, int max_depth = 16) const;

  /// Matched pairs at depth d, in matching order.
  [[nodiscard]] std::vector<MatchedPair> pairs(int depth) const;
  /// Pairs as absolute rational gaps (source, target).
  [[nodiscard]] std::vector<std::pair<RationalGap, RationalGap>> rational_pairs(int depth) const;

  void refine_to(int depth) const;

  /// Absolute coordinate of a local integer coordinate.
  [[nodiscard]] Rational source_point(LocalInt local) const;
  [[nodiscard]] Rational target_point(LocalInt local) const;

 private:
  struct Cursor {
    int generation = 1;
    std::int64_t cell = 0;
    LocalInt index = 0;
  };
  struct Table {
    std::vector<double> src_left, src_right, dst_left, dst_right;
  };

  [[nodiscard]] const Table& table(int depth) const;
  void refine_locked(int depth) const;
  void step_locked(bool forth) const;
  [[nodiscard]] std::optional<Rational> map_exact(const Rational& x, bool forward,
                                                  int max_depth) const;

  GridCantorSet source_set_;
  CantorBlock source_;
  GridCantorSet target_set_;
  CantorBlock target_;
  Rational src_lo_, dst_lo_, src_unit_, dst_unit_;  // block left ends and local units
  LocalInt src_len_ = 0, dst_len_ = 0;                // block lengths in local units
  double src_lo_d_ = 0, src_hi_d_ = 0, dst_lo_d_ = 0, dst_hi_d_ = 0;
  double src_unit_d_ = 0, dst_unit_d_ = 0;

  mutable std::mutex mutex_;
  mutable std::vector<MatchedPair> pairs_;
  mutable std::vector<std::array<double, 4>> coords_;  // rounded ends of each pair, src then dst
  mutable std::map<LocalInt, std::size_t> by_source_;
  mutable std::map<LocalInt, std::size_t> by_target_;
  mutable Cursor cursor_src_;
  mutable Cursor cursor_dst_;
  mutable std::vector<std::size_t> prefix_;  // prefix_[d] = pair count when depth d was reached
  mutable std::array<std::atomic<const Table*>, kMaxDepth + 1> tables_{};
  mutable std::vector<std::unique_ptr<Table>> owned_tables_;
};

}  // namespace rds
