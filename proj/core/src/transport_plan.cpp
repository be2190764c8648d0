#include "rds/transport_plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rds/errors.hpp"

namespace rds {

std::string to_string(LocalInt value) {
  if (value == 0) return "0";
  const bool neg = value < 0;
  unsigned __int128 m = neg ? -static_cast<unsigned __int128>(value) : static_cast<unsigned __int128>(value);
  std::string out;
  while (m != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
    m /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

Rational to_rational(LocalInt value) {
  const bool neg = value < 0;
  const unsigned __int128 m = neg ? -static_cast<unsigned __int128>(value) : static_cast<unsigned __int128>(value);
  BigInt z(static_cast<unsigned long>(m >> 64));
  z <<= 64;
  z += static_cast<unsigned long>(m & ~std::uint64_t{0});
  return Rational(neg ? BigInt(-z) : z);
}

namespace {

constexpr int kDigits = TransportPlan::kScaleDigits;

// [lo, hi] is one cell of the triadic construction in local units
bool whole_cell(LocalInt lo, LocalInt hi) {
  const LocalInt w = hi - lo;
  LocalInt p = 1;
  for (int k = 0; k <= kDigits; ++k, p *= 3) {
    if (p == w) return lo % p == 0;
    if (p > w) return false;
  }
  return false;
}

LocalInt from_big(const BigInt& z) {
  BigInt m = abs(z);
  const unsigned long lo = mpz_getlimbn(m.get_mpz_t(), 0);
  const unsigned long hi = mpz_size(m.get_mpz_t()) > 1 ? mpz_getlimbn(m.get_mpz_t(), 1) : 0;
  if (mpz_size(m.get_mpz_t()) > 2 || (hi >> 63) != 0) throw DomainError("order_homeo: coordinate out of range");
  const LocalInt v = (static_cast<LocalInt>(hi) << 64) | lo;
  return z < 0 ? -v : v;
}

constexpr LocalInt pow3w(int k) {
  LocalInt r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

LocalInt floor_div_wide(LocalInt a, LocalInt b) {
  LocalInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Smallest r' >= r (r < 3^n) whose n low ternary digits avoid 1.
LocalInt next_without_one(LocalInt r, int n) {
  LocalInt place = pow3w(n) / 3;
  LocalInt out = 0;
  for (int k = 0; k < n; ++k, place /= 3) {
    LocalInt d = (r / place) % 3;
    if (d == 1) return out + 2 * place;
    out += d * place;
  }
  return out;
}

// Left endpoint of the generation-g gap number t (0-based, left to right) of cell c.
LocalGap gap_of(int g, std::int64_t cell, LocalInt t) {
  const LocalInt w = pow3w(kDigits + 1 - g);  // level g-1 interval
  LocalInt k = 0;
  LocalInt place = 1;
  for (int j = 0; j < g - 1; ++j, place *= 3) {
    if ((t >> j) & 1) k += 2 * place;
  }
  LocalInt left = cell * pow3w(kDigits) + k * w + w / 3;
  return {g, left, left + w / 3};
}

// Least-generation, then leftmost, gap of a block of `cells` cells with lo < left and right < hi.
std::optional<LocalGap> least_gap_between(LocalInt lo, LocalInt hi, std::int64_t cells) {
  for (int g = 1; g <= kDigits; ++g) {
    const LocalInt w = pow3w(kDigits + 1 - g);
    const LocalInt third = w / 3;
    LocalInt k0 = floor_div_wide(lo - third, w) + 1;
    if (k0 < 0) k0 = 0;
    const LocalInt per_cell = pow3w(g - 1);
    LocalInt q = k0 / per_cell;
    LocalInt r = next_without_one(k0 % per_cell, g - 1);
    if (q >= cells) continue;
    LocalInt left = (q * per_cell + r) * w + third;
    if (left + third < hi) return LocalGap{g, left, left + third};
  }
  return std::nullopt;
}

struct CursorOps {
  static void advance(int& g, std::int64_t& cell, LocalInt& t, std::int64_t cells) {
    ++t;
    if (t == (LocalInt{1} << (g - 1))) {
      t = 0;
      ++cell;
      if (cell == cells) {
        cell = 0;
        ++g;
      }
    }
  }
};

double slack_for(double a, double b) {
  return 8 * std::numeric_limits<double>::epsilon() * (std::fabs(a) + std::fabs(b) + 1.0);
}

}  // namespace

TransportPlan::TransportPlan(GridCantorSet source_set, CantorBlock source,
                             GridCantorSet target_set, CantorBlock target)
    : source_set_(std::move(source_set)),
      source_(source),
      target_set_(std::move(target_set)),
      target_(target) {
  if (source_.cell_count < 1 || target_.cell_count < 1) {
    throw DomainError("order_homeo: empty block");
  }
  const LocalInt wide_max = ~(LocalInt{1} << 127);
  const LocalInt limit = wide_max / pow3w(kDigits) - 1;
  if (source_.cell_count > limit || target_.cell_count > limit) {
    throw DomainError("order_homeo: block too large");
  }
  if (source_set_.cell_width <= 0 || target_set_.cell_width <= 0) {
    throw DomainError("order_homeo: non-positive cell width");
  }
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 3, kDigits);
  static_assert(kDigits <= 78, "local coordinates must fit 127 bits");
  src_lo_ = source_set_.cell_start(source_.start_cell);
  dst_lo_ = target_set_.cell_start(target_.start_cell);
  src_unit_ = source_set_.cell_width / Rational(scale);
  dst_unit_ = target_set_.cell_width / Rational(scale);
  src_len_ = source_.cell_count * pow3w(kDigits);
  dst_len_ = target_.cell_count * pow3w(kDigits);
  src_lo_d_ = to_double(src_lo_);
  src_hi_d_ = to_double(source_hi());
  dst_lo_d_ = to_double(dst_lo_);
  dst_hi_d_ = to_double(target_hi());
  src_unit_d_ = to_double(src_unit_);
  dst_unit_d_ = to_double(dst_unit_);
  prefix_.push_back(0);
  auto t0 = std::make_unique<Table>();
  tables_[0].store(t0.get(), std::memory_order_release);
  owned_tables_.push_back(std::move(t0));
}

TransportPlan::~TransportPlan() = default;

Rational TransportPlan::source_lo() const { return src_lo_; }
Rational TransportPlan::source_hi() const {
  return source_set_.cell_start(source_.start_cell + source_.cell_count);
}
Rational TransportPlan::target_lo() const { return dst_lo_; }
Rational TransportPlan::target_hi() const {
  return target_set_.cell_start(target_.start_cell + target_.cell_count);
}

Rational TransportPlan::source_point(LocalInt local) const { return src_lo_ + src_unit_ * to_rational(local); }
Rational TransportPlan::target_point(LocalInt local) const { return dst_lo_ + dst_unit_ * to_rational(local); }

void TransportPlan::step_locked(bool forth) const {
  Cursor& cur = forth ? cursor_src_ : cursor_dst_;
  auto& own = forth ? by_source_ : by_target_;
  const std::int64_t own_cells = forth ? source_.cell_count : target_.cell_count;
  const std::int64_t other_cells = forth ? target_.cell_count : source_.cell_count;
  const LocalInt other_len = forth ? dst_len_ : src_len_;

  // skip gaps already matched from the other side
  LocalGap g = gap_of(cur.generation, cur.cell, cur.index);
  while (own.count(g.left) != 0) {
    CursorOps::advance(cur.generation, cur.cell, cur.index, own_cells);
    if (cur.generation > kDigits) throw ConstructionError("order_homeo: resolution exhausted");
    g = gap_of(cur.generation, cur.cell, cur.index);
  }

  LocalInt lo = 0;
  LocalInt hi = other_len;
  auto next = own.upper_bound(g.left);
  if (next != own.end()) {
    const MatchedPair& m = pairs_[next->second];
    hi = forth ? m.target.left : m.source.left;
  }
  if (next != own.begin()) {
    const MatchedPair& m = pairs_[std::prev(next)->second];
    lo = forth ? m.target.right : m.source.right;
  }
  auto partner = least_gap_between(lo, hi, other_cells);
  if (!partner) throw ConstructionError("order_homeo: no admissible partner gap");

  MatchedPair pair = forth ? MatchedPair{g, *partner} : MatchedPair{*partner, g};
  pairs_.push_back(pair);
  // a few ulps off the exact ends; bracket slack covers it
  auto src = [this](LocalInt u) { return src_lo_d_ + static_cast<double>(u) * src_unit_d_; };
  auto dst = [this](LocalInt u) { return dst_lo_d_ + static_cast<double>(u) * dst_unit_d_; };
  coords_.push_back({src(pair.source.left), src(pair.source.right), dst(pair.target.left), dst(pair.target.right)});
  by_source_.emplace(pair.source.left, pairs_.size() - 1);
  by_target_.emplace(pair.target.left, pairs_.size() - 1);
  CursorOps::advance(cur.generation, cur.cell, cur.index, own_cells);
}

void TransportPlan::refine_locked(int depth) const {
  if (depth > kMaxDepth) throw DomainError("order_homeo: depth above maximum");
  auto cursor_past = [this](Cursor& c, const std::map<LocalInt, std::size_t>& own,
                            std::int64_t cells) {
    while (c.generation <= kDigits && own.count(gap_of(c.generation, c.cell, c.index).left) != 0) {
      CursorOps::advance(c.generation, c.cell, c.index, cells);
    }
    return c.generation;
  };
  while (static_cast<int>(prefix_.size()) <= depth) {
    const int d = static_cast<int>(prefix_.size());
    int gs = cursor_past(cursor_src_, by_source_, source_.cell_count);
    int gt = cursor_past(cursor_dst_, by_target_, target_.cell_count);
    if (gs > d && gt > d) {
      prefix_.push_back(pairs_.size());
      std::vector<std::size_t> order(pairs_.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        return pairs_[a].source.left < pairs_[b].source.left;
      });
      auto t = std::make_unique<Table>();
      for (std::size_t i : order) {
        t->src_left.push_back(coords_[i][0]);
        t->src_right.push_back(coords_[i][1]);
        t->dst_left.push_back(coords_[i][2]);
        t->dst_right.push_back(coords_[i][3]);
      }
      tables_[d].store(t.get(), std::memory_order_release);
      owned_tables_.push_back(std::move(t));
      continue;
    }
    step_locked(true);
    step_locked(false);
  }
}

void TransportPlan::refine_to(int depth) const {
  if (depth < 0) throw DomainError("order_homeo: negative depth");
  if (depth <= kMaxDepth && tables_[depth].load(std::memory_order_acquire) != nullptr) return;
  std::lock_guard<std::mutex> lock(mutex_);
  refine_locked(depth);
}

const TransportPlan::Table& TransportPlan::table(int depth) const {
  if (depth < 0 || depth > kMaxDepth) throw DomainError("order_homeo: depth out of range");
  const Table* t = tables_[depth].load(std::memory_order_acquire);
  if (t == nullptr) {
    refine_to(depth);
    t = tables_[depth].load(std::memory_order_acquire);
  }
  return *t;
}

namespace {

Interval bracket_in(const std::vector<double>& al, const std::vector<double>& ar,
                    const std::vector<double>& bl, const std::vector<double>& br, double a_lo,
                    double a_hi, double b_lo, double b_hi, double x) {
  if (x <= a_lo) return Interval::point(b_lo);
  if (x >= a_hi) return Interval::point(b_hi);
  auto it = std::upper_bound(al.begin(), al.end(), x);
  std::ptrdiff_t k = (it - al.begin()) - 1;
  if (k >= 0 && x <= ar[k]) {
    const double slope = (br[k] - bl[k]) / (ar[k] - al[k]);
    double y = bl[k] + (x - al[k]) * slope;
    double s = slack_for(bl[k], br[k]) * std::max(1.0, slope);
    return {std::max(bl[k], y - s), std::min(br[k], y + s)};
  }
  double lo = k >= 0 ? br[k] : b_lo;
  double hi = static_cast<std::size_t>(k + 1) < bl.size() ? bl[k + 1] : b_hi;
  double s = slack_for(lo, hi);
  return {std::max(b_lo, lo - s), std::min(b_hi, hi + s)};
}

}  // namespace

Interval TransportPlan::bracket(double x, int depth) const {
  const Table& t = table(depth);
  return bracket_in(t.src_left, t.src_right, t.dst_left, t.dst_right, src_lo_d_, src_hi_d_,
                    dst_lo_d_, dst_hi_d_, x);
}

Interval TransportPlan::inverse_bracket(double y, int depth) const {
  const Table& t = table(depth);
  return bracket_in(t.dst_left, t.dst_right, t.src_left, t.src_right, dst_lo_d_, dst_hi_d_,
                    src_lo_d_, src_hi_d_, y);
}

std::optional<Rational> TransportPlan::map_exact(const Rational& x, bool forward,
                                                 int max_depth) const {
  const Rational& lo = forward ? src_lo_ : dst_lo_;
  const Rational& unit = forward ? src_unit_ : dst_unit_;
  const Rational len = to_rational(forward ? src_len_ : dst_len_);
  Rational u = (x - lo) / unit;
  if (u < 0 || u > len) return std::nullopt;
  if (u == 0) return forward ? target_lo() : source_lo();
  if (u == len) return forward ? target_hi() : source_hi();
  const LocalInt fl = from_big(floor_div(u));
  std::lock_guard<std::mutex> lock(mutex_);
  const int top = std::min(max_depth, kMaxDepth);
  for (int d = 1; d <= top; ++d) {
    refine_locked(d);
    const auto& own = forward ? by_source_ : by_target_;
    auto it = own.upper_bound(fl);
    LocalInt a_lo = 0, a_hi = forward ? src_len_ : dst_len_;
    LocalInt b_lo = 0, b_hi = forward ? dst_len_ : src_len_;
    bool inside_gap = false;
    if (it != own.begin()) {
      const MatchedPair& m = pairs_[std::prev(it)->second];
      const LocalGap& a = forward ? m.source : m.target;
      const LocalGap& b = forward ? m.target : m.source;
      inside_gap = u <= to_rational(a.right);
      a_lo = inside_gap ? a.left : a.right;
      b_lo = inside_gap ? b.left : b.right;
      if (inside_gap) {
        a_hi = a.right;
        b_hi = b.right;
      }
    }
    if (!inside_gap) {
      if (it != own.end()) {
        const MatchedPair& m = pairs_[it->second];
        a_hi = forward ? m.source.left : m.target.left;
        b_hi = forward ? m.target.left : m.source.left;
      }
      // nothing matched inside two whole cells yet; the matching there is the
      // same at every scale, so the map is affine on them
      if (!whole_cell(a_lo, a_hi) || !whole_cell(b_lo, b_hi)) continue;
    }
    Rational frac = (u - to_rational(a_lo)) / to_rational(a_hi - a_lo);
    Rational v = to_rational(b_lo) + frac * to_rational(b_hi - b_lo);
    return forward ? target_point(0) + dst_unit_ * v : source_point(0) + src_unit_ * v;
  }
  return std::nullopt;
}

std::optional<Rational> TransportPlan::eval_exact(const Rational& x, int max_depth) const {
  return map_exact(x, true, max_depth);
}

std::optional<Rational> TransportPlan::inverse_exact(const Rational& y, int max_depth) const {
  return map_exact(y, false, max_depth);
}

std::vector<TransportPlan::MatchedPair> TransportPlan::pairs(int depth) const {
  refine_to(depth);
  std::lock_guard<std::mutex> lock(mutex_);
  return {pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(prefix_[depth])};
}

std::vector<std::pair<RationalGap, RationalGap>> TransportPlan::rational_pairs(int depth) const {
  std::vector<std::pair<RationalGap, RationalGap>> out;
  for (const MatchedPair& m : pairs(depth)) {
    out.push_back({{source_point(m.source.left), source_point(m.source.right), m.source.generation},
                   {target_point(m.target.left), target_point(m.target.right),
                    m.target.generation}});
  }
  return out;
}

}  // namespace rds
