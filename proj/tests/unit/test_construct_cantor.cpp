#include <algorithm>
#include <random>

#include "doctest.h"
#include "rds/cantor_set.hpp"
#include "rds/construct_cantor.hpp"
#include "systems.hpp"

using namespace rds;
using rds::testing::s_star;

namespace {

const MonotoneMap kDown = MonotoneMap::translation(Rational(-3, 8));
const MonotoneMap kUp = MonotoneMap::translation(Rational(3, 8));

bool same_box(const Box& a, const Box& b) {
  return a.lx == b.lx && a.rx == b.rx && a.ly == b.ly && a.ry == b.ry;
}

Rational R(int n, int d = 1) { return rds::testing::frac(n, d); }

}  // namespace

TEST_SUITE("construct-cantor") {

TEST_CASE("levels for the unit translation example") {
  const ConstructionParams p = choose_levels(kDown, kUp, R(1, 2), Rational(3, 10));
  CHECK(p.M == 3);
  CHECK(p.M_prime == 4);
  CHECK(p.y_spacing() == R(1, 8));
  CHECK(p.x_spacing() == R(1, 16));
  CHECK(p.y_level(0) == R(-1, 2));
  CHECK(p.x_level(16) == R(1, 2));

  const ConstructionParams fine = choose_levels(kDown, kUp, R(1, 2), Rational(1, 100));
  CHECK(fine.M == 8);
  CHECK(fine.M_prime > fine.M);
}

TEST_CASE("box chain of x - 3/8") {
  const ConstructionParams p = choose_levels(kDown, kUp, R(1, 2), Rational(3, 10));
  const BoxChain c = build_boxes(kDown, p, true);
  const std::vector<Box> expected{
      {R(-1, 8), R(0), R(-1, 2), R(-3, 8)}, {R(0), R(1, 8), R(-3, 8), R(-1, 4)},
      {R(1, 8), R(1, 4), R(-1, 4), R(-1, 8)}, {R(1, 4), R(3, 8), R(-1, 8), R(0)},
      {R(3, 8), R(1, 2), R(0), R(1, 8)}};
  REQUIRE(c.boxes.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(same_box(c.boxes[k], expected[k]));
  CHECK(c.Lx == R(-1, 8));
  CHECK(c.Ly == R(-1, 2));
  CHECK(c.Rx == R(1, 2));
  CHECK(c.Ry == R(1, 8));
  // tails of the threaded map reproduce the translation
  CHECK(c.Ly - c.Lx == R(-3, 8));
  CHECK(c.Ry - c.Rx == R(-3, 8));
}

TEST_CASE("mirrored chain is the reflection through the diagonal") {
  const ConstructionParams p = choose_levels(kDown, kUp, R(1, 2), Rational(3, 10));
  const BoxChain below = build_boxes(kDown, p, true);
  const BoxChain above = build_boxes(kUp, p, false);
  REQUIRE(above.boxes.size() == below.boxes.size());
  for (const Box& b : below.boxes) {
    const Box reflected{b.ly, b.ry, b.lx, b.rx};
    CHECK(std::any_of(above.boxes.begin(), above.boxes.end(),
                      [&](const Box& a) { return same_box(a, reflected); }));
  }
}

TEST_CASE("box invariants on S*") {
  const RandomSystem f = s_star();
  const ConstructionParams p = choose_params(f, Rational(1, 10));
  for (bool below : {true, false}) {
    const BoxChain c = build_boxes(below ? f.f0 : f.f1, p, below);
    REQUIRE_FALSE(c.boxes.empty());
    for (std::size_t k = 0; k < c.boxes.size(); ++k) {
      const Box& b = c.boxes[k];
      CHECK(b.ry - b.ly == p.y_spacing());
      CHECK(b.rx > b.lx);
      if (below) CHECK(b.ry < b.lx);
      else CHECK(b.ly > b.rx);
      if (k > 0) {
        // increasing x order: the previous box ends where this one starts
        const Box& prev = c.boxes[k - 1];
        CHECK(prev.rx == b.lx);
        CHECK(prev.ry == b.ly);
      }
    }
    CHECK(c.Lx == c.boxes.front().lx);
    CHECK(c.Ly == c.boxes.front().ly);
    CHECK(c.Rx == c.boxes.back().rx);
    CHECK(c.Ry == c.boxes.back().ry);
  }
}

TEST_CASE("perturb_cantor on S*") {
  const RandomSystem f = s_star();
  const Rational eps(1, 10);
  const CantorPerturbation g = perturb_cantor(f, eps);
  CHECK(g.distance.d_m_upper < 0.1);
  CHECK(g.distance.d_m_lower <= g.distance.d_m_upper);
  CHECK(validate(g.system).valid());
  CHECK(g.system.p == doctest::Approx(0.5));

  // tails are the translations through the entry and exit points
  REQUIRE(g.system.f0.exact_left_offset().has_value());
  CHECK(*g.system.f0.exact_left_offset() == g.chain0.Ly - g.chain0.Lx);
  CHECK(*g.system.f0.exact_right_offset() == g.chain0.Ry - g.chain0.Rx);
  CHECK(*g.system.f1.exact_left_offset() == g.chain1.Ly - g.chain1.Lx);
  CHECK(*g.system.f1.exact_right_offset() == g.chain1.Ry - g.chain1.Rx);
  // tail offsets are whole multiples of the cell width
  const Rational q = (g.chain0.Ly - g.chain0.Lx) / g.set.cell_width;
  CHECK(q.get_den() == 1);
}

TEST_CASE("S is invariant under short words") {
  const CantorPerturbation g = perturb_cantor(s_star(), Rational(1, 10));
  const GridCantorSet& s = g.set;
  std::mt19937_64 rng(9);
  std::vector<Rational> starts;
  for (int k = 0; k < 20; ++k) {
    const std::int64_t cell = std::uniform_int_distribution<std::int64_t>(-200, 200)(rng);
    const int gen = std::uniform_int_distribution<int>(1, 3)(rng);
    const auto gs = gaps(s, {cell, 1}, gen);
    const RationalGap& gap = gs[std::uniform_int_distribution<std::size_t>(0, gs.size() - 1)(rng)];
    starts.push_back(k % 2 == 0 ? gap.left : gap.right);
  }
  for (const Rational& x0 : starts) {
    REQUIRE(membership(s, x0));
    std::vector<Rational> layer{x0};
    for (int len = 1; len <= 3; ++len) {
      std::vector<Rational> next;
      for (const Rational& x : layer) {
        for (int i = 0; i < 2; ++i) {
          const auto y = g.system.map(i).eval_exact(x, 16);
          REQUIRE(y.has_value());
          CHECK(membership(s, *y));
          next.push_back(*y);
        }
      }
      layer = std::move(next);
    }
  }
}

TEST_CASE("random systems stay within the budget") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 3; ++k) {
    const RandomSystem f = rds::testing::random_affine_system(rng);
    REQUIRE(validate(f).valid());
    const CantorPerturbation g = perturb_cantor(f, Rational(1, 2));
    CHECK(g.distance.d_m_upper < 0.5);
    CHECK(validate(g.system).valid());
  }
}

}  // TEST_SUITE
