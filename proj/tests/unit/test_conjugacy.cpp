#include <cmath>
#include <random>

#include "doctest.h"
#include "rds/conjugacy.hpp"
#include "rds/errors.hpp"
#include "rds/homeomorphism.hpp"
#include "rds/measure.hpp"
#include "systems.hpp"

using namespace rds;
using rds::testing::h_oracle;

TEST_SUITE("conjugacy") {

TEST_CASE("h at the reference points") {
  CHECK(h_forward(0.5) == 0.0);
  CHECK(h_forward(0.25) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(h_forward(0.75) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(h_inverse(0.0) == 0.5);
  CHECK(h_inverse(-std::log(2.0)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(h_inverse(std::log(2.0)) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("unit points exclude the endpoints") {
  CHECK_THROWS_AS(UnitPoint(0.0), DomainError);
  CHECK_THROWS_AS(UnitPoint(1.0), DomainError);
  CHECK_THROWS_AS(h_forward(UnitPoint(-0.1)), DomainError);
  CHECK_THROWS_AS(dh(0.0, 0.5), DomainError);
  CHECK(h_forward(UnitPoint(0.5)) == 0.0);
}

TEST_CASE("d_h examples") {
  CHECK(dh(0.3, 0.3) == 0.0);
  CHECK(dh(0.125, 0.25) == doctest::Approx(std::log(2.0)));
  CHECK(dh(0.25, 0.75) == doctest::Approx(2 * std::log(2.0)));
}

TEST_CASE("round trip, monotonicity and metric domination on samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(1e-9, 1 - 1e-9);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double x = U(rng);
    const double y = U(rng);
    worst = std::max(worst, std::fabs(h_inverse(h_forward(x)) - x));
    CHECK(h_forward(x) == doctest::Approx(h_oracle(x)).epsilon(1e-13));
    if (x < y) CHECK(h_forward(x) < h_forward(y));
    CHECK(std::fabs(x - y) <= dh(x, y) + 1e-15);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("identity transports to the identity") {
  const MonotoneMap F = transport_map(UnitPiecewiseLinear{{{0, 0}, {1, 1}}});
  CHECK(F.is_translation());
  CHECK(F.left_offset() == 0.0);
  CHECK(F.eval(3.7) == 3.7);
}

TEST_CASE("tail offsets of x/2, (3x-1)/2") {
  const UnitPiecewiseLinear f{{{0, 0}, {0.5, 0.25}, {1, 1}}};
  const MonotoneMap F = transport_map(f);
  CHECK(F.left_offset() == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(F.right_offset() == doctest::Approx(-std::log(1.5)).epsilon(1e-15));
  // pointwise against h o f o h^-1 computed directly; the double oracle
  // loses digits to cancellation far out, the tails are checked below
  for (double x = -8; x <= 8; x += 0.37) {
    const double expect = h_oracle(rds::testing::pl_eval(f.points, rds::testing::h_inverse_oracle(x)));
    CHECK(F.eval(x) == doctest::Approx(expect).epsilon(1e-12));
  }
  // translation far out in both tails
  CHECK(F.eval(-50) - (-50) == doctest::Approx(-std::log(2.0)));
  CHECK(F.eval(50) - 50 == doctest::Approx(-std::log(1.5)));
}

TEST_CASE("linear germ of slope l gives left offset log l") {
  for (double l : {0.2, 0.9, 3.0}) {
    const UnitPiecewiseLinear f{{{0, 0}, {0.1, 0.1 * l}, {1, 1}}};
    CHECK(transport_map(f).left_offset() == doctest::Approx(std::log(l)).epsilon(1e-15));
  }
}

TEST_CASE("degenerate descriptions are rejected") {
  CHECK_THROWS_AS(transport_map(UnitPiecewiseLinear{{{0, 0}, {0.5, 0.0}, {1, 1}}}), InvalidMapError);
  CHECK_THROWS_AS(transport_map(UnitPiecewiseLinear{{{0, 0}, {0.5, 0.7}, {0.4, 0.8}, {1, 1}}}), InvalidMapError);
  CHECK_THROWS_AS(transport_map(UnitPiecewiseLinear{{{0, 0.1}, {1, 1}}}), InvalidMapError);
}

TEST_CASE("inverse transport recovers the unit map") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const UnitPiecewiseLinear f = rds::testing::random_unit_map(rng, 3);
    const UnitMap back = inverse_transport(transport_map(f));
    for (double u = 0.01; u < 1; u += 0.049) CHECK(back(u) == doctest::Approx(f(u)).epsilon(1e-12));
    auto form = unit_form(transport_map(f));
    REQUIRE(form.has_value());
    for (double u = 0.01; u < 1; u += 0.049) CHECK((*form)(u) == doctest::Approx(f(u)).epsilon(1e-12));
  }
}

TEST_CASE("pushforward of Dirac masses") {
  const AtomicMeasure half = pushforward_to_real(AtomicMeasure::dirac(0.5));
  CHECK(half.atoms().at(0).x == 0.0);
  const AtomicMeasure mix = pushforward_to_real(AtomicMeasure({{0.25, 0.5}, {0.75, 0.5}}));
  REQUIRE(mix.size() == 2);
  CHECK(mix.atoms()[0].x == doctest::Approx(-std::log(2.0)));
  CHECK(mix.atoms()[1].x == doctest::Approx(std::log(2.0)));
  CHECK(mix.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
  const AtomicMeasure back = pushforward_to_unit(mix);
  CHECK(back.atoms()[0].x == doctest::Approx(0.25));
}

TEST_CASE("isometry hook: sup over the line equals the unit-coordinate sup of d_h") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const UnitPiecewiseLinear f = rds::testing::random_unit_map(rng, 2);
    const UnitPiecewiseLinear g = rds::testing::random_unit_map(rng, 3);
    double sampled = 0.0;
    for (int k = 1; k < 20000; ++k) {
      const double u = k / 20000.0;
      sampled = std::max(sampled, std::fabs(h_oracle(f(u)) - h_oracle(g(u))));
    }
    const SupBounds b = sup_distance(transport_map(f), transport_map(g));
    CHECK(b.exact);
    CHECK(b.upper >= sampled - 1e-12);
    CHECK(b.upper <= sampled + 1e-3);
  }
}

}  // TEST_SUITE
