#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "clockxy/constructions.hpp"
#include "clockxy/energy.hpp"
#include "clockxy/runtime.hpp"
#include "support/oracles.hpp"

using namespace clockxy;
using clockxy::testing::random_field;
using clockxy::testing::xy_direct;

namespace {

SpinField two_column_interface(int m, double eps, DiscreteCircle c, int dk) {
  auto dom = build_domain(Shape::rectangle({0.0, 0.0}, {2.0 * eps, m * eps}), eps);
  SpinField f = constant_field(dom, c, 0);
  for (int id = 0; id < dom->site_count(); ++id)
    if (dom->site(id).first == 1) f.states[id] = c.wrap_state(dk);
  return f;
}

}  // namespace

TEST_CASE("xy_energy basic values") {
  auto c = DiscreteCircle::with_states(16);

  SUBCASE("constant field is the minimum") {
    auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), 0.125);
    CHECK(xy_energy(constant_field(dom, c, 3)).xy_total == 0.0);
  }

  SUBCASE("single antipodal bond") {
    double eps = 0.1;
    auto dom = build_domain(Shape::rectangle({0.0, 0.0}, {2.0 * eps, eps}), eps);
    auto c2 = DiscreteCircle::with_states(2);
    SpinField f = constant_field(dom, c2, 0);
    f.states[1] = 1;
    CHECK(xy_energy(f).xy_total == doctest::Approx(eps * eps * 4.0).epsilon(1e-14));
  }

  SUBCASE("two-column interface of height m") {
    const int m = 7;
    double eps = 1.0 / 32;
    SpinField f = two_column_interface(m, eps, c, 1);
    double s = std::sin(0.5 * c.theta);
    CHECK(xy_energy(f).xy_total == doctest::Approx(m * eps * eps * 4.0 * s * s).epsilon(1e-13));
    CHECK(xy_energy(f).xy_total == doctest::Approx(xy_direct(f)).epsilon(1e-12));
  }

  SUBCASE("breakdown fields") {
    std::mt19937_64 rng(31);
    SpinField f = random_field(rng, 16, 16, 9);
    auto e = xy_energy(f);
    CHECK(e.bond_count == static_cast<std::int64_t>(f.domain->bonds().size()));
    CHECK(e.per_bond_max <= 4.0);
    CHECK(e.xy_total >= 0.0);
    CHECK(e.xy_total <= 8.0 * f.domain->epsilon() * f.domain->epsilon() * e.bond_count);
    CHECK(e.xy_total == doctest::Approx(xy_direct(f)).epsilon(1e-12));
  }
}

TEST_CASE("xy_energy localization") {
  std::mt19937_64 rng(37);
  SpinField f = random_field(rng, 32, 32, 11, 1.0 / 32);

  SUBCASE("cross-region bonds are excluded and regions add up") {
    Shape left = Shape::rectangle({0.0, 0.0}, {0.5, 1.0});
    Shape right = Shape::rectangle({0.5, 0.0}, {1.0, 1.0});
    auto whole = xy_energy(f);
    auto el = xy_energy(f, left);
    auto er = xy_energy(f, right);
    // cross bonds: horizontal bonds from x = 0.5 - eps to x = 0.5
    double cross = 0.0;
    std::int64_t cross_count = 0;
    for (const Bond& b : f.domain->bonds()) {
      Vec2 pa = f.domain->position(b.a), pb = f.domain->position(b.b);
      bool in_l = left.contains(pa) && left.contains(pb);
      bool in_r = right.contains(pa) && right.contains(pb);
      if (!in_l && !in_r) {
        UnitVector ua = f.value(b.a), ub = f.value(b.b);
        double dx = ua.x() - ub.x(), dy = ua.y() - ub.y();
        cross += f.domain->epsilon() * f.domain->epsilon() * (dx * dx + dy * dy);
        ++cross_count;
      }
    }
    CHECK(el.bond_count + er.bond_count + cross_count ==
          static_cast<std::int64_t>(f.domain->bonds().size()));
    CHECK(el.xy_total + er.xy_total + cross ==
          doctest::Approx(whole.xy_total).epsilon(1e-12));
  }

  SUBCASE("monotone under region growth") {
    double prev = 0.0;
    for (double r : {0.2, 0.4, 0.6, 0.9}) {
      double e = xy_energy(f, Shape::ball({0.5, 0.5}, r)).xy_total;
      CHECK(e >= prev - 1e-15);
      prev = e;
    }
  }
}

TEST_CASE("rescaled_energy examples") {
  auto c = DiscreteCircle::with_states(64);
  SUBCASE("constant") {
    auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), 0.25);
    CHECK(rescaled_energy(constant_field(dom, c, 0), c.theta) == 0.0);
  }
  SUBCASE("single-theta interface scales like theta") {
    double eps = 1.0 / 64;
    int m = 64;  // height 1/eps cells
    SpinField f = two_column_interface(m, eps, c, 1);
    double expected = m * eps * eps * 4.0 * std::pow(std::sin(0.5 * c.theta), 2) /
                      (eps * c.theta);
    CHECK(rescaled_energy(f, c.theta) == doctest::Approx(expected).epsilon(1e-12));
    // matches the d-weighted bond sum to second order in theta
    CHECK(rescaled_energy(f, c.theta) ==
          doctest::Approx(c.theta).epsilon(2.0 * c.theta * c.theta));
  }
}

TEST_CASE("vortex field rescaled energy regression baseline") {
  // eps = 2^-8 on B_{1/2}, theta = eps*sqrt(|log eps|); the expected value is
  // frozen from the direct-summation oracle.
  double eps = std::ldexp(1.0, -8);
  double theta = eps * std::sqrt(abs_log(eps));
  auto circle = DiscreteCircle::with_theta(theta);
  auto dom = build_domain(Shape::ball({0.0, 0.0}, 0.5), eps);
  SpinField f = vortex_field({0.0, 0.0}, +1, dom, circle);
  double direct = xy_direct(f) / (eps * circle.theta);
  CHECK(rescaled_energy(f, circle.theta) == doctest::Approx(direct).epsilon(1e-9));
  CHECK(rescaled_energy(f, circle.theta) ==
        doctest::Approx(17.664166068098069).epsilon(1e-9));
}

TEST_CASE("excess_energy formula") {
  auto c = DiscreteCircle::with_states(126);  // 2*pi/126 ~ 0.05
  double eps = std::ldexp(1.0, -6);
  auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), eps);
  SpinField f = constant_field(dom, c, 0);
  SUBCASE("M = 0 equals rescaled") {
    CHECK(excess_energy(f, c.theta, 0) == rescaled_energy(f, c.theta));
  }
  SUBCASE("constant field, M = 1") {
    double expected = -kTwoPi * 6.0 * std::log(2.0) * (eps / c.theta);
    CHECK(excess_energy(f, c.theta, 1) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("M < 0 rejected") { CHECK_THROWS_AS(excess_energy(f, c.theta, -1), std::invalid_argument); }
}

TEST_CASE("geodesic_bond_sum") {
  SUBCASE("constant") {
    auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), 0.25);
    CHECK(geodesic_bond_sum(constant_field(dom, DiscreteCircle::with_states(5), 2)) == 0.0);
  }
  SUBCASE("one bond k states apart") {
    double eps = 0.1;
    auto c = DiscreteCircle::with_theta(0.01);
    auto dom = build_domain(Shape::rectangle({0.0, 0.0}, {2.0 * eps, eps}), eps);
    SpinField f = constant_field(dom, c, 0);
    f.states[1] = 3;
    CHECK(geodesic_bond_sum(f) == doctest::Approx(0.1 * 3.0 * c.theta).epsilon(1e-13));
  }
  SUBCASE("dominates theta per jump bond and matches arccos route") {
    std::mt19937_64 rng(41);
    SpinField f = random_field(rng, 24, 24, 13);
    std::size_t jumps = jump_set(f).size();
    CHECK(geodesic_bond_sum(f) >= f.domain->epsilon() * f.circle.theta * jumps - 1e-12);
    CHECK(geodesic_bond_sum(f) ==
          doctest::Approx(clockxy::testing::geodesic_direct(f)).epsilon(1e-10));
  }
  SUBCASE("sandwich bound against the euclidean bond sum") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 10; ++rep) {
      SpinField f = random_field(rng, 16, 16, 7 + rep);
      double eucl = 0.0;
      for (const Bond& b : f.domain->bonds())
        eucl += f.domain->epsilon() * chord_distance(f.value(b.a), f.value(b.b));
      CHECK(geodesic_bond_sum(f) >= 2.0 / kPi * eucl - 1e-12);
    }
  }
}

TEST_CASE("bv_lower_bound") {
  SUBCASE("constant") {
    auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), 0.25);
    CHECK(bv_lower_bound(constant_field(dom, DiscreteCircle::with_states(5), 1)) == 0.0);
  }
  SUBCASE("minimal jump saturates the bound") {
    auto c = DiscreteCircle::with_states(100);
    SpinField f = two_column_interface(1, 0.125, c, 1);
    CHECK(bv_lower_bound(f) == doctest::Approx(rescaled_energy(f, c.theta)).epsilon(1e-14));
  }
  SUBCASE("below rescaled energy on random fields") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 50; ++rep) {
      SpinField f = random_field(rng, 64, 64, 5 + rep % 60);
      CHECK(bv_lower_bound(f) <= rescaled_energy(f, f.circle.theta) + 1e-12);
    }
  }
}

TEST_CASE("per-bond lower bound, exhaustive at theta = 0.01") {
  const double theta = 0.01;
  const double sigma = 0.1;
  for (int k = 1; k * theta <= kPi; ++k) {
    double lhs = 4.0 * std::pow(std::sin(0.5 * k * theta), 2);
    REQUIRE(lhs >= (1.0 - sigma) * k * theta * theta);
  }
}

TEST_CASE("deterministic across thread counts") {
  std::mt19937_64 rng(53);
  SpinField f = random_field(rng, 128, 128, 17, 1.0 / 128);
  runtime::set_thread_count(1);
  double e1 = xy_energy(f).xy_total;
  double g1 = geodesic_bond_sum(f);
  runtime::set_thread_count(4);
  double e4 = xy_energy(f).xy_total;
  double g4 = geodesic_bond_sum(f);
  runtime::set_thread_count(1);
  CHECK(e1 == e4);
  CHECK(g1 == g4);
}
