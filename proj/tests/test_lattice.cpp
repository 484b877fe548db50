#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "clockxy/lattice.hpp"
#include "clockxy/maps.hpp"
#include "support/oracles.hpp"

using namespace clockxy;

TEST_CASE("build_domain unit square, half-open convention") {
  auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), 0.5);
  CHECK(dom->site_count() == 4);
  std::set<std::pair<double, double>> pos;
  for (int i = 0; i < 4; ++i) pos.insert({dom->position(i).x, dom->position(i).y});
  CHECK(pos == std::set<std::pair<double, double>>{{0, 0}, {0.5, 0}, {0, 0.5}, {0.5, 0.5}});
  CHECK(dom->bonds().size() == 4);
}

TEST_CASE("build_domain ball keeps only closed-ball sites") {
  auto dom = build_domain(Shape::ball({0.0, 0.0}, 0.6), 0.5);
  CHECK(dom->site_count() == 5);
  CHECK(dom->bonds().size() == 4);
}

TEST_CASE("build_domain degenerate shapes fail") {
  CHECK_THROWS_AS(Shape::square({0.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_domain(Shape::square({10.1, 10.1}, 0.2), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_domain(Shape::square({0.0, 0.0}, 1.0), -1.0), std::invalid_argument);
}

TEST_CASE("bond list has both endpoints inside and no duplicates") {
  auto dom = build_domain(Shape::ball({0.0, 0.0}, 1.0), 0.21);
  std::set<std::pair<int, int>> seen;
  for (const Bond& b : dom->bonds()) {
    CHECK(dom->shape().contains(dom->position(b.a)));
    CHECK(dom->shape().contains(dom->position(b.b)));
    auto [ax, ay] = dom->site(b.a);
    auto [bx, by] = dom->site(b.b);
    CHECK(std::abs(ax - bx) + std::abs(ay - by) == 1);
    CHECK(seen.insert({b.a, b.b}).second);
  }
}

TEST_CASE("sample_map constant and vortex values") {
  auto dom = build_domain(Shape::square({-0.5, -0.5}, 1.0), 1.0 / 8);
  auto c8 = DiscreteCircle::with_states(8);

  SpinField constant = sample_map(constant_map(UnitVector(0.0)).fn(), dom, c8,
                                  SampleMode::at_site);
  for (auto s : constant.states) CHECK(s == 0);

  // x/|x| at the site (eps, 0) has angle 0 -> state 0
  SingularMap vm = vortex_map({0.0, 0.0});
  int id = dom->site_at(1, 0);
  REQUIRE(id >= 0);
  SpinField v = sample_map(vm.fn(), dom, c8, SampleMode::midpoint_of_cell);
  // midpoint mode: cell z = (0,0) with lambda = 1/8 samples at (1/16, 1/16),
  // angle pi/4 -> state floor((pi/4)/theta)
  int expected = static_cast<int>(std::floor((kPi / 4.0) / c8.theta));
  CHECK(v.states[dom->site_at(0, 0)] == expected);

  // sampling exactly at the singularity is an error
  auto dom2 = build_domain(Shape::square({0.0, 0.0}, 1.0), 0.25);
  CHECK_THROWS_AS(sample_map(vm.fn(), dom2, c8, SampleMode::at_site), std::domain_error);
}

TEST_CASE("midpoint-of-cell sampling agrees with the quoted cell centers") {
  // cell z = (0,0), lambda = 1/4, sample at (1/8, 1/8)
  auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), 0.25);
  auto c = DiscreteCircle::with_states(12);
  SpinField f = sample_map(vortex_map({0.0, 0.0}).fn(), dom, c, SampleMode::midpoint_of_cell);
  CHECK(f.states[dom->site_at(0, 0)] == static_cast<int>(std::floor((kPi / 4.0) / c.theta)));
}

TEST_CASE("jump_set basic examples") {
  auto c4 = DiscreteCircle::with_states(4);

  SUBCASE("constant field is jump free") {
    for (double eps : {0.5, 0.25}) {
      auto dom = build_domain(Shape::square({0.0, 0.0}, 1.0), eps);
      CHECK(jump_set(constant_field(dom, c4, 2)).empty());
    }
  }

  SUBCASE("two-column interface") {
    const int m = 5;  // interface height in cells
    auto dom = build_domain(Shape::rectangle({0.0, 0.0}, {2.0, static_cast<double>(m)}), 1.0);
    SpinField f = constant_field(dom, c4, 0);
    for (int id = 0; id < dom->site_count(); ++id)
      if (dom->site(id).first == 1) f.states[id] = 1;
    auto records = jump_set(f);
    CHECK(records.size() == m);
    for (const auto& r : records) {
      CHECK(r.jump_length == doctest::Approx(c4.theta));
      CHECK(r.normal.x == 1.0);
      CHECK(r.normal.y == 0.0);
      CHECK(r.edge_measure == 1.0);
    }
  }

  SUBCASE("checkerboard count matches the bond oracle") {
    for (int n : {3, 4, 7}) {
      auto dom = build_domain(Shape::rectangle({0.0, 0.0}, {double(n), double(n)}), 1.0);
      SpinField f = constant_field(dom, c4, 0);
      for (int id = 0; id < dom->site_count(); ++id) {
        auto [ix, iy] = dom->site(id);
        f.states[id] = (ix + iy) % 2;
      }
      // every bond joins different parities
      CHECK(jump_set(f).size() == 2 * n * (n - 1));
      CHECK(jump_set(f).size() == dom->bonds().size());
    }
  }
}

TEST_CASE("jump normals are perpendicular to the shared cell edge") {
  std::mt19937_64 rng(19);
  SpinField f = clockxy::testing::random_field(rng, 8, 8, 5);
  for (const auto& r : jump_set(f)) {
    auto [ax, ay] = f.domain->site(r.site_minus);
    auto [bx, by] = f.domain->site(r.site_plus);
    Vec2 bond_dir{double(bx - ax), double(by - ay)};
    // the jump segment runs along the perpendicular axis
    CHECK(dot(r.normal, bond_dir) == doctest::Approx(1.0));
    CHECK(norm_1(r.normal) == 1.0);
  }
}

TEST_CASE("matrix and vector norms") {
  CHECK(norm_2_1(Mat2{1, 0, 0, 1}) == doctest::Approx(2.0));
  CHECK(norm_2_1(Mat2{3, 0, 4, 0}) == doctest::Approx(5.0));
  CHECK(norm_1(Vec2{1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(norm_1(Vec2{-3.0, 4.0}) == doctest::Approx(7.0));
}

TEST_CASE("pc_from_field round trips phases") {
  std::mt19937_64 rng(21);
  SpinField f = clockxy::testing::random_field(rng, 6, 9, 7);
  PcField pc = pc_from_field(f);
  for (int id = 0; id < f.domain->site_count(); ++id) {
    auto [ix, iy] = f.domain->site(id);
    CHECK(pc.angle_at(ix, iy) == f.phase(id));
  }
}

TEST_CASE("pc_from_map samples half-open cell centers") {
  SingularMap vm = vortex_map({0.0, 0.0});
  PcField pc = pc_from_map(vm.fn(), 0.25, {{-1.0, -1.0}, {1.0, 1.0}});
  CHECK(pc.has_cell(-4, -4));
  CHECK(pc.has_cell(4, 4));
  Vec2 v = vm(cell_center(0.25, 2, 1));
  CHECK(pc.angle_at(2, 1) == UnitVector::from_components(v.x, v.y).angle());
}
