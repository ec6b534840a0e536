#include <doctest.h>

#include <random>

#include "cqot/diagnostics.hpp"
#include "cqot/example1.hpp"
#include "cqot/solver_exact.hpp"
#include "support/oracles.hpp"

using namespace cqot;

namespace {

// 0 -> 1 and 0.5 -> 0.5 on the line, body [-2, 2].
Problem crossing_instance() {
  return Problem(DiscreteMeasure::uniform({{0.0}, {0.5}}), DiscreteMeasure::uniform({{1.0}, {0.5}}),
                 ConvexBody::interval(-2.0, 2.0));
}

const TransportPlan kCrossing({{0, 0, 0.5}, {1, 1, 0.5}});

Problem split_instance(const ConvexBody& body) {
  return Problem(DiscreteMeasure::uniform({{0.0, 0.0}}), DiscreteMeasure::uniform({{1.0, -0.3}, {1.0, 0.3}}), body);
}

const TransportPlan kSplit({{0, 0, 0.5}, {0, 1, 0.5}});

}  // namespace

TEST_CASE("pairwise monotonicity examples") {
  const auto ex = generate_example1(0, 0.0, 0);
  CHECK(check_pairwise_monotone(solve_exact(ex).plan, ex).empty());

  const auto v = check_pairwise_monotone(kCrossing, crossing_instance());
  REQUIRE(v.size() == 1);
  CHECK(v[0].inner_product == doctest::Approx(-0.25));

  const auto f0 = DiscreteMeasure::uniform({{0.0}, {1.0}, {3.0}});
  CHECK(check_pairwise_monotone(plan_from_map(f0, {0, 1, 2}, 3), Problem(f0, f0, ConvexBody::interval(-5, 5))).empty());
}

TEST_CASE("pairwise check ignores pairs whose cross arcs leave the body") {
  Problem narrow(crossing_instance().f0, crossing_instance().f1, ConvexBody::interval(-0.1, 0.6));
  // Both cross displacements equal 0.5.
  CHECK(check_pairwise_monotone(kCrossing, narrow).size() == 1);
  Problem tighter(crossing_instance().f0, crossing_instance().f1, ConvexBody::interval(-0.1, 0.4));
  CHECK(check_pairwise_monotone(kCrossing, tighter).empty());
}

TEST_CASE("cyclical check examples") {
  const auto cycles = check_cyclical(kCrossing, crossing_instance(), 2);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].permuted_cost < cycles[0].original_cost);
  CHECK(check_cyclical(TransportPlan({{0, 0, 1.0}}), crossing_instance(), 4).empty());
  CHECK_THROWS_AS(check_cyclical(kCrossing, crossing_instance(), 1), std::invalid_argument);
}

TEST_CASE("cyclical check enforces its budget") {
  std::vector<PlanEntry> es;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < 40; ++i) {
    es.push_back({i, i, 1.0 / 40});
    pts.push_back({static_cast<double>(i)});
  }
  const auto f = DiscreteMeasure::uniform(pts);
  CHECK_THROWS_AS(check_cyclical(TransportPlan(es), Problem(f, f, ConvexBody::unconstrained(1)), 5, 1e-9, 1000),
                  CycleBudgetExceeded);
}

TEST_CASE("3-cycle detection needs k >= 3") {
  // Rotation by 80 degrees of three points spaced 120 degrees apart on a
  // circle: pairwise monotone, but cycling the targets backwards is cheaper.
  const double pi = std::acos(-1.0), theta = 80.0 * pi / 180.0;
  std::vector<Point> xs, ys;
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * pi * k / 3;
    xs.push_back({std::cos(a), std::sin(a)});
    ys.push_back({std::cos(a + theta), std::sin(a + theta)});
  }
  const Problem pr(DiscreteMeasure::uniform(xs), DiscreteMeasure::uniform(ys), ConvexBody::unconstrained(2));
  const TransportPlan plan({{0, 0, 1.0 / 3}, {1, 1, 1.0 / 3}, {2, 2, 1.0 / 3}});
  CHECK(check_pairwise_monotone(plan, pr).empty());
  CHECK(check_cyclical(plan, pr, 2).empty());
  CHECK_FALSE(check_cyclical(plan, pr, 3).empty());
}

TEST_CASE("split_mass examples") {
  const auto f0 = DiscreteMeasure::uniform({{0.0}, {1.0}});
  CHECK(split_mass(plan_from_map(f0, {1, 0}, 2)) == 0.0);
  CHECK(split_mass(TransportPlan({{0, 0, 0.25}, {0, 1, 0.25}, {1, 2, 0.5}})) == doctest::Approx(0.25));
  CHECK(split_mass(TransportPlan{}) == 0.0);
}

TEST_CASE("flat-part checker") {
  const auto square = ConvexBody::box({-1.0, -1.0}, {1.0, 1.0});
  CHECK(check_same_flat_part(kSplit, split_instance(square)).empty());

  const double r = std::hypot(1.0, 0.3);
  const auto v = check_same_flat_part(kSplit, split_instance(ConvexBody::ball({0.0, 0.0}, r)));
  REQUIRE(v.size() == 1);
  CHECK(v[0].source == 0);
  REQUIRE(v[0].target_pairs.size() == 1);
  CHECK(v[0].target_pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});

  const auto ex = generate_example1(0, 0.0, 0);
  CHECK(check_same_flat_part(solve_exact(ex).plan, ex).empty());
}

TEST_CASE("strictly convex body: every split source is a violation") {
  std::mt19937_64 rng(60);
  const auto ball = ConvexBody::ball({0.0, 0.0}, 2.0);
  for (int t = 0; t < 30; ++t) {
    const auto x = oracle::random_point(rng, 2, -0.3, 0.3);
    const auto ys = oracle::random_points(rng, 3, 2);
    const Problem pr(DiscreteMeasure::uniform({x}), DiscreteMeasure::uniform(ys), ball);
    const TransportPlan fan({{0, 0, 1.0 / 3}, {0, 1, 1.0 / 3}, {0, 2, 1.0 / 3}});
    const auto v = check_same_flat_part(fan, pr);
    REQUIRE(v.size() == 1);
    CHECK(v[0].target_pairs.size() == 3);
  }
}

TEST_CASE("exact optima pass the structural checks") {
  std::mt19937_64 rng(61);
  const auto ball = ConvexBody::ball({0.1, 0.0}, 0.9);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n0 = 2 + t % 7, n1 = 2 + (t * 3) % 7;
    const auto pr = oracle::random_feasible_problem(rng, n0, n1, false, ball,
                                                    [](const Problem& p) { return check_feasible(p).feasible; });
    const auto r = solve_exact(pr);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(check_pairwise_monotone(r.plan, pr).empty());
    CHECK(check_cyclical(r.plan, pr, 3).empty());
  }
}
