#include <doctest.h>

#include <cmath>
#include <random>

#include "cqot/example1.hpp"
#include "cqot/measures.hpp"
#include "support/oracles.hpp"

using namespace cqot;

namespace {

Problem example1() { return generate_example1(0, 0.0, 0); }

}  // namespace

TEST_CASE("DiscreteMeasure validation and renormalization") {
  const DiscreteMeasure m({{0.0}, {1.0}}, {0.5 + 4e-7, 0.5});
  CHECK(m.weight(0) + m.weight(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}, {1.0}}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}, {1.0}}, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}, {1.0, 2.0}}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0}}, {0.5, 0.5}), std::invalid_argument);
  const auto u = DiscreteMeasure::uniform({{0.0}, {1.0}, {2.0}});
  CHECK(u.weight(2) == doctest::Approx(1.0 / 3));
  const auto t = u.translated(Point{0.5});
  CHECK(t.point(2)[0] == 2.5);
}

TEST_CASE("TransportPlan merges, sorts and floors") {
  const TransportPlan p({{1, 0, 0.25}, {0, 1, 0.25}, {1, 0, 0.25}, {0, 0, 1e-16}});
  REQUIRE(p.size() == 2);
  CHECK(p.entries()[0] == PlanEntry{0, 1, 0.25});
  CHECK(p.entries()[1] == PlanEntry{1, 0, 0.5});
  CHECK(p.total_mass() == doctest::Approx(0.75));
  CHECK_THROWS_AS(TransportPlan({{0, 0, -0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(TransportPlan({{0, 0, NAN}}), std::invalid_argument);
}

TEST_CASE("cost_of_plan examples") {
  const auto ex = example1();
  const auto& f0 = ex.f0;
  // f0 = f1, identity plan.
  const Problem same(f0, f0, ex.body);
  CHECK(cost_of_plan(same, plan_from_map(f0, {0, 1}, 2)).value == 0.0);

  // u1 -> u2, u2 -> u3.
  const auto tc = cost_of_plan(ex, TransportPlan({{0, 0, 0.5}, {1, 1, 0.5}}));
  CHECK(tc.finite);
  CHECK(tc.value == doctest::Approx(1.0).epsilon(1e-12));

  // u1 -> u3 is out of the unit ball.
  const auto t2 = cost_of_plan(ex, TransportPlan({{0, 1, 0.5}, {1, 0, 0.5}}));
  CHECK_FALSE(t2.finite);
  REQUIRE(t2.offending.has_value());
  CHECK(t2.offending->source == 0);
  CHECK(t2.offending->target == 1);

  CHECK_THROWS_AS(cost_of_plan(ex, TransportPlan({{5, 0, 1.0}})), std::out_of_range);
}

TEST_CASE("cost_of_plan is additive over disjoint entries") {
  std::mt19937_64 rng(10);
  const auto xs = oracle::random_points(rng, 6, 2), ys = oracle::random_points(rng, 6, 2);
  const Problem pr(DiscreteMeasure::uniform(xs), DiscreteMeasure::uniform(ys), ConvexBody::unconstrained(2));
  std::vector<PlanEntry> a, b;
  for (std::size_t i = 0; i < 6; ++i) (i % 2 ? a : b).push_back({i, (i * 5) % 6, 1.0 / 6});
  auto all = a;
  all.insert(all.end(), b.begin(), b.end());
  CHECK(cost_of_plan(pr, TransportPlan(all)).value ==
        doctest::Approx(cost_of_plan(pr, TransportPlan(a)).value + cost_of_plan(pr, TransportPlan(b)).value));
}

TEST_CASE("marginals match a direct summation oracle") {
  const auto id = plan_from_map(example1().f0, {0, 1}, 2);
  const auto [r, c] = marginals(id, 2, 2);
  CHECK(r == std::vector<double>{0.5, 0.5});
  CHECK(c == std::vector<double>{0.5, 0.5});
  const auto [er, ec] = marginals(TransportPlan{}, 3, 2);
  CHECK(er == std::vector<double>(3, 0.0));
  CHECK(ec == std::vector<double>(2, 0.0));
  CHECK_THROWS_AS(marginals(id, 1, 2), std::out_of_range);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> idx(0, 6);
  std::uniform_real_distribution<double> mass(0.01, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<PlanEntry> es;
    for (int k = 0; k < 20; ++k) es.push_back({idx(rng), idx(rng), mass(rng)});
    const TransportPlan p(es);
    const auto [row, col] = marginals(p, 7, 7);
    const auto [orow, ocol] = oracle::direct_marginals(p, 7, 7);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(row[i] == doctest::Approx(orow[i]).epsilon(1e-14));
      CHECK(col[i] == doctest::Approx(ocol[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("plan_from_map and extract_map") {
  const auto f0 = DiscreteMeasure::uniform({{0.0}, {1.0}, {2.0}});
  const auto diag = plan_from_map(f0, {0, 1, 2}, 3);
  CHECK(diag.size() == 3);
  for (const auto& e : diag.entries()) CHECK(e.source == e.target);

  const auto merged = plan_from_map(f0, {1, 1, 0}, 2);
  REQUIRE(merged.size() == 3);
  const auto [r, c] = marginals(merged, 3, 2);
  CHECK(c[1] == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(plan_from_map(f0, {0, 3, 0}, 3), std::out_of_range);
  CHECK_THROWS_AS(plan_from_map(f0, {0, 1}, 3), std::invalid_argument);

  // Example 1 map u1 -> u2, u2 -> u3.
  const auto ex = example1();
  const auto tc = plan_from_map(ex.f0, {0, 1}, 2);
  CHECK(tc == TransportPlan({{0, 0, 0.5}, {1, 1, 0.5}}));

  const auto back = extract_map(plan_from_map(f0, {2, 0, 1}, 3));
  REQUIRE(back.is_map());
  CHECK(*back.assignment == std::vector<std::size_t>{2, 0, 1});

  const auto split = extract_map(TransportPlan({{0, 0, 0.25}, {0, 1, 0.25}, {1, 1, 0.5}}));
  CHECK_FALSE(split.is_map());
  CHECK(split.split_sources == std::vector<std::size_t>{0});

  const auto dust = extract_map(TransportPlan({{0, 0, 0.5 * (1 - 1e-12)}, {0, 1, 0.5e-12}, {1, 1, 0.5}}, 0.0), 1e-9);
  REQUIRE(dust.is_map());
  CHECK(*dust.assignment == std::vector<std::size_t>{0, 1});
}

TEST_CASE("plan_from_map then extract_map is the identity on random assignments") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n0 = 1 + t % 7, n1 = 1 + (t * 3) % 5;
    std::vector<Point> pts(n0, Point{0.0});
    const auto f0 = DiscreteMeasure::uniform(pts);
    std::vector<std::size_t> a(n0);
    std::uniform_int_distribution<std::size_t> pick(0, n1 - 1);
    for (auto& v : a) v = pick(rng);
    const auto m = extract_map(plan_from_map(f0, a, n1));
    REQUIRE(m.is_map());
    CHECK(*m.assignment == a);
  }
}

TEST_CASE("marginal_error and entry-order invariance") {
  const auto f0 = DiscreteMeasure::uniform({{0.0}, {1.0}});
  const TransportPlan a({{0, 0, 0.5}, {1, 1, 0.5}}), b({{1, 1, 0.5}, {0, 0, 0.5}});
  CHECK(a == b);
  CHECK(marginal_error(a, f0, f0) == 0.0);
  CHECK(marginal_error(TransportPlan({{0, 0, 0.5}}), f0, f0) == doctest::Approx(0.5));
}

TEST_CASE("Problem rejects mixed dimensions") {
  const auto a = DiscreteMeasure::uniform({{0.0, 0.0}});
  const auto b = DiscreteMeasure::uniform({{0.0}});
  CHECK_THROWS_AS(Problem(a, b, ConvexBody::unconstrained(2)), std::invalid_argument);
  CHECK_THROWS_AS(Problem(a, a, ConvexBody::unconstrained(1)), std::invalid_argument);
}
