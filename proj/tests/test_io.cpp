#include <doctest.h>

#include "cqot/io.hpp"
#include "cqot/solver_exact.hpp"

using namespace cqot;
using io::Json;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::FormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("malformed JSON reports line and column") {
  const std::string msg = error_of([] { io::parse("{\n  \"a\": 1,\n  \"b\": ]\n}", "p.json"); });
  CHECK(msg.find("p.json:3:") == 0);
}

TEST_CASE("bodies round-trip") {
  const std::vector<ConvexBody> bodies{
      ConvexBody::ball({0.5, -1.0}, 2.0), ConvexBody::box({-1, -2}, {3, 4}),
      scale(ConvexBody::ball({0.0, 0.0}, 1.0), 3.0), ConvexBody::face_cone({{1, 1}, {1, -1}, {-1, 0}}, 2),
      ConvexBody::unconstrained(2)};
  for (const auto& b : bodies) {
    const Json j = io::to_json(b);
    const auto back = io::body_from_json(Json::parse(j.dump()), 2);
    CHECK(io::to_json(back) == j);
  }
}

TEST_CASE("body errors name the field") {
  CHECK(error_of([] { io::body_from_json(Json::parse(R"({"type":"ball","radius":1})"), 2); }).find("body") == 0);
  CHECK(error_of([] { io::body_from_json(Json::parse(R"({"type":"ball","center":[0],"radius":1})"), 2); })
            .find("dimension") != std::string::npos);
  CHECK(error_of([] { io::body_from_json(Json::parse(R"({"type":"ball","center":[0,0],"radius":-1})"), 2); }) != "");
  CHECK(error_of([] { io::body_from_json(Json::parse(R"({"type":"blob"})"), 2); }).find("body.type") == 0);
  const auto msg = error_of([] {
    io::body_from_json(Json::parse(R"({"type":"polytope","halfspaces":[{"normal":[1,0],"offset":1},{"normal":[1,"x"],"offset":1}]})"), 2);
  });
  CHECK(msg.find("body.halfspaces[1].normal[1]") == 0);
}

TEST_CASE("measures and plans round-trip") {
  const DiscreteMeasure m({{0.1, 0.2}, {0.3, 0.4}}, {0.25, 0.75});
  const auto back = io::measure_from_json(io::to_json(m));
  CHECK(back.points() == m.points());
  CHECK(back.weights() == m.weights());

  const auto uniform = io::measure_from_json(Json::parse(R"({"points":[[0],[1],[2],[3]]})"));
  CHECK(uniform.weight(3) == 0.25);

  const TransportPlan p({{0, 1, 0.25}, {1, 0, 0.75}});
  CHECK(io::plan_from_json(io::to_json(p)) == p);
  Json report = {{"status", "Optimal"}, {"plan", io::to_json(p)}};
  CHECK(io::plan_from_json(report) == p);
  CHECK(error_of([] { io::plan_from_json(Json::parse(R"({"entries":[[0,0]]})")); }).find("plan.entries[0]") == 0);
  CHECK(error_of([] { io::plan_from_json(Json::parse(R"({"entries":[[0,-1,0.5]]})")); }).find("plan.entries[0][1]") == 0);
}

TEST_CASE("problems") {
  const auto p = io::problem_from_json(Json::parse(
      R"({"dimension":1,"f0":{"points":[[0],[1]]},"f1":{"points":[[2]],"weights":[1]},"body":{"type":"unconstrained"}})"));
  CHECK(p.dimension() == 1);
  CHECK(p.body.is<ConvexBody::Unconstrained>());
  CHECK(io::problem_from_json(io::to_json(p)).f0.points() == p.f0.points());

  CHECK(error_of([] { io::problem_from_json(Json::parse(R"({"f0":{"points":[[0]]},"f1":{"points":[[0]]}})")); })
            .find("body") != std::string::npos);
  CHECK_NOTHROW(io::problem_from_json(Json::parse(R"({"f0":{"points":[[0]]},"f1":{"points":[[0]]}})"), true));
  CHECK(error_of([] {
          io::problem_from_json(Json::parse(R"({"dimension":2,"f0":{"points":[[0]]},"f1":{"points":[[0]]}})"), true);
        }).find("dimension") == 0);
  CHECK(error_of([] { io::problem_from_json(Json::parse(R"({"f0":{"points":[[0]],"weights":[0.3]},"f1":{"points":[[0]]}})"), true); })
            .find("f0") == 0);
}

TEST_CASE("reports serialize infinite objectives as null") {
  SolveReport r;
  r.status = SolveStatus::Infeasible;
  r.objective = std::numeric_limits<double>::infinity();
  r.deficit = 1.0;
  const Json j = io::to_json(r);
  CHECK(j["objective"].is_null());
  CHECK(j["status"] == "Infeasible");
  CHECK(j["deficit"] == 1.0);
}

TEST_CASE("doubles survive a text round-trip") {
  const double x = 0.1 + 0.2, y = std::sqrt(39.0) / 8.0;
  const Json j = Json::array({x, y});
  const Json back = Json::parse(j.dump());
  CHECK(back[0].get<double>() == x);
  CHECK(back[1].get<double>() == y);
}
