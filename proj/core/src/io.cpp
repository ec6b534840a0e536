#include "cqot/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace cqot::io {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw FormatError(path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::size_t index(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Point vector_of(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Point out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<Point> vectors_of(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of vectors");
  std::vector<Point> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(vector_of(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

// Constructor validation errors become format errors at `path`.
template <class F>
auto validated(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

ConvexBody body_at(const Json& j, std::size_t dimension, const std::string& path) {
  const Json& type = field(j, "type", path);
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  ConvexBody body = [&] {
    if (t == "ball") {
      Point c = vector_of(field(j, "center", path), path + ".center");
      const double r = number(field(j, "radius", path), path + ".radius");
      return validated(path, [&] { return ConvexBody::ball(std::move(c), r); });
    }
    if (t == "polytope") {
      const Json& rows = field(j, "halfspaces", path);
      if (!rows.is_array()) fail(path + ".halfspaces", "expected an array");
      std::vector<Halfspace> hs;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::string p = path + ".halfspaces[" + std::to_string(k) + "]";
        hs.push_back({vector_of(field(rows[k], "normal", p), p + ".normal"), number(field(rows[k], "offset", p), p + ".offset")});
      }
      return validated(path, [&] { return ConvexBody::polytope(std::move(hs)); });
    }
    if (t == "scaled") {
      const double factor = number(field(j, "factor", path), path + ".factor");
      const ConvexBody base = body_at(field(j, "base", path), dimension, path + ".base");
      return validated(path, [&] { return scale(base, factor); });
    }
    if (t == "face_cone") {
      std::vector<Point> vs = vectors_of(field(j, "vectors", path), path + ".vectors");
      const std::size_t idx = index(field(j, "index", path), path + ".index");
      return validated(path, [&] { return ConvexBody::face_cone(std::move(vs), idx); });
    }
    if (t == "unconstrained") return ConvexBody::unconstrained(dimension);
    fail(path + ".type", "unknown body type \"" + t + "\"");
  }();
  if (body.dimension() != dimension) {
    fail(path, "body dimension " + std::to_string(body.dimension()) + " does not match problem dimension " +
                   std::to_string(dimension));
  }
  return body;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json parse(const std::string& text, const std::string& source_name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FormatError(source_name + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": malformed JSON (" + e.what() + ")");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

ConvexBody body_from_json(const Json& j, std::size_t dimension) { return body_at(j, dimension, "body"); }

Json to_json(const ConvexBody& body) {
  return std::visit(
      [&](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexBody::Ball>) {
          return {{"type", "ball"}, {"center", s.center}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, ConvexBody::Polytope>) {
          Json rows = Json::array();
          for (const Halfspace& h : s.halfspaces) rows.push_back({{"normal", h.normal}, {"offset", h.offset}});
          return {{"type", "polytope"}, {"halfspaces", rows}};
        } else if constexpr (std::is_same_v<T, ConvexBody::Scaled>) {
          return {{"type", "scaled"}, {"factor", s.factor}, {"base", to_json(*s.base)}};
        } else if constexpr (std::is_same_v<T, ConvexBody::FaceCone>) {
          return {{"type", "face_cone"}, {"vectors", s.vectors}, {"index", s.index}};
        } else {
          return {{"type", "unconstrained"}};
        }
      },
      body.shape());
}

DiscreteMeasure measure_from_json(const Json& j, const std::string& path) {
  std::vector<Point> pts = vectors_of(field(j, "points", path), path + ".points");
  std::vector<double> w;
  if (j.contains("weights")) {
    w = vector_of(j["weights"], path + ".weights");
  } else {
    w.assign(pts.size(), pts.empty() ? 0.0 : 1.0 / static_cast<double>(pts.size()));
  }
  return validated(path, [&] { return DiscreteMeasure(std::move(pts), std::move(w)); });
}

Json to_json(const DiscreteMeasure& m) { return {{"points", m.points()}, {"weights", m.weights()}}; }

TransportPlan plan_from_json(const Json& j) {
  // Accept a bare plan or any report that embeds one under "plan".
  const Json& p = j.is_object() && j.contains("plan") && !j.contains("entries") ? j["plan"] : j;
  const Json& rows = field(p, "entries", "plan");
  if (!rows.is_array()) fail("plan.entries", "expected an array");
  std::vector<PlanEntry> entries;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string path = "plan.entries[" + std::to_string(k) + "]";
    const Json& e = rows[k];
    if (!e.is_array() || e.size() != 3) fail(path, "expected [source, target, mass]");
    const double mass = number(e[2], path + "[2]");
    if (!(mass > 0.0)) fail(path + "[2]", "mass must be positive");
    entries.push_back({index(e[0], path + "[0]"), index(e[1], path + "[1]"), mass});
  }
  return validated("plan", [&] { return TransportPlan(std::move(entries), 0.0); });
}

Json to_json(const TransportPlan& plan) {
  Json rows = Json::array();
  for (const PlanEntry& e : plan.entries()) rows.push_back(Json::array({e.source, e.target, e.mass}));
  return {{"entries", rows}};
}

Problem problem_from_json(const Json& j, bool body_optional) {
  if (!j.is_object()) fail("problem", "expected an object");
  DiscreteMeasure f0 = measure_from_json(field(j, "f0", "problem"), "f0");
  DiscreteMeasure f1 = measure_from_json(field(j, "f1", "problem"), "f1");
  std::size_t d = f0.dimension();
  if (j.contains("dimension")) {
    d = index(j["dimension"], "dimension");
    if (d != f0.dimension() || d != f1.dimension()) {
      fail("dimension", "declared " + std::to_string(d) + " but f0 has " + std::to_string(f0.dimension()) +
                            " and f1 has " + std::to_string(f1.dimension()));
    }
  } else if (f1.dimension() != d) {
    fail("f1", "dimension differs from f0");
  }
  ConvexBody body = ConvexBody::unconstrained(d);
  if (j.contains("body")) {
    body = body_from_json(j["body"], d);
  } else if (!body_optional) {
    fail("problem", "missing field \"body\"");
  }
  return Problem(std::move(f0), std::move(f1), std::move(body));
}

Json to_json(const Problem& problem) {
  return {{"dimension", problem.dimension()},
          {"f0", to_json(problem.f0)},
          {"f1", to_json(problem.f1)},
          {"body", to_json(problem.body)}};
}

Json to_json(const SolveReport& r) {
  Json j = {{"status", to_string(r.status)},
            {"objective", number_or_null(r.objective)},
            {"plan", to_json(r.plan)},
            {"iterations", r.iterations},
            {"solver", r.solver_name},
            {"marginal_error", r.marginal_error},
            {"optimality_residual", r.optimality_residual}};
  if (r.status == SolveStatus::Infeasible) j["deficit"] = r.deficit;
  if (r.offending_arc) {
    j["offending_arc"] = Json::array({r.offending_arc->source, r.offending_arc->target, r.offending_arc->mass});
  }
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

Json to_json(const LinfResult& r) {
  return {{"L_star", r.L_star}, {"plan", to_json(r.plan)}, {"selection", to_json(r.selection_report)}};
}

Json to_json(const CrystallineResult& r) {
  Json faces = Json::array();
  for (const FacePlan& f : r.per_face) {
    faces.push_back({{"face", f.face}, {"lp_plan", to_json(f.lp_plan)}, {"plan", to_json(f.plan)}, {"report", to_json(f.report)}});
  }
  return {{"status", "Optimal"},       {"lp_cost", r.lp_cost},     {"norm_cost", r.norm_cost},
          {"lp_plan", to_json(r.lp_plan)}, {"plan", to_json(r.plan)}, {"source_face", r.source_face},
          {"per_face", faces}};
}

std::vector<Point> vectors_from_json(const Json& j) { return vectors_of(j, "vectors"); }

}  // namespace cqot::io
