#include "cqot/crystalline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "cqot/linear_program.hpp"
#include "cqot/solver_exact.hpp"

namespace cqot {
namespace {

// Positive spanning iff every +-e_k is a nonnegative combination.
bool positively_spans(const std::vector<Point>& vectors, std::size_t d) {
  const std::size_t k = vectors.size();
  for (std::size_t axis = 0; axis < d; ++axis) {
    for (double sign : {1.0, -1.0}) {
      lp::LinearProgram prog(k);
      for (std::size_t row = 0; row < d; ++row) {
        std::vector<double> coeffs(k);
        for (std::size_t i = 0; i < k; ++i) coeffs[i] = vectors[i][row];
        prog.add_equal(std::move(coeffs), row == axis ? sign : 0.0);
      }
      if (lp::maximize(prog).status != lp::Status::Optimal) return false;
    }
  }
  return true;
}

}  // namespace

CrystallineNorm::CrystallineNorm(std::vector<Point> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw std::invalid_argument("crystalline norm: no vectors");
  dimension_ = vectors_.front().size();
  if (dimension_ == 0) throw std::invalid_argument("crystalline norm: zero dimension");
  for (const Point& v : vectors_) {
    if (v.size() != dimension_) throw std::invalid_argument("crystalline norm: vector dimension mismatch");
    for (double x : v) {
      if (!std::isfinite(x)) throw std::invalid_argument("crystalline norm: non-finite vector");
    }
  }
  if (vectors_.size() < dimension_ + 1) {
    throw std::invalid_argument("crystalline norm: need at least d+1 vectors");
  }
  if (!positively_spans(vectors_, dimension_)) {
    throw std::invalid_argument("crystalline norm: vectors do not positively span R^d");
  }
}

ConvexBody CrystallineNorm::face_cone(std::size_t index) const {
  return ConvexBody::face_cone(vectors_, index);
}

double norm_eval(const CrystallineNorm& norm, ConstVec z) {
  if (z.size() != norm.dimension()) throw std::invalid_argument("norm_eval: dimension mismatch");
  double best = -std::numeric_limits<double>::infinity();
  for (const Point& v : norm.vectors()) best = std::max(best, dot(z, v));
  return best;
}

std::size_t face_index(const CrystallineNorm& norm, ConstVec z, double tol) {
  if (std::all_of(z.begin(), z.end(), [](double x) { return x == 0.0; })) {
    throw std::invalid_argument("face_index: zero displacement has no face");
  }
  const double best = norm_eval(norm, z);
  const double slack = tol * (1.0 + std::abs(best));
  for (std::size_t i = 0; i < norm.size(); ++i) {
    if (dot(z, norm.vectors()[i]) >= best - slack) return i;
  }
  return 0;  // unreachable: the maximizer always qualifies
}

CrystallineResult solve_crystalline(const DiscreteMeasure& f0, const DiscreteMeasure& f1,
                                    const CrystallineNorm& norm, double tol) {
  if (f0.dimension() != norm.dimension() || f1.dimension() != norm.dimension()) {
    throw std::invalid_argument("solve_crystalline: dimension mismatch");
  }
  const std::size_t n0 = f0.size(), n1 = f1.size();
  auto disp = [&](std::size_t i, std::size_t j) { return displacement(f0.point(i), f1.point(j)); };

  // (a) Linear-cost transportation LP on the complete graph.
  std::vector<Arc> arcs;
  arcs.reserve(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) arcs.push_back({i, j, norm_eval(norm, disp(i, j))});
  }
  const SolveReport lp_report = solve_transport(f0.weights(), f1.weights(), arcs);
  if (lp_report.status != SolveStatus::Optimal) {
    throw std::runtime_error("solve_crystalline: norm-cost LP did not reach optimality");
  }

  CrystallineResult result;
  result.lp_plan = lp_report.plan;
  result.lp_cost = lp_report.objective;

  // (b) One face per source.
  std::vector<std::vector<PlanEntry>> by_source(n0);
  for (const PlanEntry& e : result.lp_plan.entries()) by_source[e.source].push_back(e);
  std::vector<ConvexBody> cones;
  cones.reserve(norm.size());
  for (std::size_t f = 0; f < norm.size(); ++f) cones.push_back(norm.face_cone(f));

  result.source_face.assign(n0, 0);
  for (std::size_t i = 0; i < n0; ++i) {
    std::vector<Point> moves;
    const PlanEntry* heaviest = nullptr;
    for (const PlanEntry& e : by_source[i]) {
      Point z = disp(i, e.target);
      if (std::all_of(z.begin(), z.end(), [](double x) { return x == 0.0; })) continue;
      if (heaviest == nullptr || e.mass > heaviest->mass) heaviest = &e;
      moves.push_back(std::move(z));
    }
    if (moves.empty()) continue;  // only zero moves: every cone holds them
    std::size_t chosen = norm.size();
    for (std::size_t f = 0; f < norm.size() && chosen == norm.size(); ++f) {
      if (std::all_of(moves.begin(), moves.end(), [&](const Point& z) { return contains(cones[f], z, tol); })) {
        chosen = f;
      }
    }
    if (chosen == norm.size()) chosen = face_index(norm, disp(i, heaviest->target));
    result.source_face[i] = chosen;
  }

  // (c) Split by face, (d) re-select inside each face cone.
  std::map<std::size_t, std::vector<PlanEntry>> groups;
  for (const PlanEntry& e : result.lp_plan.entries()) groups[result.source_face[e.source]].push_back(e);

  std::vector<PlanEntry> assembled;
  for (auto& [face, entries] : groups) {
    std::map<std::size_t, double> row_mass, col_mass;
    double total = 0.0;
    for (const PlanEntry& e : entries) {
      row_mass[e.source] += e.mass;
      col_mass[e.target] += e.mass;
      total += e.mass;
    }
    std::vector<std::size_t> src_ids, dst_ids;
    std::vector<Point> src_pts, dst_pts;
    std::vector<double> src_w, dst_w;
    for (const auto& [i, m] : row_mass) {
      src_ids.push_back(i);
      src_pts.push_back(f0.point(i));
      src_w.push_back(m / total);
    }
    for (const auto& [j, m] : col_mass) {
      dst_ids.push_back(j);
      dst_pts.push_back(f1.point(j));
      dst_w.push_back(m / total);
    }
    const Problem sub(DiscreteMeasure(std::move(src_pts), std::move(src_w)),
                      DiscreteMeasure(std::move(dst_pts), std::move(dst_w)), cones[face]);
    SolveReport report = solve_exact(sub, ExactOptions{tol, PivotRule::Bland});
    if (report.status != SolveStatus::Optimal) {
      throw FaceInfeasible(face, "solve_crystalline: face " + std::to_string(face) +
                                     " has no coupling inside its cone (" + to_string(report.status) + ")");
    }
    std::vector<PlanEntry> global;
    for (const PlanEntry& e : report.plan.entries()) {
      global.push_back({src_ids[e.source], dst_ids[e.target], e.mass * total});
    }
    FacePlan fp;
    fp.face = face;
    fp.lp_plan = TransportPlan(entries);
    fp.plan = TransportPlan(global);
    fp.report = std::move(report);
    assembled.insert(assembled.end(), global.begin(), global.end());
    result.per_face.push_back(std::move(fp));
  }

  // (e) Reassemble.
  result.plan = TransportPlan(std::move(assembled));
  for (const PlanEntry& e : result.plan.entries()) result.norm_cost += e.mass * norm_eval(norm, disp(e.source, e.target));
  return result;
}

}  // namespace cqot
