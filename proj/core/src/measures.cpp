#include "cqot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace cqot {

DiscreteMeasure::DiscreteMeasure(std::vector<Point> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw std::invalid_argument("measure: no points");
  if (points_.size() != weights_.size()) {
    throw std::invalid_argument("measure: " + std::to_string(points_.size()) + " points but " +
                                std::to_string(weights_.size()) + " weights");
  }
  dimension_ = points_.front().size();
  if (dimension_ == 0) throw std::invalid_argument("measure: zero-dimensional points");
  double total = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dimension_) {
      throw std::invalid_argument("measure: point " + std::to_string(i) + " has dimension " +
                                  std::to_string(points_[i].size()) + ", expected " +
                                  std::to_string(dimension_));
    }
    for (double x : points_[i]) {
      if (!std::isfinite(x)) throw std::invalid_argument("measure: non-finite coordinate");
    }
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument("measure: weight " + std::to_string(i) + " is not positive");
    }
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument("measure: weights sum to " + std::to_string(total) +
                                ", expected 1");
  }
  for (double& w : weights_) w /= total;
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<Point> points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("measure: no points");
  return DiscreteMeasure(std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::translated(ConstVec v) const {
  require_same_dimension(v, points_.front(), "translated");
  std::vector<Point> moved = points_;
  for (Point& p : moved) {
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += v[k];
  }
  return DiscreteMeasure(std::move(moved), weights_);
}

TransportPlan::TransportPlan(std::vector<PlanEntry> entries, double mass_floor) {
  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (const PlanEntry& e : entries) {
    if (!std::isfinite(e.mass) || e.mass < 0.0) {
      throw std::invalid_argument("plan: invalid mass on arc (" + std::to_string(e.source) + ", " +
                                  std::to_string(e.target) + ")");
    }
    merged[{e.source, e.target}] += e.mass;
  }
  entries_.reserve(merged.size());
  for (const auto& [key, mass] : merged) {
    if (mass > mass_floor) entries_.push_back({key.first, key.second, mass});
  }
}

double TransportPlan::total_mass() const {
  double s = 0.0;
  for (const PlanEntry& e : entries_) s += e.mass;
  return s;
}

std::vector<std::size_t> TransportPlan::out_degree(std::size_t n0) const {
  std::vector<std::size_t> deg(n0, 0);
  for (const PlanEntry& e : entries_) {
    if (e.source < n0) ++deg[e.source];
  }
  return deg;
}

Problem::Problem(DiscreteMeasure source, DiscreteMeasure target, ConvexBody c)
    : f0(std::move(source)), f1(std::move(target)), body(std::move(c)) {
  if (f0.dimension() != f1.dimension() || f0.dimension() != body.dimension()) {
    throw std::invalid_argument("problem: dimensions disagree (f0 " + std::to_string(f0.dimension()) +
                                ", f1 " + std::to_string(f1.dimension()) + ", body " +
                                std::to_string(body.dimension()) + ")");
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "Optimal";
    case SolveStatus::Infeasible:
      return "Infeasible";
    case SolveStatus::NotConverged:
      return "NotConverged";
  }
  return "Unknown";
}

namespace {

void check_indices(const TransportPlan& plan, std::size_t n0, std::size_t n1) {
  for (const PlanEntry& e : plan.entries()) {
    if (e.source >= n0 || e.target >= n1) {
      throw std::out_of_range("plan entry (" + std::to_string(e.source) + ", " +
                              std::to_string(e.target) + ") out of range for " +
                              std::to_string(n0) + "x" + std::to_string(n1));
    }
  }
}

}  // namespace

PlanCost cost_of_plan(const Problem& problem, const TransportPlan& plan, double tol) {
  check_indices(plan, problem.f0.size(), problem.f1.size());
  PlanCost out;
  for (const PlanEntry& e : plan.entries()) {
    const Point& x = problem.f0.point(e.source);
    const Point& y = problem.f1.point(e.target);
    if (!contains(problem.body, displacement(x, y), tol)) {
      out.finite = false;
      out.value = std::numeric_limits<double>::infinity();
      out.offending = e;
      return out;
    }
    out.value += e.mass * squared_distance(x, y);
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> marginals(const TransportPlan& plan,
                                                              std::size_t n0, std::size_t n1) {
  check_indices(plan, n0, n1);
  std::vector<double> rows(n0, 0.0), cols(n1, 0.0);
  for (const PlanEntry& e : plan.entries()) {
    rows[e.source] += e.mass;
    cols[e.target] += e.mass;
  }
  return {std::move(rows), std::move(cols)};
}

double marginal_error(const TransportPlan& plan, const DiscreteMeasure& f0,
                      const DiscreteMeasure& f1) {
  const auto [rows, cols] = marginals(plan, f0.size(), f1.size());
  double err = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) err = std::max(err, std::abs(rows[i] - f0.weight(i)));
  for (std::size_t j = 0; j < cols.size(); ++j) err = std::max(err, std::abs(cols[j] - f1.weight(j)));
  return err;
}

TransportPlan plan_from_map(const DiscreteMeasure& f0, const std::vector<std::size_t>& assignment,
                            std::size_t n1) {
  if (assignment.size() != f0.size()) {
    throw std::invalid_argument("plan_from_map: expected " + std::to_string(f0.size()) +
                                " targets, got " + std::to_string(assignment.size()));
  }
  std::vector<PlanEntry> entries;
  entries.reserve(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= n1) {
      throw std::out_of_range("plan_from_map: target " + std::to_string(assignment[i]) +
                              " out of range");
    }
    entries.push_back({i, assignment[i], f0.weight(i)});
  }
  return TransportPlan(std::move(entries));
}

MapExtraction extract_map(const TransportPlan& plan, double tol) {
  MapExtraction out;
  std::size_t n0 = 0;
  for (const PlanEntry& e : plan.entries()) n0 = std::max(n0, e.source + 1);
  std::vector<double> row(n0, 0.0), best(n0, 0.0);
  std::vector<std::size_t> target(n0, 0);
  for (const PlanEntry& e : plan.entries()) {
    row[e.source] += e.mass;
    if (e.mass > best[e.source]) {
      best[e.source] = e.mass;
      target[e.source] = e.target;
    }
  }
  for (std::size_t i = 0; i < n0; ++i) {
    if (row[i] > 0.0 && (row[i] - best[i]) / row[i] >= tol) out.split_sources.push_back(i);
  }
  if (out.split_sources.empty()) out.assignment = std::move(target);
  return out;
}

}  // namespace cqot
