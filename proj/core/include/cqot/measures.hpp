#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqot/geometry.hpp"
#include "cqot/vector_ops.hpp"

namespace cqot {

/// Weighted point cloud. Weights are positive and renormalized to sum 1.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  /// Throws if weights are nonpositive, |sum - 1| > 1e-6, or point
  /// dimensions disagree.
  DiscreteMeasure(std::vector<Point> points, std::vector<double> weights);

  /// Uniform weights 1/n.
  static DiscreteMeasure uniform(std::vector<Point> points);

  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] const Point& point(std::size_t i) const { return points_[i]; }
  [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }

  /// Same weights, every point moved by v.
  [[nodiscard]] DiscreteMeasure translated(ConstVec v) const;

 private:
  std::vector<Point> points_;
  std::vector<double> weights_;
  std::size_t dimension_ = 0;
};

struct PlanEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  double mass = 0.0;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

/// Sparse coupling, entries sorted by (source, target), no duplicates, all
/// masses strictly positive.
class TransportPlan {
 public:
  TransportPlan() = default;

  /// Merges duplicate (i, j) pairs, drops masses below `mass_floor` and
  /// sorts. Negative or non-finite masses throw.
  explicit TransportPlan(std::vector<PlanEntry> entries,
                         double mass_floor = kMassFloor);

  [[nodiscard]] const std::vector<PlanEntry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] double total_mass() const;

  /// Distinct targets per source index; sources absent from the plan get 0.
  [[nodiscard]] std::vector<std::size_t> out_degree(std::size_t n0) const;

  friend bool operator==(const TransportPlan&, const TransportPlan&) = default;

 private:
  std::vector<PlanEntry> entries_;
};

/// An instance of the constrained Monge-Kantorovich problem.
struct Problem {
  DiscreteMeasure f0;
  DiscreteMeasure f1;
  ConvexBody body = ConvexBody::unconstrained(0);

  Problem(DiscreteMeasure source, DiscreteMeasure target, ConvexBody c);

  [[nodiscard]] std::size_t dimension() const { return f0.dimension(); }
};

enum class SolveStatus { Optimal, Infeasible, NotConverged };

const char* to_string(SolveStatus status);

struct SolveReport {
  TransportPlan plan;
  double objective = 0.0;
  SolveStatus status = SolveStatus::NotConverged;
  std::size_t iterations = 0;
  std::string solver_name;

  // Solver-specific diagnostics; zero when not applicable.
  double marginal_error = 0.0;
  double optimality_residual = 0.0;
  double deficit = 0.0;
  std::optional<PlanEntry> offending_arc;
  std::string message;
};

/// Result of evaluating the constrained quadratic cost of a plan.
struct PlanCost {
  bool finite = true;
  double value = 0.0;
  /// First arc whose displacement leaves the body, when !finite.
  std::optional<PlanEntry> offending;
};

/// sum mass*|y_j - x_i|^2, or Infinite if some displacement leaves C.
PlanCost cost_of_plan(const Problem& problem, const TransportPlan& plan,
                      double tol = kDefaultTol);

/// (row sums, column sums). Throws if an index exceeds n0 / n1.
std::pair<std::vector<double>, std::vector<double>> marginals(
    const TransportPlan& plan, std::size_t n0, std::size_t n1);

/// Largest absolute marginal deviation from the problem weights.
double marginal_error(const TransportPlan& plan, const DiscreteMeasure& f0,
                      const DiscreteMeasure& f1);

/// (Id x T)_# f0 for T given by one target index per source.
TransportPlan plan_from_map(const DiscreteMeasure& f0,
                            const std::vector<std::size_t>& assignment,
                            std::size_t n1);

/// Either a Monge map or the list of sources that are split.
struct MapExtraction {
  std::optional<std::vector<std::size_t>> assignment;
  std::vector<std::size_t> split_sources;

  [[nodiscard]] bool is_map() const { return assignment.has_value(); }
};

/// A source counts as unsplit when the mass fraction off its heaviest target
/// is below tol.
MapExtraction extract_map(const TransportPlan& plan, double tol = kDefaultTol);

}  // namespace cqot
