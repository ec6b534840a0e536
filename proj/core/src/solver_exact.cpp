#include "cqot/solver_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cqot {

namespace {

// Optimality residual above which a basis is not accepted as optimal.
constexpr double kResidualTol = 1e-7;

std::vector<Arc> to_arcs(const std::vector<FeasibleArc>& feasible) {
  std::vector<Arc> arcs;
  arcs.reserve(feasible.size());
  for (const FeasibleArc& a : feasible) arcs.push_back({a.source, a.target, a.squared_distance});
  return arcs;
}

}  // namespace

std::vector<FeasibleArc> feasible_arcs(const Problem& problem, double tol) {
  std::vector<FeasibleArc> out;
  const auto& xs = problem.f0.points();
  const auto& ys = problem.f1.points();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const Point z = displacement(xs[i], ys[j]);
      if (contains(problem.body, z, tol)) out.push_back({i, j, squared_norm(z)});
    }
  }
  return out;
}

FeasibilityCertificate check_feasible(const Problem& problem, double tol) {
  const std::vector<Arc> arcs = to_arcs(feasible_arcs(problem, tol));
  const MaxFlowResult mf = bipartite_max_flow(problem.f0.weights(), problem.f1.weights(), arcs);
  return {mf.deficit <= kFeasibilityDeficitTol, mf.flow, mf.deficit};
}

SolveReport solve_transport(std::span<const double> weights0, std::span<const double> weights1,
                            std::span<const Arc> arcs, PivotRule rule) {
  SolveReport report;
  report.solver_name = "network_simplex";
  const NetworkSimplexResult ns = network_simplex(weights0, weights1, arcs, rule);
  report.iterations = ns.pivots;
  report.optimality_residual = ns.residual;
  if (ns.status == FlowStatus::Infeasible) {
    report.status = SolveStatus::Infeasible;
    report.objective = std::numeric_limits<double>::infinity();
    report.deficit = ns.artificial_mass;
    report.message = "no coupling is supported on the admissible arcs";
    return report;
  }
  if (ns.status == FlowStatus::IterationLimit) {
    report.status = SolveStatus::NotConverged;
    report.message = "pivot limit reached";
    return report;
  }

  std::vector<PlanEntry> entries;
  double objective = 0.0;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    if (ns.arc_flow[k] <= kMassFloor) continue;
    entries.push_back({arcs[k].source, arcs[k].target, ns.arc_flow[k]});
    objective += ns.arc_flow[k] * arcs[k].cost;
  }
  report.plan = TransportPlan(std::move(entries));

  std::vector<double> rows(weights0.size(), 0.0), cols(weights1.size(), 0.0);
  for (const PlanEntry& e : report.plan.entries()) {
    rows[e.source] += e.mass;
    cols[e.target] += e.mass;
  }
  double err = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) err = std::max(err, std::abs(rows[i] - weights0[i]));
  for (std::size_t j = 0; j < cols.size(); ++j) err = std::max(err, std::abs(cols[j] - weights1[j]));
  report.marginal_error = err;
  report.objective = objective;

  if (ns.residual > kResidualTol) {
    report.status = SolveStatus::NotConverged;
    report.message = "complementary-slackness residual above tolerance";
  } else {
    report.status = SolveStatus::Optimal;
  }
  return report;
}

SolveReport solve_exact(const Problem& problem, const ExactOptions& options) {
  const std::vector<Arc> arcs = to_arcs(feasible_arcs(problem, options.tol));
  const MaxFlowResult mf = bipartite_max_flow(problem.f0.weights(), problem.f1.weights(), arcs);
  if (mf.deficit > kFeasibilityDeficitTol) {
    SolveReport report;
    report.solver_name = "network_simplex";
    report.status = SolveStatus::Infeasible;
    report.objective = std::numeric_limits<double>::infinity();
    report.deficit = mf.deficit;
    report.message = "no finite-cost coupling: max-flow deficit " + std::to_string(mf.deficit);
    return report;
  }
  SolveReport report = solve_transport(problem.f0.weights(), problem.f1.weights(), arcs,
                                       options.pivot_rule);
  if (report.status == SolveStatus::Optimal) {
    const PlanCost cost = cost_of_plan(problem, report.plan, options.tol);
    if (!cost.finite) throw std::logic_error("solve_exact: optimal plan uses an inadmissible arc");
    report.objective = cost.value;
  }
  return report;
}

}  // namespace cqot
