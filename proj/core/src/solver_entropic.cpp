#include "cqot/solver_entropic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cqot/flow.hpp"

namespace cqot {

double default_epsilon(std::span<const FeasibleArc> arcs) {
  std::vector<double> lengths;
  lengths.reserve(arcs.size());
  for (const FeasibleArc& a : arcs) lengths.push_back(a.squared_distance);
  if (lengths.empty()) return 1e-2;
  const auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2);
  std::nth_element(lengths.begin(), mid, lengths.end());
  double median = *mid;
  if (median <= 0.0) {
    // Mostly zero-length arcs; fall back to the largest length.
    median = *std::max_element(lengths.begin(), lengths.end());
  }
  return median > 0.0 ? 1e-2 * median : 1e-2;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Arcs grouped by row and by column (compressed index lists).
struct Incidence {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> arcs;

  Incidence(std::size_t n, const std::vector<FeasibleArc>& list, bool by_source) {
    offsets.assign(n + 1, 0);
    for (const FeasibleArc& a : list) ++offsets[(by_source ? a.source : a.target) + 1];
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    arcs.resize(list.size());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t k = 0; k < list.size(); ++k) {
      arcs[fill[by_source ? list[k].source : list[k].target]++] = k;
    }
  }
};

}  // namespace

SolveReport solve_entropic(const Problem& problem, const EntropicOptions& options) {
  if (options.epsilon && !(*options.epsilon > 0.0)) {
    throw std::invalid_argument("solve_entropic: epsilon must be positive");
  }
  if (!(options.marginal_tol > 0.0)) throw std::invalid_argument("solve_entropic: marginal_tol must be positive");

  SolveReport report;
  report.solver_name = "sinkhorn_log";
  const std::vector<double>& a = problem.f0.weights();
  const std::vector<double>& b = problem.f1.weights();
  std::vector<FeasibleArc> arcs = feasible_arcs(problem, options.tol);

  std::vector<Arc> flow_arcs;
  flow_arcs.reserve(arcs.size());
  for (const FeasibleArc& f : arcs) flow_arcs.push_back({f.source, f.target, f.squared_distance});
  const MaxFlowResult mf = bipartite_max_flow(a, b, flow_arcs);
  if (mf.deficit > kFeasibilityDeficitTol) {
    report.status = SolveStatus::Infeasible;
    report.objective = std::numeric_limits<double>::infinity();
    report.deficit = mf.deficit;
    report.message = "no finite-cost coupling: max-flow deficit " + std::to_string(mf.deficit);
    return report;
  }

  const double eps = options.epsilon.value_or(default_epsilon(arcs));
  if (options.prune_unsupported_arcs) {
    const std::vector<bool> usable = supportable_arcs(a, b, flow_arcs);
    std::vector<FeasibleArc> kept;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      if (usable[k]) kept.push_back(arcs[k]);
    }
    arcs = std::move(kept);
  }

  const std::size_t n0 = a.size(), n1 = b.size();
  const Incidence rows(n0, arcs, true);
  const Incidence cols(n1, arcs, false);
  std::vector<double> log_a(n0), log_b(n1), f(n0, 0.0), g(n1, 0.0);
  for (std::size_t i = 0; i < n0; ++i) log_a[i] = std::log(a[i]);
  for (std::size_t j = 0; j < n1; ++j) log_b[j] = std::log(b[j]);

  // Potential update: phi_v = eps * (log w_v - LSE_k((psi_other - c_k)/eps)).
  auto update = [&](const Incidence& inc, const std::vector<double>& log_w, std::vector<double>& phi,
                    const std::vector<double>& other, bool by_source) {
    for (std::size_t v = 0; v + 1 < inc.offsets.size(); ++v) {
      double mx = kNegInf;
      for (std::size_t p = inc.offsets[v]; p < inc.offsets[v + 1]; ++p) {
        const FeasibleArc& arc = arcs[inc.arcs[p]];
        mx = std::max(mx, (other[by_source ? arc.target : arc.source] - arc.squared_distance) / eps);
      }
      if (mx == kNegInf) continue;
      double s = 0.0;
      for (std::size_t p = inc.offsets[v]; p < inc.offsets[v + 1]; ++p) {
        const FeasibleArc& arc = arcs[inc.arcs[p]];
        s += std::exp((other[by_source ? arc.target : arc.source] - arc.squared_distance) / eps - mx);
      }
      phi[v] = eps * (log_w[v] - mx - std::log(s));
    }
  };

  auto plan_mass = [&](std::size_t k) {
    const FeasibleArc& arc = arcs[k];
    return std::exp((f[arc.source] + g[arc.target] - arc.squared_distance) / eps);
  };

  auto build_plan = [&] {
    std::vector<PlanEntry> entries;
    entries.reserve(arcs.size());
    for (std::size_t k = 0; k < arcs.size(); ++k) entries.push_back({arcs[k].source, arcs[k].target, plan_mass(k)});
    return TransportPlan(std::move(entries));
  };

  std::vector<double> row_sum(n0);
  bool converged = false;
  std::size_t it = 0;
  while (it < options.max_iter) {
    ++it;
    update(rows, log_a, f, g, true);
    update(cols, log_b, g, f, false);
    std::fill(row_sum.begin(), row_sum.end(), 0.0);
    for (std::size_t k = 0; k < arcs.size(); ++k) row_sum[arcs[k].source] += plan_mass(k);
    double err = 0.0;
    for (std::size_t i = 0; i < n0; ++i) err = std::max(err, std::abs(row_sum[i] - a[i]));
    if (err < options.marginal_tol) {
      converged = true;
      break;
    }
  }

  report.iterations = it;
  report.plan = build_plan();
  report.marginal_error = marginal_error(report.plan, problem.f0, problem.f1);
  const PlanCost cost = cost_of_plan(problem, report.plan, options.tol);
  report.objective = cost.value;
  if (converged && report.marginal_error < options.marginal_tol) {
    report.status = SolveStatus::Optimal;
  } else {
    report.status = SolveStatus::NotConverged;
    report.message = "marginal error " + std::to_string(report.marginal_error) + " after " +
                     std::to_string(it) + " iterations";
  }
  return report;
}

}  // namespace cqot
