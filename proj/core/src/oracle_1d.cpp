#include "cqot/oracle_1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cqot {
namespace {

std::vector<std::size_t> sorted_order(const DiscreteMeasure& m) {
  std::vector<std::size_t> idx(m.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t p, std::size_t q) { return m.point(p)[0] < m.point(q)[0]; });
  return idx;
}

// Neumaier-compensated running sums of the weights in the given order.
std::vector<double> cumulative(const DiscreteMeasure& m, const std::vector<std::size_t>& order) {
  std::vector<double> out(order.size());
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double w = m.weight(order[k]);
    const double t = sum + w;
    comp += std::abs(sum) >= std::abs(w) ? (sum - t) + w : (w - t) + sum;
    sum = t;
    out[k] = sum + comp;
  }
  return out;
}

}  // namespace

TransportPlan monotone_plan(const DiscreteMeasure& f0, const DiscreteMeasure& f1) {
  if (f0.dimension() != 1 || f1.dimension() != 1) {
    throw std::invalid_argument("monotone_plan: measures must be one-dimensional");
  }
  const std::vector<std::size_t> order0 = sorted_order(f0);
  const std::vector<std::size_t> order1 = sorted_order(f1);
  std::vector<double> c0 = cumulative(f0, order0);
  std::vector<double> c1 = cumulative(f1, order1);
  // Both measures are normalized; pin the final quantile so neither side
  // keeps a rounding remainder.
  c0.back() = 1.0;
  c1.back() = 1.0;

  std::vector<PlanEntry> entries;
  double reached = 0.0;
  std::size_t p = 0, q = 0;
  while (p < c0.size() && q < c1.size()) {
    const double next = std::min(c0[p], c1[q]);
    if (next > reached) entries.push_back({order0[p], order1[q], next - reached});
    reached = std::max(reached, next);
    if (c0[p] <= next) ++p;
    if (c1[q] <= next) ++q;
  }
  return TransportPlan(std::move(entries));
}

SolveReport optimal_1d_constrained(const DiscreteMeasure& f0, const DiscreteMeasure& f1, double lo,
                                   double hi, double tol) {
  if (!(lo <= hi)) throw std::invalid_argument("optimal_1d_constrained: lo > hi");
  SolveReport report;
  report.solver_name = "monotone_1d";
  const TransportPlan plan = monotone_plan(f0, f1);
  double objective = 0.0;
  for (const PlanEntry& e : plan.entries()) {
    const double d = f1.point(e.target)[0] - f0.point(e.source)[0];
    if (d < lo - tol || d > hi + tol) {
      report.status = SolveStatus::Infeasible;
      report.objective = std::numeric_limits<double>::infinity();
      report.offending_arc = e;
      report.message = "monotone coupling moves mass by " + std::to_string(d) + ", outside [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]";
      return report;
    }
    objective += e.mass * d * d;
  }
  report.plan = plan;
  report.objective = objective;
  report.status = SolveStatus::Optimal;
  report.marginal_error = marginal_error(plan, f0, f1);
  return report;
}

}  // namespace cqot
