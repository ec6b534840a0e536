#include "cqot/linf.hpp"

#include <algorithm>
#include <stdexcept>

#include "cqot/flow.hpp"
#include "cqot/solver_exact.hpp"

namespace cqot {

LinfResult solve_linf(const DiscreteMeasure& f0, const DiscreteMeasure& f1, const ConvexBody& body,
                      double tol) {
  if (f0.dimension() != body.dimension() || f1.dimension() != body.dimension()) {
    throw std::invalid_argument("solve_linf: dimension mismatch");
  }
  if (!origin_is_interior(body)) throw std::domain_error("solve_linf: origin is not interior to the body");

  const std::size_t n0 = f0.size(), n1 = f1.size();
  std::vector<double> table(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) table[i * n1 + j] = gauge(body, displacement(f0.point(i), f1.point(j)));
  }
  std::vector<double> levels = table;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto threshold_arcs = [&](double level, bool with_cost) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n1; ++j) {
        if (table[i * n1 + j] <= level) {
          const double c = with_cost ? squared_distance(f0.point(i), f1.point(j)) : 0.0;
          arcs.push_back({i, j, c});
        }
      }
    }
    return arcs;
  };
  auto feasible_at = [&](double level) {
    const std::vector<Arc> arcs = threshold_arcs(level, false);
    return bipartite_max_flow(f0.weights(), f1.weights(), arcs).deficit <= kFeasibilityDeficitTol;
  };

  // The largest level admits every arc, so the search is well founded.
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible_at(levels[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  LinfResult result;
  result.L_star = levels[lo];
  // Selection on the dilated body L*C, inflated by tol.
  const double level = result.L_star + tol * std::max(1.0, result.L_star);
  const std::vector<Arc> arcs = threshold_arcs(level, true);
  result.selection_report = solve_transport(f0.weights(), f1.weights(), arcs);
  result.selection_report.solver_name = "network_simplex(dilated body)";
  if (result.selection_report.status != SolveStatus::Optimal) {
    throw std::runtime_error("solve_linf: selection solve failed");
  }
  result.plan = result.selection_report.plan;
  return result;
}

}  // namespace cqot
