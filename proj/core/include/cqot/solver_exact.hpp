#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cqot/flow.hpp"
#include "cqot/measures.hpp"

namespace cqot {

struct FeasibleArc {
  std::size_t source = 0;
  std::size_t target = 0;
  double squared_distance = 0.0;
};

/// All (i, j) with y_j - x_i in the body (within tol), in lexicographic order.
std::vector<FeasibleArc> feasible_arcs(const Problem& problem,
                                       double tol = kDefaultTol);

/// Max-flow certificate for the existence of a finite-cost coupling.
struct FeasibilityCertificate {
  bool feasible = false;
  double max_flow = 0.0;
  double deficit = 0.0;
};

/// Flow deficit above which an instance is declared infeasible.
inline constexpr double kFeasibilityDeficitTol = 1e-9;

FeasibilityCertificate check_feasible(const Problem& problem,
                                      double tol = kDefaultTol);

struct ExactOptions {
  double tol = kDefaultTol;
  PivotRule pivot_rule = PivotRule::Bland;
};

/// Vertex-optimal coupling for the constrained quadratic cost.
/// Status is Infeasible (with the flow deficit) when no finite-cost coupling
/// exists.
SolveReport solve_exact(const Problem& problem, const ExactOptions& options = {});

/// Transportation LP between weight vectors on an explicit arc list with
/// arbitrary nonnegative costs. Objective is sum mass * arc cost.
SolveReport solve_transport(std::span<const double> weights0,
                            std::span<const double> weights1,
                            std::span<const Arc> arcs,
                            PivotRule rule = PivotRule::Bland);

}  // namespace cqot
