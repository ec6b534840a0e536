#pragma once

#include <cstddef>
#include <optional>

#include "cqot/measures.hpp"
#include "cqot/solver_exact.hpp"

namespace cqot {

struct EntropicOptions {
  /// Regularization strength; defaults to 1e-2 x median squared arc length.
  std::optional<double> epsilon;
  std::size_t max_iter = 10000;
  double marginal_tol = 1e-8;
  double tol = kDefaultTol;
  /// Drop feasible arcs that no coupling can use before scaling. Without
  /// this, instances whose only couplings sit on the boundary of the
  /// transport polytope converge sublinearly.
  bool prune_unsupported_arcs = true;
};

double default_epsilon(std::span<const FeasibleArc> arcs);

/// Log-domain Sinkhorn on the feasible-arc kernel. The objective reported is
/// the unregularized quadratic cost of the returned plan.
SolveReport solve_entropic(const Problem& problem,
                           const EntropicOptions& options = {});

}  // namespace cqot
