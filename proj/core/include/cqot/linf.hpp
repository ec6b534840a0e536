#pragma once

#include "cqot/geometry.hpp"
#include "cqot/measures.hpp"

namespace cqot {

struct LinfResult {
  /// Smallest achievable max gauge displacement.
  double L_star = 0.0;
  TransportPlan plan;
  /// Constrained quadratic selection on the dilated body L_star * C.
  SolveReport selection_report;
};

/// Bottleneck transport for the gauge of `body`, with the quadratic
/// selection among optimal plans. Requires 0 in the interior of the body.
LinfResult solve_linf(const DiscreteMeasure& f0, const DiscreteMeasure& f1,
                      const ConvexBody& body, double tol = kDefaultTol);

}  // namespace cqot
