#pragma once

#include "cqot/measures.hpp"

namespace cqot {

/// Nondecreasing (quantile) coupling of two measures on the line. Ties in
/// position keep input order.
TransportPlan monotone_plan(const DiscreteMeasure& f0, const DiscreteMeasure& f1);

/// The monotone coupling if all its displacements lie in [lo, hi] (within
/// tol); otherwise no finite-cost coupling exists and the report is
/// Infeasible with the offending arc.
SolveReport optimal_1d_constrained(const DiscreteMeasure& f0,
                                   const DiscreteMeasure& f1, double lo,
                                   double hi, double tol = kDefaultTol);

}  // namespace cqot
