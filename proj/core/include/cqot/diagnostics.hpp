#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cqot/measures.hpp"

namespace cqot {

struct PairwiseViolation {
  PlanEntry first;
  PlanEntry second;
  double inner_product = 0.0;
};

/// Support pairs whose cross displacements are admissible but for which
/// <y1 - y0, x1 - x0> < -tol * |y1 - y0| * |x1 - x0|.
std::vector<PairwiseViolation> check_pairwise_monotone(const TransportPlan& plan,
                                                       const Problem& problem,
                                                       double tol = 1e-7);

struct ImprovingCycle {
  /// Support entries in cycle order; entry k is reassigned to the target of
  /// entry k+1 (cyclically).
  std::vector<PlanEntry> entries;
  double original_cost = 0.0;
  double permuted_cost = 0.0;
};

class CycleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultCycleBudget = 1'000'000;

/// Brute-force c-cyclical monotonicity up to cycle length k_max. A cycle
/// improves when every reassigned arc is admissible and the permuted cost
/// is below the original by more than tol.
std::vector<ImprovingCycle> check_cyclical(const TransportPlan& plan,
                                           const Problem& problem,
                                           std::size_t k_max,
                                           double tol = kDefaultTol,
                                           std::size_t budget = kDefaultCycleBudget);

/// sum_i (w_i - max_j pi_ij), with w_i the plan's own row sums.
double split_mass(const TransportPlan& plan);

struct FlatPartViolation {
  std::size_t source = 0;
  std::vector<std::pair<std::size_t, std::size_t>> target_pairs;
};

/// Split sources whose displacements are not on a common flat part of the
/// body, i.e. some pair of displacement endpoints spans a segment that
/// enters the interior.
std::vector<FlatPartViolation> check_same_flat_part(const TransportPlan& plan,
                                                    const Problem& problem,
                                                    double tol = kDefaultTol);

}  // namespace cqot
