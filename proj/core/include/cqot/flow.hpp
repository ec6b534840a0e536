#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cqot {

/// Directed arc of the bipartite transport graph, source -> target.
struct Arc {
  std::size_t source = 0;
  std::size_t target = 0;
  double cost = 0.0;
};

/// Max-flow on source -> arcs -> target with row capacities `supply`,
/// column capacities `demand` and uncapacitated arcs.
struct MaxFlowResult {
  double flow = 0.0;
  double deficit = 0.0;  // sum(supply) - flow
  std::vector<double> arc_flow;
};

MaxFlowResult bipartite_max_flow(std::span<const double> supply,
                                 std::span<const double> demand,
                                 std::span<const Arc> arcs);

/// Mask of arcs that carry positive mass in at least one coupling of
/// (supply, demand) supported on `arcs`. Requires a feasible instance.
std::vector<bool> supportable_arcs(std::span<const double> supply,
                                   std::span<const double> demand,
                                   std::span<const Arc> arcs);

enum class PivotRule {
  Bland,    // first eligible arc in index order
  Dantzig,  // most negative reduced cost, ties by index
};

enum class FlowStatus { Optimal, Infeasible, IterationLimit };

struct NetworkSimplexResult {
  FlowStatus status = FlowStatus::Infeasible;
  std::vector<double> arc_flow;
  std::size_t pivots = 0;
  /// max(0, -reduced cost) over nonbasic arcs, relative to the cost scale.
  double residual = 0.0;
  /// Supply still unrouted after phase one.
  double artificial_mass = 0.0;
};

/// Primal network simplex for the transportation problem restricted to
/// `arcs`. The returned flow is a basic (vertex) solution: at most
/// n0 + n1 - 1 arcs carry mass.
NetworkSimplexResult network_simplex(std::span<const double> supply,
                                     std::span<const double> demand,
                                     std::span<const Arc> arcs,
                                     PivotRule rule = PivotRule::Bland);

}  // namespace cqot
