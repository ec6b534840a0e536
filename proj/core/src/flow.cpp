#include "cqot/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace cqot {
namespace {

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void check_arcs(std::size_t n0, std::size_t n1, std::span<const Arc> arcs) {
  for (const Arc& a : arcs) {
    if (a.source >= n0 || a.target >= n1) throw std::out_of_range("arc endpoint out of range");
  }
}

// Dinic's algorithm on a graph with real capacities.
class Dinic {
 public:
  explicit Dinic(std::size_t n, double eps) : adj_(n), level_(n), next_(n), eps_(eps) {}

  std::size_t add_edge(std::size_t u, std::size_t v, double cap) {
    adj_[u].push_back(edges_.size());
    edges_.push_back({v, cap});
    adj_[v].push_back(edges_.size());
    edges_.push_back({u, 0.0});
    return edges_.size() - 2;
  }

  double flow_on(std::size_t edge) const { return edges_[edge ^ 1].cap; }

  double run(std::size_t s, std::size_t t) {
    double total = 0.0;
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        const double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= eps_) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    double cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t id : adj_[u]) {
        const Edge& e = edges_[id];
        if (e.cap > eps_ && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(std::size_t u, std::size_t t, double limit) {
    if (u == t) return limit;
    for (std::size_t& k = next_[u]; k < adj_[u].size(); ++k) {
      const std::size_t id = adj_[u][k];
      Edge& e = edges_[id];
      if (e.cap <= eps_ || level_[e.to] != level_[u] + 1) continue;
      const double got = dfs(e.to, t, std::min(limit, e.cap));
      if (got > eps_) {
        e.cap -= got;
        edges_[id ^ 1].cap += got;
        return got;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
  double eps_;
};

// Iterative Tarjan strongly connected components.
std::vector<std::size_t> strong_components(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next child)
  std::size_t counter = 0, components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [u, child] = call.back();
      if (child == 0 && index[u] == kUnset) {
        index[u] = low[u] = counter++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      if (child < adj[u].size()) {
        const std::size_t v = adj[u][child++];
        if (index[v] == kUnset) {
          call.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      if (low[u] == index[u]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != u);
        ++components;
      }
      const std::size_t finished = u;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

}  // namespace

MaxFlowResult bipartite_max_flow(std::span<const double> supply, std::span<const double> demand,
                                 std::span<const Arc> arcs) {
  const std::size_t n0 = supply.size(), n1 = demand.size();
  check_arcs(n0, n1, arcs);
  const double total = sum(supply);
  const double big = total + sum(demand) + 1.0;
  const std::size_t s = n0 + n1, t = s + 1;
  Dinic g(n0 + n1 + 2, 1e-15 * std::max(1.0, total));
  for (std::size_t i = 0; i < n0; ++i) g.add_edge(s, i, supply[i]);
  for (std::size_t j = 0; j < n1; ++j) g.add_edge(n0 + j, t, demand[j]);
  std::vector<std::size_t> ids;
  ids.reserve(arcs.size());
  for (const Arc& a : arcs) ids.push_back(g.add_edge(a.source, n0 + a.target, big));

  MaxFlowResult out;
  out.flow = g.run(s, t);
  out.deficit = std::max(0.0, total - out.flow);
  out.arc_flow.reserve(arcs.size());
  for (std::size_t id : ids) out.arc_flow.push_back(g.flow_on(id));
  return out;
}

std::vector<bool> supportable_arcs(std::span<const double> supply, std::span<const double> demand,
                                   std::span<const Arc> arcs) {
  const std::size_t n0 = supply.size(), n1 = demand.size();
  const MaxFlowResult mf = bipartite_max_flow(supply, demand, arcs);
  const double eps = 1e-12 * std::max(1.0, sum(supply));

  // Residual graph of a full coupling: forward along every arc, backward
  // along arcs carrying flow. A zero-flow arc can carry mass in some
  // coupling iff it closes a residual cycle.
  std::vector<std::vector<std::size_t>> adj(n0 + n1);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    adj[arcs[k].source].push_back(n0 + arcs[k].target);
    if (mf.arc_flow[k] > eps) adj[n0 + arcs[k].target].push_back(arcs[k].source);
  }
  const std::vector<std::size_t> comp = strong_components(adj);
  std::vector<bool> usable(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    usable[k] = mf.arc_flow[k] > eps || comp[arcs[k].source] == comp[n0 + arcs[k].target];
  }
  return usable;
}

namespace {

// Spanning-tree network simplex over sources, targets and one artificial
// root. Artificial arcs i -> root and root -> j start as the basis.
class NetworkSimplex {
 public:
  NetworkSimplex(std::span<const double> supply, std::span<const double> demand,
                 std::span<const Arc> arcs)
      : n0_(supply.size()), n1_(demand.size()), m_(arcs.size()) {
    nodes_ = n0_ + n1_ + 1;
    root_ = n0_ + n1_;
    const std::size_t total_arcs = m_ + n0_ + n1_;
    tail_.resize(total_arcs);
    head_.resize(total_arcs);
    cost_.assign(total_arcs, 0.0);
    cap_.assign(total_arcs, kInf);
    flow_.assign(total_arcs, 0.0);
    in_tree_.assign(total_arcs, false);
    for (std::size_t k = 0; k < m_; ++k) {
      tail_[k] = arcs[k].source;
      head_[k] = n0_ + arcs[k].target;
      real_cost_.push_back(arcs[k].cost);
    }
    for (std::size_t i = 0; i < n0_; ++i) {
      tail_[m_ + i] = i;
      head_[m_ + i] = root_;
      flow_[m_ + i] = supply[i];
    }
    for (std::size_t j = 0; j < n1_; ++j) {
      tail_[m_ + n0_ + j] = root_;
      head_[m_ + n0_ + j] = n0_ + j;
      flow_[m_ + n0_ + j] = demand[j];
    }
    for (std::size_t a = m_; a < total_arcs; ++a) {
      tree_.push_back(a);
      in_tree_[a] = true;
    }
    parent_.assign(nodes_, 0);
    parent_arc_.assign(nodes_, 0);
    depth_.assign(nodes_, 0);
    pot_.assign(nodes_, 0.0);
    total_supply_ = std::max(1.0, sum(supply));
    flow_tol_ = 1e-14 * total_supply_;
    double scale = 1.0;
    for (double c : real_cost_) scale = std::max(scale, std::abs(c));
    cost_scale_ = scale;
  }

  NetworkSimplexResult solve(PivotRule rule) {
    NetworkSimplexResult out;
    const std::size_t limit = 2'000'000 + 200 * (m_ + nodes_);

    // Phase one: drive the artificial flow to zero.
    for (std::size_t a = m_; a < cost_.size(); ++a) cost_[a] = 1.0;
    if (!run(rule, 1e-12, out.pivots, limit)) {
      out.status = FlowStatus::IterationLimit;
      return out;
    }
    // Supply that still reaches the root directly was not routed.
    for (std::size_t a = m_; a < m_ + n0_; ++a) out.artificial_mass += flow_[a];
    if (out.artificial_mass > 1e-9 * total_supply_) {
      out.status = FlowStatus::Infeasible;
      return out;
    }

    // Phase two: artificial arcs pinned at zero flow.
    for (std::size_t a = m_; a < cost_.size(); ++a) {
      cost_[a] = 0.0;
      cap_[a] = 0.0;
      flow_[a] = 0.0;
    }
    for (std::size_t k = 0; k < m_; ++k) cost_[k] = real_cost_[k];
    if (!run(rule, 1e-12 * cost_scale_, out.pivots, limit)) {
      out.status = FlowStatus::IterationLimit;
      return out;
    }

    out.status = FlowStatus::Optimal;
    out.arc_flow.assign(flow_.begin(), flow_.begin() + static_cast<std::ptrdiff_t>(m_));
    for (std::size_t k = 0; k < m_; ++k) {
      if (in_tree_[k]) continue;
      const double rc = cost_[k] + pot_[tail_[k]] - pot_[head_[k]];
      out.residual = std::max(out.residual, -rc / cost_scale_);
    }
    return out;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  void rebuild_tree() {
    // Adjacency of the current spanning tree in CSR form.
    offsets_.assign(nodes_ + 1, 0);
    for (std::size_t a : tree_) {
      ++offsets_[tail_[a] + 1];
      ++offsets_[head_[a] + 1];
    }
    for (std::size_t v = 0; v < nodes_; ++v) offsets_[v + 1] += offsets_[v];
    incident_.resize(2 * tree_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t a : tree_) {
      incident_[fill[tail_[a]]++] = a;
      incident_[fill[head_[a]]++] = a;
    }
    order_.clear();
    order_.push_back(root_);
    visited_.assign(nodes_, false);
    visited_[root_] = true;
    depth_[root_] = 0;
    pot_[root_] = 0.0;
    for (std::size_t q = 0; q < order_.size(); ++q) {
      const std::size_t u = order_[q];
      for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
        const std::size_t a = incident_[k];
        const std::size_t v = tail_[a] == u ? head_[a] : tail_[a];
        if (visited_[v]) continue;
        visited_[v] = true;
        parent_[v] = u;
        parent_arc_[v] = a;
        depth_[v] = depth_[u] + 1;
        pot_[v] = tail_[a] == u ? pot_[u] + cost_[a] : pot_[u] - cost_[a];
        order_.push_back(v);
      }
    }
    if (order_.size() != nodes_) throw std::logic_error("network simplex: basis is not a spanning tree");
  }

  double reduced_cost(std::size_t a) const { return cost_[a] + pot_[tail_[a]] - pot_[head_[a]]; }

  std::size_t select_entering(PivotRule rule, double eps) const {
    std::size_t best = m_;
    double best_rc = -eps;
    for (std::size_t k = 0; k < m_; ++k) {
      if (in_tree_[k]) continue;
      const double rc = reduced_cost(k);
      if (rc < best_rc) {
        best = k;
        if (rule == PivotRule::Bland) return best;
        best_rc = rc;
      }
    }
    return best;
  }

  // Returns false on hitting the pivot limit.
  bool run(PivotRule rule, double eps, std::size_t& pivots, std::size_t limit) {
    rebuild_tree();
    std::size_t degenerate_streak = 0;
    PivotRule active = rule;
    while (true) {
      if (pivots >= limit) return false;
      const std::size_t enter = select_entering(active, eps);
      if (enter == m_) return true;
      pivot(enter, degenerate_streak);
      ++pivots;
      // Dantzig pricing can cycle on degenerate bases; Bland cannot.
      if (degenerate_streak > 10 * nodes_) active = PivotRule::Bland;
    }
  }

  void pivot(std::size_t enter, std::size_t& degenerate_streak) {
    cycle_.clear();
    // Flow is pushed along enter (tail -> head) and back through the tree
    // from head to tail.
    std::size_t a = head_[enter], b = tail_[enter];
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        const std::size_t arc = parent_arc_[a];
        cycle_.push_back({arc, tail_[arc] == a});
        a = parent_[a];
      } else {
        const std::size_t arc = parent_arc_[b];
        cycle_.push_back({arc, head_[arc] == b});
        b = parent_[b];
      }
    }

    double delta = kInf;
    std::size_t leave = flow_.size();
    bool leave_forward = false;
    for (const auto& [arc, forward] : cycle_) {
      const double room = forward ? cap_[arc] - flow_[arc] : flow_[arc];
      if (leave == flow_.size() || room < delta - flow_tol_) {
        delta = room;
        leave = arc;
        leave_forward = forward;
      } else if (room <= delta + flow_tol_ && arc < leave) {
        delta = std::min(delta, room);
        leave = arc;
        leave_forward = forward;
      }
    }
    if (leave == flow_.size() || delta == kInf) throw std::logic_error("network simplex: unbounded cycle");
    delta = std::max(delta, 0.0);
    degenerate_streak = delta > flow_tol_ ? 0 : degenerate_streak + 1;

    flow_[enter] += delta;
    for (const auto& [arc, forward] : cycle_) {
      flow_[arc] += forward ? delta : -delta;
      if (flow_[arc] < 0.0) flow_[arc] = 0.0;
    }
    flow_[leave] = leave_forward ? cap_[leave] : 0.0;

    in_tree_[leave] = false;
    in_tree_[enter] = true;
    *std::find(tree_.begin(), tree_.end(), leave) = enter;
    rebuild_tree();
  }

  std::size_t n0_, n1_, m_, nodes_ = 0, root_ = 0;
  std::vector<std::size_t> tail_, head_;
  std::vector<double> cost_, real_cost_, cap_, flow_;
  std::vector<bool> in_tree_;
  std::vector<std::size_t> tree_;
  std::vector<std::size_t> parent_, parent_arc_, depth_;
  std::vector<double> pot_;
  std::vector<std::size_t> offsets_, incident_, order_;
  std::vector<bool> visited_;
  std::vector<std::pair<std::size_t, bool>> cycle_;
  double flow_tol_ = 1e-14;
  double total_supply_ = 1.0;
  double cost_scale_ = 1.0;
};

}  // namespace

NetworkSimplexResult network_simplex(std::span<const double> supply,
                                     std::span<const double> demand, std::span<const Arc> arcs,
                                     PivotRule rule) {
  check_arcs(supply.size(), demand.size(), arcs);
  for (const Arc& a : arcs) {
    if (!std::isfinite(a.cost)) throw std::invalid_argument("network simplex: non-finite arc cost");
  }
  if (std::abs(sum(supply) - sum(demand)) > 1e-9 * std::max(1.0, sum(supply))) {
    throw std::invalid_argument("network simplex: supply and demand totals differ");
  }
  NetworkSimplex ns(supply, demand, arcs);
  return ns.solve(rule);
}

}  // namespace cqot
