#include "cqot/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cqot {

std::vector<PairwiseViolation> check_pairwise_monotone(const TransportPlan& plan,
                                                       const Problem& problem, double tol) {
  const auto& entries = plan.entries();
  std::vector<PairwiseViolation> out;
  for (std::size_t p = 0; p < entries.size(); ++p) {
    for (std::size_t q = p + 1; q < entries.size(); ++q) {
      const Point& x0 = problem.f0.point(entries[p].source);
      const Point& y0 = problem.f1.point(entries[p].target);
      const Point& x1 = problem.f0.point(entries[q].source);
      const Point& y1 = problem.f1.point(entries[q].target);
      // Only pairs whose swapped arcs are admissible constrain the plan.
      if (!contains(problem.body, displacement(x1, y0), tol) ||
          !contains(problem.body, displacement(x0, y1), tol)) {
        continue;
      }
      const Point dy = displacement(y0, y1);
      const Point dx = displacement(x0, x1);
      const double ip = dot(dy, dx);
      if (ip < -tol * norm(dy) * norm(dx)) out.push_back({entries[p], entries[q], ip});
    }
  }
  return out;
}

namespace {

double count_cycles(std::size_t support, std::size_t k_max) {
  double total = 0.0;
  for (std::size_t k = 2; k <= std::min(k_max, support); ++k) {
    double subsets = 1.0;
    for (std::size_t t = 0; t < k; ++t) subsets = subsets * static_cast<double>(support - t) / static_cast<double>(t + 1);
    double orders = 1.0;
    for (std::size_t t = 2; t < k; ++t) orders *= static_cast<double>(t);
    total += subsets * orders;
  }
  return total;
}

double arc_cost(const Problem& problem, std::size_t i, std::size_t j, double tol) {
  const Point z = displacement(problem.f0.point(i), problem.f1.point(j));
  if (!contains(problem.body, z, tol)) return std::numeric_limits<double>::infinity();
  return squared_norm(z);
}

}  // namespace

std::vector<ImprovingCycle> check_cyclical(const TransportPlan& plan, const Problem& problem,
                                           std::size_t k_max, double tol, std::size_t budget) {
  if (k_max < 2) throw std::invalid_argument("check_cyclical: k_max must be at least 2");
  const auto& entries = plan.entries();
  const std::size_t s = entries.size();
  if (count_cycles(s, k_max) > static_cast<double>(budget)) {
    throw CycleBudgetExceeded("check_cyclical: " + std::to_string(s) + " support points with k_max " +
                              std::to_string(k_max) + " exceed the cycle budget of " +
                              std::to_string(budget));
  }

  std::vector<double> own(s);
  for (std::size_t e = 0; e < s; ++e) own[e] = arc_cost(problem, entries[e].source, entries[e].target, tol);

  std::vector<ImprovingCycle> out;
  std::vector<std::size_t> subset;
  for (std::size_t k = 2; k <= std::min(k_max, s); ++k) {
    // Enumerate k-subsets in lexicographic order.
    subset.resize(k);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      // Cyclic orders with subset[0] fixed first.
      std::vector<std::size_t> order(subset.begin() + 1, subset.end());
      do {
        std::vector<std::size_t> cycle{subset[0]};
        cycle.insert(cycle.end(), order.begin(), order.end());
        double original = 0.0, permuted = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
          const PlanEntry& from = entries[cycle[t]];
          const PlanEntry& to = entries[cycle[(t + 1) % k]];
          original += own[cycle[t]];
          permuted += arc_cost(problem, from.source, to.target, tol);
        }
        if (std::isfinite(permuted) && permuted < original - tol) {
          ImprovingCycle c;
          for (std::size_t idx : cycle) c.entries.push_back(entries[idx]);
          c.original_cost = original;
          c.permuted_cost = permuted;
          out.push_back(std::move(c));
        }
      } while (std::next_permutation(order.begin(), order.end()));

      std::size_t pos = k;
      while (pos > 0 && subset[pos - 1] == s - k + pos - 1) --pos;
      if (pos == 0) break;
      ++subset[pos - 1];
      for (std::size_t t = pos; t < k; ++t) subset[t] = subset[t - 1] + 1;
    }
  }
  return out;
}

double split_mass(const TransportPlan& plan) {
  std::map<std::size_t, std::pair<double, double>> rows;  // source -> (sum, max)
  for (const PlanEntry& e : plan.entries()) {
    auto& [total, best] = rows[e.source];
    total += e.mass;
    best = std::max(best, e.mass);
  }
  double split = 0.0;
  for (const auto& [source, row] : rows) split += row.first - row.second;
  return split;
}

std::vector<FlatPartViolation> check_same_flat_part(const TransportPlan& plan, const Problem& problem,
                                                    double tol) {
  std::map<std::size_t, std::vector<std::size_t>> targets;
  for (const PlanEntry& e : plan.entries()) targets[e.source].push_back(e.target);

  std::vector<FlatPartViolation> out;
  for (const auto& [source, ts] : targets) {
    if (ts.size() < 2) continue;
    const Point& x = problem.f0.point(source);
    FlatPartViolation v{source, {}};
    for (std::size_t p = 0; p < ts.size(); ++p) {
      const Point z0 = displacement(x, problem.f1.point(ts[p]));
      if (!contains(problem.body, z0, tol)) continue;
      for (std::size_t q = p + 1; q < ts.size(); ++q) {
        const Point z1 = displacement(x, problem.f1.point(ts[q]));
        if (!contains(problem.body, z1, tol)) continue;
        if (segment_hits_interior(problem.body, z0, z1, tol)) v.target_pairs.emplace_back(ts[p], ts[q]);
      }
    }
    if (!v.target_pairs.empty()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace cqot
