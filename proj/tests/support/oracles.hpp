#pragma once

// Independent reference computations for the test suites. Nothing here calls
// a solver from the library; only value types and membership/gauge queries.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "cqot/geometry.hpp"
#include "cqot/measures.hpp"

namespace oracle {

using cqot::Point;

inline double sq(double x) { return x * x; }

inline double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += sq(b[k] - a[k]);
  return s;
}

inline Point diff(const Point& from, const Point& to) {
  Point d(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) d[k] = to[k] - from[k];
  return d;
}

/// Best permutation under `arc_cost` (infinite arcs forbidden) for n0 == n1.
/// Returns the sum of arc costs and the minimizing permutation; infinity if
/// no permutation is admissible.
struct PermutationOptimum {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm;
};

inline PermutationOptimum best_permutation(std::size_t n,
                                           const std::function<double(std::size_t, std::size_t)>& arc_cost) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  PermutationOptimum best;
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n && std::isfinite(total); ++i) total += arc_cost(i, p[i]);
    if (total < best.value) {
      best.value = total;
      best.perm = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// min over permutations of max arc value.
inline double bottleneck_permutation(std::size_t n, const std::function<double(std::size_t, std::size_t)>& arc_value) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, arc_value(i, p[i]));
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Constrained quadratic permutation optimum, divided by n (uniform weights).
inline double brute_force_constrained(const cqot::Problem& pr, double tol = 1e-9) {
  const std::size_t n = pr.f0.size();
  const auto best = best_permutation(n, [&](std::size_t i, std::size_t j) {
    const Point d = diff(pr.f0.point(i), pr.f1.point(j));
    return cqot::contains(pr.body, d, tol) ? dist2(pr.f0.point(i), pr.f1.point(j))
                                           : std::numeric_limits<double>::infinity();
  });
  return best.value / static_cast<double>(n);
}

/// Gauge by bisection on lambda against the membership test alone.
inline double bisection_gauge(const cqot::ConvexBody& body, const Point& z) {
  double lo = 0.0, hi = 1.0;
  auto inside = [&](double lambda) {
    Point s = z;
    for (double& v : s) v /= lambda;
    return cqot::contains(body, s, 0.0);
  };
  if (std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; })) return 0.0;
  while (!inside(hi)) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Plain (non-log) Sinkhorn fixed point on a masked Gibbs kernel.
inline std::vector<std::vector<double>> plain_sinkhorn(const std::vector<double>& a, const std::vector<double>& b,
                                                       const std::vector<std::vector<double>>& cost,
                                                       const std::vector<std::vector<bool>>& allowed, double epsilon,
                                                       int iterations = 20000) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<double>> K(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) K[i][j] = allowed[i][j] ? std::exp(-cost[i][j] / epsilon) : 0.0;
  std::vector<double> u(n, 1.0), v(m, 1.0);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += K[i][j] * v[j];
      u[i] = a[i] / s;
    }
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += K[i][j] * u[i];
      v[j] = b[j] / s;
    }
  }
  std::vector<std::vector<double>> P(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) P[i][j] = u[i] * K[i][j] * v[j];
  return P;
}

/// Vertices of a 2D H-polytope {n_k . z <= b_k} by intersecting row pairs.
inline std::vector<Point> polygon_vertices(const std::vector<cqot::Halfspace>& rows, double tol = 1e-9) {
  std::vector<Point> out;
  for (std::size_t p = 0; p < rows.size(); ++p) {
    for (std::size_t q = p + 1; q < rows.size(); ++q) {
      const auto& a = rows[p].normal;
      const auto& c = rows[q].normal;
      const double det = a[0] * c[1] - a[1] * c[0];
      if (std::abs(det) < 1e-12) continue;
      const Point z{(rows[p].offset * c[1] - a[1] * rows[q].offset) / det,
                    (a[0] * rows[q].offset - rows[p].offset * c[0]) / det};
      bool ok = true;
      for (const auto& h : rows) ok = ok && h.normal[0] * z[0] + h.normal[1] * z[1] <= h.offset + tol;
      if (!ok) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const Point& w) { return dist2(w, z) < tol; });
      if (!dup) out.push_back(z);
    }
  }
  return out;
}

/// Number of distinct 1D edges: supporting lines that hold two distinct
/// vertices. Duplicate rows describe the same line and count once.
inline std::size_t polygon_edge_count(const std::vector<cqot::Halfspace>& rows, double tol = 1e-9) {
  const auto verts = polygon_vertices(rows, tol);
  std::set<std::array<long long, 3>> seen;
  std::size_t edges = 0;
  for (const auto& h : rows) {
    const double len = std::hypot(h.normal[0], h.normal[1]);
    std::size_t on = 0;
    for (const auto& v : verts) on += std::abs((h.normal[0] * v[0] + h.normal[1] * v[1] - h.offset) / len) < tol;
    if (on < 2) continue;
    const std::array<long long, 3> key{std::llround(1e6 * h.normal[0] / len), std::llround(1e6 * h.normal[1] / len),
                                        std::llround(1e6 * h.offset / len)};
    if (seen.insert(key).second) ++edges;
  }
  return edges;
}

/// Row and column sums by direct loops.
inline std::pair<std::vector<double>, std::vector<double>> direct_marginals(const cqot::TransportPlan& plan,
                                                                            std::size_t n0, std::size_t n1) {
  std::vector<double> r(n0, 0.0), c(n1, 0.0);
  for (std::size_t i = 0; i < n0; ++i)
    for (const auto& e : plan.entries())
      if (e.source == i) r[i] += e.mass;
  for (std::size_t j = 0; j < n1; ++j)
    for (const auto& e : plan.entries())
      if (e.target == j) c[j] += e.mass;
  return {r, c};
}

// ---- random instances ----

inline Point random_point(std::mt19937_64& rng, std::size_t d, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p(d);
  for (double& v : p) v = u(rng);
  return p;
}

inline std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, std::size_t d, double lo = -1.0,
                                        double hi = 1.0) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_point(rng, d, lo, hi));
  return out;
}

inline std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (double& v : w) s += (v = u(rng));
  for (double& v : w) v /= s;
  return w;
}

/// Random 2D problem with a constraining body, resampled until a finite
/// coupling exists. Targets are a jittered permutation of the sources so
/// that short admissible arcs always exist.
inline cqot::Problem random_feasible_problem(std::mt19937_64& rng, std::size_t n0, std::size_t n1, bool uniform,
                                             const cqot::ConvexBody& body, const std::function<bool(const cqot::Problem&)>& feasible) {
  for (;;) {
    auto xs = random_points(rng, n0, 2);
    std::vector<Point> ys;
    std::uniform_int_distribution<std::size_t> pick(0, n0 - 1);
    for (std::size_t j = 0; j < n1; ++j) {
      Point y = xs[j < n0 ? j : pick(rng)];
      const Point jitter = random_point(rng, 2, -0.6, 0.6);
      for (std::size_t k = 0; k < 2; ++k) y[k] += jitter[k];
      ys.push_back(y);
    }
    std::shuffle(ys.begin(), ys.end(), rng);
    cqot::DiscreteMeasure f0 = uniform ? cqot::DiscreteMeasure::uniform(xs)
                                       : cqot::DiscreteMeasure(xs, random_weights(rng, n0));
    cqot::DiscreteMeasure f1 = uniform ? cqot::DiscreteMeasure::uniform(ys)
                                       : cqot::DiscreteMeasure(ys, random_weights(rng, n1));
    cqot::Problem p(std::move(f0), std::move(f1), body);
    if (feasible(p)) return p;
  }
}

}  // namespace oracle
