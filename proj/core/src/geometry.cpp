#include "cqot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cqot/linear_program.hpp"

namespace cqot {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_finite(ConstVec v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
  }
}

void check_point(const ConvexBody& body, ConstVec z, const char* what) {
  if (z.size() != body.dimension()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (body " +
                                std::to_string(body.dimension()) + ", point " +
                                std::to_string(z.size()) + ")");
  }
}

// Largest slack margin: max over z of min_k (b_k - n_k . z), capped at 1.
// Returns -inf if the LP is infeasible.
lp::Solution max_slack_point(const std::vector<Halfspace>& rows, std::size_t d,
                             const Halfspace* equality) {
  lp::LinearProgram prog(d + 1);
  for (std::size_t v = 0; v <= d; ++v) prog.set_free(v);
  std::vector<double> obj(d + 1, 0.0);
  obj[d] = 1.0;
  prog.set_objective(obj);
  for (const Halfspace& h : rows) {
    std::vector<double> row(h.normal);
    row.push_back(1.0);
    prog.add_less_equal(std::move(row), h.offset);
  }
  std::vector<double> cap(d + 1, 0.0);
  cap[d] = 1.0;
  prog.add_less_equal(std::move(cap), 1.0);
  if (equality != nullptr) {
    std::vector<double> row(equality->normal);
    row.push_back(0.0);
    prog.add_equal(std::move(row), equality->offset);
  }
  return lp::maximize(prog);
}

// max over t in [0,1] of min_k (intercept_k + t * slope_k).
double max_min_affine(const std::vector<double>& intercept, const std::vector<double>& slope) {
  if (intercept.empty()) return std::numeric_limits<double>::infinity();
  auto value_at = [&](double t) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < intercept.size(); ++k) m = std::min(m, intercept[k] + t * slope[k]);
    return m;
  };
  double best = std::max(value_at(0.0), value_at(1.0));
  for (std::size_t k = 0; k < intercept.size(); ++k) {
    for (std::size_t l = k + 1; l < intercept.size(); ++l) {
      const double ds = slope[k] - slope[l];
      if (ds == 0.0) continue;
      const double t = (intercept[l] - intercept[k]) / ds;
      if (t > 0.0 && t < 1.0) best = std::max(best, value_at(t));
    }
  }
  return best;
}

bool same_halfspace(const Halfspace& a, const Halfspace& b, double tol) {
  if (std::abs(a.offset - b.offset) > tol) return false;
  for (std::size_t k = 0; k < a.normal.size(); ++k) {
    if (std::abs(a.normal[k] - b.normal[k]) > tol) return false;
  }
  return true;
}

}  // namespace

ConvexBody ConvexBody::ball(Point center, double radius) {
  check_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
  const std::size_t d = center.size();
  return ConvexBody(Ball{std::move(center), radius}, d);
}

ConvexBody ConvexBody::polytope(std::vector<Halfspace> halfspaces) {
  if (halfspaces.empty()) throw std::invalid_argument("polytope needs at least one halfspace");
  const std::size_t d = halfspaces.front().normal.size();
  if (d == 0) throw std::invalid_argument("polytope dimension must be positive");
  for (Halfspace& h : halfspaces) {
    if (h.normal.size() != d) throw std::invalid_argument("polytope: halfspace dimension mismatch");
    check_finite(h.normal, "halfspace normal");
    if (!std::isfinite(h.offset)) throw std::invalid_argument("halfspace offset must be finite");
    const double len = norm(h.normal);
    if (len == 0.0) throw std::invalid_argument("halfspace normal must be nonzero");
    for (double& x : h.normal) x /= len;
    h.offset /= len;
  }
  const lp::Solution sol = max_slack_point(halfspaces, d, nullptr);
  if (sol.status != lp::Status::Optimal || sol.x[d] < -kDefaultTol) {
    throw std::invalid_argument("polytope is empty");
  }
  return ConvexBody(Polytope{std::move(halfspaces)}, d);
}

ConvexBody ConvexBody::box(const Point& lo, const Point& hi) {
  if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("box: bad bounds");
  std::vector<Halfspace> rows;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (lo[k] > hi[k]) throw std::invalid_argument("box: lo > hi");
    Point e(lo.size(), 0.0);
    e[k] = 1.0;
    rows.push_back({e, hi[k]});
    e[k] = -1.0;
    rows.push_back({e, -lo[k]});
  }
  return polytope(std::move(rows));
}

ConvexBody ConvexBody::interval(double lo, double hi) { return box({lo}, {hi}); }

ConvexBody ConvexBody::face_cone(std::vector<Point> vectors, std::size_t index) {
  if (vectors.empty()) throw std::invalid_argument("face cone needs vectors");
  if (index >= vectors.size()) throw std::invalid_argument("face cone index out of range");
  const std::size_t d = vectors.front().size();
  for (const Point& v : vectors) {
    if (v.size() != d) throw std::invalid_argument("face cone: vector dimension mismatch");
    check_finite(v, "face cone vector");
  }
  return ConvexBody(FaceCone{std::move(vectors), index}, d);
}

ConvexBody ConvexBody::unconstrained(std::size_t dimension) {
  return ConvexBody(Unconstrained{}, dimension);
}

ConvexBody scale(const ConvexBody& body, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be positive and finite");
  }
  return ConvexBody(ConvexBody::Scaled{std::make_shared<const ConvexBody>(body), factor},
                    body.dimension());
}

bool contains(const ConvexBody& body, ConstVec z, double tol) {
  check_point(body, z, "contains");
  if (!(tol >= 0.0)) throw std::invalid_argument("contains: tol must be nonnegative");
  return std::visit(
      Overloaded{
          [&](const ConvexBody::Ball& b) {
            return std::sqrt(squared_distance(b.center, z)) <= b.radius + tol;
          },
          [&](const ConvexBody::Polytope& p) {
            return std::all_of(p.halfspaces.begin(), p.halfspaces.end(),
                               [&](const Halfspace& h) { return dot(h.normal, z) <= h.offset + tol; });
          },
          [&](const ConvexBody::Scaled& s) {
            return contains(*s.base, scaled(z, 1.0 / s.factor), tol);
          },
          [&](const ConvexBody::FaceCone& c) {
            const double own = dot(z, c.vectors[c.index]);
            return std::all_of(c.vectors.begin(), c.vectors.end(),
                               [&](const Point& v) { return own >= dot(z, v) - tol; });
          },
          [](const ConvexBody::Unconstrained&) { return true; },
      },
      body.shape());
}

bool origin_is_interior(const ConvexBody& body) {
  return std::visit(
      Overloaded{
          [](const ConvexBody::Ball& b) { return norm(b.center) < b.radius; },
          [](const ConvexBody::Polytope& p) {
            return std::all_of(p.halfspaces.begin(), p.halfspaces.end(),
                               [](const Halfspace& h) { return h.offset > 0.0; });
          },
          [](const ConvexBody::Scaled& s) { return origin_is_interior(*s.base); },
          [](const ConvexBody::FaceCone& c) {
            return std::all_of(c.vectors.begin(), c.vectors.end(),
                               [&](const Point& v) { return v == c.vectors[c.index]; });
          },
          [](const ConvexBody::Unconstrained&) { return true; },
      },
      body.shape());
}

double gauge(const ConvexBody& body, ConstVec z) {
  check_point(body, z, "gauge");
  if (!origin_is_interior(body)) throw std::domain_error("gauge: origin is not interior to the body");
  return std::visit(
      Overloaded{
          [&](const ConvexBody::Ball& b) {
            // |z - l c| = l r  =>  l^2 (r^2 - |c|^2) + 2 l (z.c) - |z|^2 = 0.
            const double zz = squared_norm(z);
            if (zz == 0.0) return 0.0;
            const double zc = dot(z, b.center);
            const double a = b.radius * b.radius - squared_norm(b.center);
            const double disc = std::sqrt(zc * zc + a * zz);
            // Stable root: zz / (zc + disc) == (-zc + disc) / a.
            return zc >= 0.0 ? zz / (zc + disc) : (disc - zc) / a;
          },
          [&](const ConvexBody::Polytope& p) {
            double g = 0.0;
            for (const Halfspace& h : p.halfspaces) g = std::max(g, dot(h.normal, z) / h.offset);
            return g;
          },
          [&](const ConvexBody::Scaled& s) { return gauge(*s.base, z) / s.factor; },
          [](const ConvexBody::FaceCone&) { return 0.0; },
          [](const ConvexBody::Unconstrained&) { return 0.0; },
      },
      body.shape());
}

std::vector<Facet> facets(const ConvexBody& body, double tol) {
  if (!body.is<ConvexBody::Polytope>()) throw std::invalid_argument("facets: body is not a polytope");
  const auto& rows = body.as<ConvexBody::Polytope>().halfspaces;
  const std::size_t d = body.dimension();
  std::vector<Facet> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    bool duplicate_of_earlier = false;
    std::vector<Halfspace> others;
    for (std::size_t l = 0; l < rows.size(); ++l) {
      if (l == k) continue;
      if (same_halfspace(rows[k], rows[l], tol)) {
        if (l < k) duplicate_of_earlier = true;
        continue;
      }
      others.push_back(rows[l]);
    }
    if (duplicate_of_earlier) continue;
    const lp::Solution sol = max_slack_point(others, d, &rows[k]);
    if (sol.status != lp::Status::Optimal || sol.x[d] <= tol) continue;
    out.push_back(Facet{k, Point(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(d)), d - 1});
  }
  return out;
}

bool segment_hits_interior(const ConvexBody& body, ConstVec z0, ConstVec z1, double tol) {
  check_point(body, z0, "segment_hits_interior");
  check_point(body, z1, "segment_hits_interior");
  if (!contains(body, z0, tol) || !contains(body, z1, tol)) {
    throw std::invalid_argument("segment_hits_interior: endpoint outside body");
  }
  const Point dz = displacement(z0, z1);
  return std::visit(
      Overloaded{
          [&](const ConvexBody::Ball& b) {
            const Point w = displacement(z0, b.center);
            const double len2 = squared_norm(dz);
            const double t = len2 > 0.0 ? std::clamp(dot(w, dz) / len2, 0.0, 1.0) : 0.0;
            Point closest(z0.begin(), z0.end());
            for (std::size_t k = 0; k < closest.size(); ++k) closest[k] += t * dz[k];
            return b.radius - std::sqrt(squared_distance(closest, b.center)) > tol;
          },
          [&](const ConvexBody::Polytope& p) {
            std::vector<double> intercept, slope;
            for (const Halfspace& h : p.halfspaces) {
              intercept.push_back(h.offset - dot(h.normal, z0));
              slope.push_back(-dot(h.normal, dz));
            }
            return max_min_affine(intercept, slope) > tol;
          },
          [&](const ConvexBody::Scaled& s) {
            return segment_hits_interior(*s.base, scaled(z0, 1.0 / s.factor),
                                         scaled(z1, 1.0 / s.factor), tol);
          },
          [&](const ConvexBody::FaceCone& c) {
            std::vector<double> intercept, slope;
            const Point& own = c.vectors[c.index];
            for (const Point& v : c.vectors) {
              if (v == own) continue;
              const Point diff = displacement(v, own);  // own - v
              intercept.push_back(dot(z0, diff));
              slope.push_back(dot(dz, diff));
            }
            return max_min_affine(intercept, slope) > tol;
          },
          [](const ConvexBody::Unconstrained&) { return true; },
      },
      body.shape());
}

}  // namespace cqot
