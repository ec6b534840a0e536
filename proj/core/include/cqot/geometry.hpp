#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "cqot/vector_ops.hpp"

namespace cqot {

/// {z : normal . z <= offset}; the normal is stored with unit length.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

/// A (d-1)-dimensional face of an H-polytope.
struct Facet {
  std::size_t active_halfspace_index = 0;
  Point relative_interior_point;
  std::size_t dimension = 0;
};

/// Closed convex constraint set C for displacements y - x.
///
/// Immutable value type. Supported shapes are Euclidean balls, H-polytopes
/// (nonempty, normals normalized at construction), dilations of another
/// body, face cones of a finite vector family, and the whole space.
class ConvexBody {
 public:
  struct Ball {
    Point center;
    double radius = 0.0;
  };
  struct Polytope {
    std::vector<Halfspace> halfspaces;
  };
  struct Scaled {
    std::shared_ptr<const ConvexBody> base;
    double factor = 1.0;
  };
  /// {z : z.v[index] >= z.v[k] for all k}.
  struct FaceCone {
    std::vector<Point> vectors;
    std::size_t index = 0;
  };
  struct Unconstrained {};

  using Shape = std::variant<Ball, Polytope, Scaled, FaceCone, Unconstrained>;

  static ConvexBody ball(Point center, double radius);
  /// Normalizes every row and certifies nonemptiness with an LP.
  static ConvexBody polytope(std::vector<Halfspace> halfspaces);
  /// Axis-aligned box [lo_k, hi_k] as a polytope.
  static ConvexBody box(const Point& lo, const Point& hi);
  /// The 1D interval [lo, hi].
  static ConvexBody interval(double lo, double hi);
  static ConvexBody face_cone(std::vector<Point> vectors, std::size_t index);
  static ConvexBody unconstrained(std::size_t dimension);

  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] const Shape& shape() const { return shape_; }

  template <class T>
  [[nodiscard]] bool is() const {
    return std::holds_alternative<T>(shape_);
  }
  template <class T>
  [[nodiscard]] const T& as() const {
    return std::get<T>(shape_);
  }

 private:
  ConvexBody(Shape shape, std::size_t dimension)
      : shape_(std::move(shape)), dimension_(dimension) {}

  friend ConvexBody scale(const ConvexBody& body, double factor);

  Shape shape_;
  std::size_t dimension_ = 0;
};

/// Membership in the closed body inflated by `tol`.
bool contains(const ConvexBody& body, ConstVec z, double tol = kDefaultTol);

/// Minkowski gauge inf{l > 0 : z/l in C}. Requires 0 in the interior of C.
double gauge(const ConvexBody& body, ConstVec z);

/// True when the origin lies strictly inside the body.
bool origin_is_interior(const ConvexBody& body);

/// Facets of an H-polytope. Redundant and duplicated rows yield no facet.
std::vector<Facet> facets(const ConvexBody& body, double tol = kDefaultTol);

/// The dilation L*C.
ConvexBody scale(const ConvexBody& body, double factor);

/// True iff some point of [z0, z1] is interior to the body by a margin > tol.
bool segment_hits_interior(const ConvexBody& body, ConstVec z0, ConstVec z1,
                           double tol = kDefaultTol);

}  // namespace cqot
