#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cqot/geometry.hpp"
#include "cqot/measures.hpp"

namespace cqot {

/// ||z|| = max_i z . v_i over a finite family that positively spans R^d.
class CrystallineNorm {
 public:
  /// Throws unless there are at least d+1 vectors of a common dimension
  /// and they positively span R^d.
  explicit CrystallineNorm(std::vector<Point> vectors);

  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] std::size_t size() const { return vectors_.size(); }
  [[nodiscard]] const std::vector<Point>& vectors() const { return vectors_; }

  /// The cone of displacements on which the norm equals z . v_index.
  [[nodiscard]] ConvexBody face_cone(std::size_t index) const;

 private:
  std::vector<Point> vectors_;
  std::size_t dimension_ = 0;
};

double norm_eval(const CrystallineNorm& norm, ConstVec z);

/// Smallest index attaining max_i z . v_i within tol. Throws for z = 0.
std::size_t face_index(const CrystallineNorm& norm, ConstVec z,
                       double tol = 1e-12);

struct FacePlan {
  std::size_t face = 0;
  /// Linear-program sub-plan routed through this face (global indices).
  TransportPlan lp_plan;
  /// Quadratic re-selection between the same marginals inside the face cone.
  TransportPlan plan;
  SolveReport report;
};

struct CrystallineResult {
  TransportPlan lp_plan;
  double lp_cost = 0.0;
  TransportPlan plan;
  double norm_cost = 0.0;
  std::vector<std::size_t> source_face;
  std::vector<FacePlan> per_face;
};

/// Raised when a face sub-problem has no coupling inside its cone.
class FaceInfeasible : public std::runtime_error {
 public:
  FaceInfeasible(std::size_t face, const std::string& what)
      : std::runtime_error(what), face_(face) {}
  [[nodiscard]] std::size_t face() const { return face_; }

 private:
  std::size_t face_;
};

/// Norm-cost transport by face decomposition: solve the linear LP, group
/// sources by face, re-select each group with the constrained quadratic
/// cost on its face cone, and reassemble.
CrystallineResult solve_crystalline(const DiscreteMeasure& f0,
                                    const DiscreteMeasure& f1,
                                    const CrystallineNorm& norm,
                                    double tol = kDefaultTol);

}  // namespace cqot
