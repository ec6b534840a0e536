#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqot {

/// A point or displacement in R^d.
using Point = std::vector<double>;
using ConstVec = std::span<const double>;

/// Default additive tolerance for geometric membership.
inline constexpr double kDefaultTol = 1e-9;

/// Entries below this are treated as numerical dust and dropped from plans.
inline constexpr double kMassFloor = 1e-14;

inline void require_same_dimension(ConstVec a, ConstVec b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

inline double dot(ConstVec a, ConstVec b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double squared_norm(ConstVec a) { return dot(a, a); }

inline double norm(ConstVec a) { return std::sqrt(squared_norm(a)); }

/// b - a, i.e. the displacement carrying a onto b.
inline Point displacement(ConstVec a, ConstVec b) {
  Point d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = b[k] - a[k];
  return d;
}

inline double squared_distance(ConstVec a, ConstVec b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = b[k] - a[k];
    s += t * t;
  }
  return s;
}

inline Point scaled(ConstVec a, double factor) {
  Point r(a.begin(), a.end());
  for (double& x : r) x *= factor;
  return r;
}

}  // namespace cqot
