#include "cqot/example1.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cqot {
namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::array<Point, 3> example1_centers() {
  return {Point{-5.0 / 8.0, 0.0}, Point{0.0, std::sqrt(39.0) / 8.0}, Point{5.0 / 8.0, 0.0}};
}

Problem generate_example1(std::size_t atoms_per_ball, double eps_radius, std::uint64_t seed) {
  if (!(eps_radius >= 0.0) || !std::isfinite(eps_radius)) {
    throw std::invalid_argument("example1: eps_radius must be a nonnegative number");
  }
  // The closest centers are at distance 1.
  if (eps_radius >= 0.5) throw std::invalid_argument("example1: eps_radius must be below 1/2");

  const auto u = example1_centers();
  ConvexBody body = ConvexBody::ball({0.0, 0.0}, 1.0);
  if (atoms_per_ball == 0) {
    return Problem(DiscreteMeasure({u[0], u[1]}, {0.5, 0.5}), DiscreteMeasure({u[1], u[2]}, {0.5, 0.5}),
                   std::move(body));
  }

  std::mt19937_64 rng(seed);
  std::vector<Point> offsets;
  offsets.reserve(atoms_per_ball);
  while (offsets.size() < atoms_per_ball) {
    const double a = 2.0 * unit_uniform(rng) - 1.0;
    const double b = 2.0 * unit_uniform(rng) - 1.0;
    if (a * a + b * b <= 1.0) offsets.push_back({eps_radius * a, eps_radius * b});
  }
  auto blob = [&](const Point& center) {
    std::vector<Point> pts;
    for (const Point& o : offsets) pts.push_back({center[0] + o[0], center[1] + o[1]});
    return pts;
  };
  std::vector<Point> src = blob(u[0]), dst = blob(u[1]);
  for (Point& p : blob(u[1])) src.push_back(std::move(p));
  for (Point& p : blob(u[2])) dst.push_back(std::move(p));
  const double w = 1.0 / static_cast<double>(2 * atoms_per_ball);
  return Problem(DiscreteMeasure(std::move(src), std::vector<double>(2 * atoms_per_ball, w)),
                 DiscreteMeasure(std::move(dst), std::vector<double>(2 * atoms_per_ball, w)),
                 std::move(body));
}

}  // namespace cqot
