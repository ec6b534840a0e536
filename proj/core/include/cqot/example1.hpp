#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "cqot/measures.hpp"

namespace cqot {

/// Three planar points with |u1-u2| = |u2-u3| = 1 and |u1-u3| = 5/4.
std::array<Point, 3> example1_centers();

/// Two source blobs (around u1, u2), two target blobs (around u2, u3), body
/// the unit ball. With atoms_per_ball == 0 every blob is a single atom of
/// weight 1/2. Otherwise each blob holds the same n uniform offsets in a
/// disc of radius eps_radius, drawn deterministically from `seed`.
Problem generate_example1(std::size_t atoms_per_ball, double eps_radius,
                          std::uint64_t seed);

}  // namespace cqot
