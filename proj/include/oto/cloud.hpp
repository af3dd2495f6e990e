#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "oto/geometry.hpp"
#include "oto/grid.hpp"

namespace oto {

struct PointCloud {
    std::vector<Vec3> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

/// Heights at which wall points are emitted (ground points are never
/// generated, so no ground removal step is needed downstream).
inline constexpr std::array<double, 4> kWallPointHeights = {0.2, 0.6, 1.0, 1.4};

/// Maximum tangential jitter applied to each emitted wall point, meters.
inline constexpr double kWallPointJitter = 0.05;

/// Builds a wall point cloud from the belief map: every known-Occupied cell
/// whose center lies inside the horizontal extent around `center` emits points
/// on each face that touches a known-Free cell, at the fixed z levels, with
/// seeded jitter along the face. Cells with no free neighbor produce nothing.
PointCloud synthesize_point_cloud(const GridMap& map, const Vec2& center, const Vec3& extent,
                                  std::uint64_t seed);

} // namespace oto
