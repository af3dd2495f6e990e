#include "oto/cloud.hpp"

#include <algorithm>
#include <cmath>

#include "oto/rng.hpp"

namespace oto {

PointCloud synthesize_point_cloud(const GridMap& map, const Vec2& center, const Vec3& extent,
                                  std::uint64_t seed) {
    PointCloud cloud;
    Rng rng(seed);

    const double res = map.resolution;
    const double hx = 0.5 * extent.x;
    const double hy = 0.5 * extent.y;
    int ix_min = static_cast<int>(std::floor((center.x - hx) / res));
    int ix_max = static_cast<int>(std::floor((center.x + hx) / res));
    int iy_min = static_cast<int>(std::floor((center.y - hy) / res));
    int iy_max = static_cast<int>(std::floor((center.y + hy) / res));
    ix_min = std::max(ix_min, 0);
    iy_min = std::max(iy_min, 0);
    ix_max = std::min(ix_max, map.width - 1);
    iy_max = std::min(iy_max, map.height - 1);

    // Face order per cell: +x, -x, +y, -y (matches kNeigh4).
    for (int iy = iy_min; iy <= iy_max; ++iy) {
        for (int ix = ix_min; ix <= ix_max; ++ix) {
            if (map.at(ix, iy) != Belief::Occupied) continue;
            const Vec2 c = map.cell_center(ix, iy);
            if (std::fabs(c.x - center.x) > hx || std::fabs(c.y - center.y) > hy) continue;

            for (int f = 0; f < 4; ++f) {
                const int nx = ix + kNeigh4[f][0];
                const int ny = iy + kNeigh4[f][1];
                if (!map.in_bounds(nx, ny) || map.at(nx, ny) != Belief::Free) continue;

                // Face plane coordinate and tangential axis.
                const bool x_face = f < 2;
                const double plane = x_face ? (kNeigh4[f][0] > 0 ? (ix + 1) * res : ix * res)
                                            : (kNeigh4[f][1] > 0 ? (iy + 1) * res : iy * res);
                const double tang_center = x_face ? c.y : c.x;
                for (double z : kWallPointHeights) {
                    const double jitter = rng.uniform(-kWallPointJitter, kWallPointJitter);
                    const double tang = tang_center + jitter;
                    if (x_face)
                        cloud.points.push_back({plane, tang, z});
                    else
                        cloud.points.push_back({tang, plane, z});
                }
            }
        }
    }
    return cloud;
}

} // namespace oto
