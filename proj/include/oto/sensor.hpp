#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "oto/geometry.hpp"
#include "oto/grid.hpp"
#include "oto/scene.hpp"

namespace oto {

struct RobotState {
    Vec2 position;
    Vec2 velocity;
    double max_speed = 2.0; // m/s
};

/// Moves toward the waypoint at max_speed for dt seconds, clamping at the
/// waypoint. Velocity is the motion direction scaled by the achieved speed and
/// zero when already there.
RobotState step_robot(const RobotState& state, const Vec2& waypoint, double dt);

struct SensorParams {
    double range = 15.0; // m
    int rays = 720;      // uniform over 360 degrees
};

struct ScanResult {
    /// Cells whose belief changed Unknown -> {Free, Occupied} in this scan,
    /// in first-touch order (each cell listed once).
    std::vector<int> newly_updated;
    /// Ray/wall intersection points, one per ray that hit within range.
    std::vector<Vec2> hits;
};

/// Walks the cells whose interior the ray from `origin` along unit `dir`
/// crosses, in order of increasing entry distance, up to `max_range`.
/// When the ray passes (numerically) through a cell corner it steps
/// diagonally, skipping the two cells it merely grazes. Calls
/// visit(ix, iy, t_entry); traversal stops when visit returns false or the ray
/// leaves the grid.
template <class Visit>
void traverse_ray(int width, int height, double resolution, const Vec2& origin, const Vec2& dir,
                  double max_range, Visit&& visit) {
    int cx = static_cast<int>(std::floor(origin.x / resolution));
    int cy = static_cast<int>(std::floor(origin.y / resolution));
    if (cx < 0 || cx >= width || cy < 0 || cy >= height) return;
    if (!visit(cx, cy, 0.0)) return;

    const int step_x = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
    const int step_y = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);
    if (step_x == 0 && step_y == 0) return;

    const double inf = std::numeric_limits<double>::infinity();
    const double t_delta_x = step_x != 0 ? resolution / std::fabs(dir.x) : inf;
    const double t_delta_y = step_y != 0 ? resolution / std::fabs(dir.y) : inf;

    double t_max_x = inf;
    if (step_x > 0)
        t_max_x = ((cx + 1) * resolution - origin.x) / dir.x;
    else if (step_x < 0)
        t_max_x = (cx * resolution - origin.x) / dir.x;
    double t_max_y = inf;
    if (step_y > 0)
        t_max_y = ((cy + 1) * resolution - origin.y) / dir.y;
    else if (step_y < 0)
        t_max_y = (cy * resolution - origin.y) / dir.y;

    const double tie_eps = 1e-10 * resolution;
    while (true) {
        double t;
        if (std::fabs(t_max_x - t_max_y) <= tie_eps) {
            // Corner crossing: advance both axes at once.
            t = std::fmax(t_max_x, t_max_y);
            cx += step_x;
            cy += step_y;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        } else if (t_max_x < t_max_y) {
            t = t_max_x;
            cx += step_x;
            t_max_x += t_delta_x;
        } else {
            t = t_max_y;
            cy += step_y;
            t_max_y += t_delta_y;
        }
        if (t >= max_range) return;
        if (cx < 0 || cx >= width || cy < 0 || cy >= height) return;
        if (!visit(cx, cy, t)) return;
    }
}

/// Casts `params.rays` uniform rays from the robot position over the ground
/// truth. Cells traversed before the first occupied cell (within range) become
/// Free in `map`; the occupied cell becomes Occupied. Belief updates are
/// monotone: only Unknown cells change, and those are reported in
/// ScanResult.newly_updated. Throws if the pose is outside the grid.
ScanResult raycast_scan(const Scene& scene, GridMap& map, const RobotState& pose,
                        const SensorParams& params);

/// True when the segment between two points crosses no known-Occupied cell.
/// Unknown cells do not block. The destination's own cell is not checked.
bool line_of_sight(const GridMap& map, const Vec2& from, const Vec2& to);

} // namespace oto
