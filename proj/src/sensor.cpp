#include "oto/sensor.hpp"

namespace oto {

RobotState step_robot(const RobotState& state, const Vec2& waypoint, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_robot: dt must be positive");
    RobotState next = state;
    const Vec2 delta = waypoint - state.position;
    const double dist = delta.norm();
    if (dist < 1e-12) {
        next.velocity = {0.0, 0.0};
        return next;
    }
    const double reach = state.max_speed * dt;
    if (dist <= reach) {
        next.position = waypoint;
        const double speed = dist / dt;
        next.velocity = delta * (speed / dist);
    } else {
        const Vec2 dir = delta * (1.0 / dist);
        next.position = state.position + dir * reach;
        next.velocity = dir * state.max_speed;
    }
    return next;
}

ScanResult raycast_scan(const Scene& scene, GridMap& map, const RobotState& pose,
                        const SensorParams& params) {
    const int pose_cell = map.cell_at(pose.position);
    if (pose_cell < 0) throw std::runtime_error("raycast_scan: pose outside grid");

    ScanResult result;
    const double two_pi = 2.0 * M_PI;
    for (int k = 0; k < params.rays; ++k) {
        const double theta = two_pi * k / params.rays;
        const Vec2 dir{std::cos(theta), std::sin(theta)};
        traverse_ray(map.width, map.height, map.resolution, pose.position, dir, params.range,
                     [&](int ix, int iy, double t) {
                         const int idx = map.index(ix, iy);
                         if (scene.occupied_at(idx)) {
                             if (map.at(idx) == Belief::Unknown) {
                                 map.set(idx, Belief::Occupied);
                                 result.newly_updated.push_back(idx);
                             }
                             result.hits.push_back(pose.position + dir * t);
                             return false; // ray stops at the wall
                         }
                         if (map.at(idx) == Belief::Unknown) {
                             map.set(idx, Belief::Free);
                             result.newly_updated.push_back(idx);
                         }
                         return true;
                     });
    }
    return result;
}

bool line_of_sight(const GridMap& map, const Vec2& from, const Vec2& to) {
    const double dist = distance(from, to);
    if (dist < 1e-12) return true;
    const int target = map.cell_at(to);
    const Vec2 dir = (to - from) * (1.0 / dist);
    bool clear = true;
    traverse_ray(map.width, map.height, map.resolution, from, dir, dist,
                 [&](int ix, int iy, double) {
                     const int idx = map.index(ix, iy);
                     if (idx == target) return false; // reached destination cell
                     if (map.at(idx) == Belief::Occupied) {
                         clear = false;
                         return false;
                     }
                     return true;
                 });
    return clear;
}

} // namespace oto
