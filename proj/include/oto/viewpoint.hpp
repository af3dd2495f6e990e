#pragma once

#include <cstdint>
#include <vector>

#include "oto/frontier.hpp"
#include "oto/geometry.hpp"
#include "oto/grid.hpp"
#include "oto/rng.hpp"
#include "oto/sensor.hpp"
#include "oto/subregion.hpp"

namespace oto {

enum class ViewpointKind { Local, GlobalPseudo };

struct Viewpoint {
    Vec2 position;
    int cell = -1;
    double gain = 0.0;           // frontier cells visible (mean after merging)
    double cost_region = 0.0;    // distance to the nearest alive enclosed region, m
    double cost_path = 0.0;      // shortest-path distance from the robot, m
    double cost_direction = 0.0; // heading change toward the viewpoint, rad
    double cost_total = 0.0;
    double utility = 0.0;
    ViewpointKind kind = ViewpointKind::Local;
};

struct CostWeights {
    double region = 0.3;
    double path = 0.1;
    double direction = 0.2;
};

/// Frontier cells within `range` of `p` with unobstructed grid line of sight.
int information_gain(const GridMap& map, const FrontierSet& frontiers, const Vec2& p,
                     double range);

/// information_gain for a batch of positions; results are written per index,
/// so the parallel path returns exactly the serial result.
std::vector<int> information_gains(const GridMap& map, const FrontierSet& frontiers,
                                   const std::vector<Vec2>& positions, double range,
                                   bool parallel);

struct ViewpointGenParams {
    Box2 horizon;            // sampling region around the robot
    int samples = 100;       // candidate positions drawn
    int clearance_cells = 1; // Chebyshev radius that must be known-Free
    double sensor_range = 15.0;
    double linkage_radius = 3.0; // frontier clustering for pseudo-viewpoints
    bool parallel = true;
};

/// Samples candidate positions uniformly over eligible known-Free cells in
/// the horizon, keeps those that see at least one frontier cell, and appends
/// one pseudo-viewpoint per frontier cluster whose centroid falls outside the
/// horizon (gain = cluster size, placed at the nearest known-Free cell).
/// Returns an empty list when the horizon has no eligible cell.
std::vector<Viewpoint> generate_viewpoints(const GridMap& map, const FrontierSet& frontiers,
                                           const ViewpointGenParams& params, Rng& rng);

/// Distance to the center of the nearest alive region, 0 inside any alive
/// region's box or when none is alive.
double subregion_cost(const Vec2& position, const std::vector<EnclosedRegion>& registry);

/// Angle in [0, pi] between the robot's velocity and the direction to the
/// viewpoint; 0 when at rest or already at the viewpoint.
double direction_cost(const RobotState& state, const Vec2& viewpoint_position);

/// Fills cost_total and utility from the three cost terms.
void total_cost_and_utility(Viewpoint& v, const CostWeights& weights);

/// Merges mutually visible viewpoints closer than merge_distance into their
/// centroid with averaged gain. Pseudo-viewpoints never merge. Clusters whose
/// centroid lands on a non-Free cell are left as they are. Costs of merged
/// viewpoints must be recomputed by the caller.
std::vector<Viewpoint> refine_viewpoints(const std::vector<Viewpoint>& viewpoints,
                                         double merge_distance, const GridMap& map);

} // namespace oto
