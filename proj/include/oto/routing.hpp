#pragma once

#include <optional>
#include <vector>

#include "oto/geometry.hpp"
#include "oto/grid.hpp"
#include "oto/sensor.hpp"
#include "oto/viewpoint.hpp"

namespace oto {

struct PathResult {
    double length = 0.0;         // m
    std::vector<Vec2> waypoints; // cell centers, start through goal
};

/// Shortest 4-connected path over known-Free cells (Unknown and Occupied
/// block), straight-line heuristic, ties broken by cell index. Returns
/// nullopt when the goal is unreachable or an endpoint is not known-Free.
std::optional<PathResult> astar(const GridMap& map, const Vec2& from, const Vec2& to);

/// Single-source shortest-path distances (meters) over known-Free cells from
/// `source_cell` to every cell; unreachable cells get infinity. Stops early
/// once all `targets` are settled when a target list is given.
std::vector<double> distance_field(const GridMap& map, int source_cell,
                                   const std::vector<int>& targets = {});

/// All-pairs shortest-path lengths between the given cells. Each row is an
/// independent single-source sweep; rows are computed in parallel when
/// requested and the result is identical either way.
std::vector<std::vector<double>> pairwise_path_lengths(const GridMap& map,
                                                       const std::vector<int>& cells,
                                                       bool parallel);

struct TourSolution {
    std::vector<int> order; // node indices, order[0] == 0 (the robot)
    double total_cost = 0.0;
};

/// Cost matrix for sequencing: node 0 is the robot, node i >= 1 is
/// viewpoints[i-1]. Departure edges (0, i) carry the viewpoint's total cost;
/// travel edges (i, j) carry path-weighted shortest-path length; every return
/// edge (i, 0) is zero so the tour is open. Throws when a pair of viewpoints
/// is mutually unreachable (callers must drop unreachable viewpoints first).
std::vector<std::vector<double>> build_atsp_matrix(const RobotState& state,
                                                   const std::vector<Viewpoint>& viewpoints,
                                                   const GridMap& map, const CostWeights& weights,
                                                   bool parallel);

/// Nearest-neighbor construction followed by repeated Or-opt (segment lengths
/// 1-3) and 2-opt (segment reversal, asymmetric costs re-evaluated) until no
/// improving move remains. Deterministic. Throws on matrices smaller than 2x2.
TourSolution solve_atsp(const std::vector<std::vector<double>>& matrix);

/// Exact optimum by permutation enumeration; refuses n > 10.
TourSolution brute_force_atsp(const std::vector<std::vector<double>>& matrix);

/// Sum of matrix entries along consecutive nodes of `order` (no return edge).
double tour_cost(const std::vector<std::vector<double>>& matrix, const std::vector<int>& order);

} // namespace oto
