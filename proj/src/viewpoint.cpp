#include "oto/viewpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

namespace oto {

int information_gain(const GridMap& map, const FrontierSet& frontiers, const Vec2& p,
                     double range) {
    const double r2 = range * range;
    int gain = 0;
    for (int idx : frontiers.cells) {
        const Vec2 c = map.cell_center(idx);
        if (squared_distance(p, c) > r2) continue;
        if (line_of_sight(map, p, c)) ++gain;
    }
    return gain;
}

std::vector<int> information_gains(const GridMap& map, const FrontierSet& frontiers,
                                   const std::vector<Vec2>& positions, double range,
                                   bool parallel) {
    // Snapshot the members once; each position is then independent.
    const std::vector<int> cells = frontiers.sorted_cells();
    std::vector<Vec2> centers(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) centers[i] = map.cell_center(cells[i]);

    const double r2 = range * range;
    const int n = static_cast<int>(positions.size());
    std::vector<int> gains(static_cast<std::size_t>(n), 0);

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (int i = 0; i < n; ++i) {
        const Vec2 p = positions[static_cast<std::size_t>(i)];
        int g = 0;
        for (const Vec2& c : centers) {
            if (squared_distance(p, c) > r2) continue;
            if (line_of_sight(map, p, c)) ++g;
        }
        gains[static_cast<std::size_t>(i)] = g;
    }
    return gains;
}

namespace {

bool eligible_cell(const GridMap& map, int ix, int iy, int clearance) {
    for (int dy = -clearance; dy <= clearance; ++dy)
        for (int dx = -clearance; dx <= clearance; ++dx) {
            const int nx = ix + dx;
            const int ny = iy + dy;
            if (!map.in_bounds(nx, ny) || map.at(nx, ny) != Belief::Free) return false;
        }
    return true;
}

/// Nearest known-Free cell to a point, by (euclidean distance, index);
/// searched in expanding square rings around the containing cell.
int nearest_free_cell(const GridMap& map, const Vec2& p) {
    int cx = static_cast<int>(std::floor(p.x / map.resolution));
    int cy = static_cast<int>(std::floor(p.y / map.resolution));
    cx = std::clamp(cx, 0, map.width - 1);
    cy = std::clamp(cy, 0, map.height - 1);

    const int max_ring = std::max(map.width, map.height);
    double best_d2 = std::numeric_limits<double>::infinity();
    int best = -1;
    for (int ring = 0; ring <= max_ring; ++ring) {
        // Once a candidate exists, rings further than its distance cannot win.
        if (best >= 0 && (ring - 1) * map.resolution > std::sqrt(best_d2)) break;
        for (int dy = -ring; dy <= ring; ++dy) {
            for (int dx = -ring; dx <= ring; ++dx) {
                if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                const int nx = cx + dx;
                const int ny = cy + dy;
                if (!map.in_bounds(nx, ny) || map.at(nx, ny) != Belief::Free) continue;
                const int idx = map.index(nx, ny);
                const double d2 = squared_distance(p, map.cell_center(idx));
                if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
                    best_d2 = d2;
                    best = idx;
                }
            }
        }
    }
    return best;
}

} // namespace

std::vector<Viewpoint> generate_viewpoints(const GridMap& map, const FrontierSet& frontiers,
                                           const ViewpointGenParams& params, Rng& rng) {
    std::vector<Viewpoint> out;

    // Eligible cells: known-Free with clearance, center inside the horizon.
    std::vector<int> eligible;
    const double res = map.resolution;
    int ix_min = std::max(0, static_cast<int>(std::floor(params.horizon.x_min / res)));
    int iy_min = std::max(0, static_cast<int>(std::floor(params.horizon.y_min / res)));
    int ix_max = std::min(map.width - 1, static_cast<int>(std::floor(params.horizon.x_max / res)));
    int iy_max = std::min(map.height - 1, static_cast<int>(std::floor(params.horizon.y_max / res)));
    for (int iy = iy_min; iy <= iy_max; ++iy)
        for (int ix = ix_min; ix <= ix_max; ++ix) {
            if (map.at(ix, iy) != Belief::Free) continue;
            if (!params.horizon.contains(map.cell_center(ix, iy))) continue;
            if (eligible_cell(map, ix, iy, params.clearance_cells))
                eligible.push_back(map.index(ix, iy));
        }
    if (eligible.empty()) return out;

    std::vector<std::uint8_t> seen(map.cell_count(), 0);
    std::vector<int> candidate_cells;
    for (int k = 0; k < params.samples; ++k) {
        const int idx = eligible[rng.uniform_index(eligible.size())];
        if (seen[static_cast<std::size_t>(idx)]) continue;
        seen[static_cast<std::size_t>(idx)] = 1;
        candidate_cells.push_back(idx);
    }

    std::vector<Vec2> positions(candidate_cells.size());
    for (std::size_t i = 0; i < candidate_cells.size(); ++i)
        positions[i] = map.cell_center(candidate_cells[i]);
    const std::vector<int> gains =
        information_gains(map, frontiers, positions, params.sensor_range, params.parallel);

    for (std::size_t i = 0; i < candidate_cells.size(); ++i) {
        if (gains[i] <= 0) continue;
        Viewpoint v;
        v.cell = candidate_cells[i];
        v.position = positions[i];
        v.gain = gains[i];
        v.kind = ViewpointKind::Local;
        out.push_back(v);
    }

    // One pseudo-viewpoint per frontier cluster outside the horizon keeps the
    // tour aware of remote work without paying per-cell gain evaluation.
    const auto clusters = cluster_frontiers(frontiers, map, params.linkage_radius);
    for (const auto& cluster : clusters) {
        if (params.horizon.contains(cluster.centroid)) continue;
        const int cell = nearest_free_cell(map, cluster.centroid);
        if (cell < 0) continue;
        Viewpoint v;
        v.cell = cell;
        v.position = map.cell_center(cell);
        v.gain = static_cast<double>(cluster.cells.size());
        v.kind = ViewpointKind::GlobalPseudo;
        out.push_back(v);
    }
    return out;
}

double subregion_cost(const Vec2& position, const std::vector<EnclosedRegion>& registry) {
    double nearest = std::numeric_limits<double>::infinity();
    bool any_alive = false;
    for (const auto& region : registry) {
        if (!region.alive) continue;
        any_alive = true;
        if (region.box.contains(position)) return 0.0;
        nearest = std::fmin(nearest, distance(position, region.center));
    }
    return any_alive ? nearest : 0.0;
}

double direction_cost(const RobotState& state, const Vec2& viewpoint_position) {
    return angle_between(viewpoint_position - state.position, state.velocity);
}

void total_cost_and_utility(Viewpoint& v, const CostWeights& weights) {
    v.cost_total = weights.region * v.cost_region + weights.path * v.cost_path +
                   weights.direction * v.cost_direction;
    v.utility = v.gain * std::exp(-v.cost_total);
}

std::vector<Viewpoint> refine_viewpoints(const std::vector<Viewpoint>& viewpoints,
                                         double merge_distance, const GridMap& map) {
    std::vector<Viewpoint> work = viewpoints;
    std::vector<std::uint8_t> dead(work.size(), 0);
    const double d2 = merge_distance * merge_distance;

    // Merged viewpoints are appended and can merge again later, so the loop
    // runs over the growing list.
    for (std::size_t i = 0; i < work.size(); ++i) {
        if (dead[i] || work[i].kind == ViewpointKind::GlobalPseudo) continue;

        std::vector<std::size_t> cluster;
        for (std::size_t j = 0; j < work.size(); ++j) {
            if (j == i || dead[j] || work[j].kind == ViewpointKind::GlobalPseudo) continue;
            if (squared_distance(work[i].position, work[j].position) > d2) continue;
            if (!line_of_sight(map, work[i].position, work[j].position)) continue;
            bool visible_to_all = true;
            for (std::size_t m : cluster) {
                if (!line_of_sight(map, work[m].position, work[j].position)) {
                    visible_to_all = false;
                    break;
                }
            }
            if (visible_to_all) cluster.push_back(j);
        }
        if (cluster.empty()) continue;

        Vec2 centroid = work[i].position;
        double gain_sum = work[i].gain;
        for (std::size_t m : cluster) {
            centroid += work[m].position;
            gain_sum += work[m].gain;
        }
        const double count = static_cast<double>(cluster.size() + 1);
        centroid = centroid * (1.0 / count);

        const int cell = map.cell_at(centroid);
        if (cell < 0 || map.at(cell) != Belief::Free) continue; // keep the cluster as-is

        dead[i] = 1;
        for (std::size_t m : cluster) dead[m] = 1;
        Viewpoint merged;
        merged.cell = cell;
        merged.position = centroid; // geometric centroid, not snapped to the cell center
        merged.gain = gain_sum / count;
        merged.kind = ViewpointKind::Local;
        work.push_back(merged);
        dead.push_back(0);
    }

    std::vector<Viewpoint> out;
    for (std::size_t i = 0; i < work.size(); ++i)
        if (!dead[i]) out.push_back(work[i]);
    return out;
}

} // namespace oto
