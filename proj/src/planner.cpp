#include "oto/planner.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oto {

PlannerKind planner_kind_from_string(const std::string& name) {
    if (name == "oto") return PlannerKind::Oto;
    if (name == "greedy") return PlannerKind::Greedy;
    if (name == "oto-noenclosed") return PlannerKind::OtoNoEnclosed;
    if (name == "oto-norefine") return PlannerKind::OtoNoRefine;
    throw std::invalid_argument("unknown planner kind: " + name);
}

std::string to_string(PlannerKind kind) {
    switch (kind) {
        case PlannerKind::Oto: return "oto";
        case PlannerKind::Greedy: return "greedy";
        case PlannerKind::OtoNoEnclosed: return "oto-noenclosed";
        case PlannerKind::OtoNoRefine: return "oto-norefine";
    }
    return "?";
}

std::optional<PathResult> greedy_baseline_cycle(const GridMap& map, const FrontierSet& frontiers,
                                                const RobotState& robot) {
    const int robot_cell = map.cell_at(robot.position);
    if (robot_cell < 0 || map.at(robot_cell) != Belief::Free) return std::nullopt;

    const std::vector<double> field = distance_field(map, robot_cell);
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int idx : frontiers.cells) {
        const double d = field[static_cast<std::size_t>(idx)];
        if (d < best_dist || (d == best_dist && (best == -1 || idx < best))) {
            best_dist = d;
            best = idx;
        }
    }
    if (best < 0 || !std::isfinite(best_dist)) return std::nullopt;
    return astar(map, robot.position, map.cell_center(best));
}

std::optional<PathResult> plan_cycle(const RobotState& robot, const GridMap& map,
                                     const FrontierSet& frontiers,
                                     std::vector<EnclosedRegion>& registry,
                                     const PlannerConfig& config, Rng& rng,
                                     std::uint64_t cycle_index, bool force_greedy) {
    if (config.kind == PlannerKind::Greedy)
        return greedy_baseline_cycle(map, frontiers, robot);

    if (config.kind != PlannerKind::OtoNoEnclosed) {
        const std::uint64_t cloud_seed = derive_seed(config.seed, 2 * cycle_index);
        const PointCloud cloud =
            synthesize_point_cloud(map, robot.position, config.detection_extent, cloud_seed);
        SubregionParams params = config.subregion;
        params.seed = derive_seed(config.seed, 2 * cycle_index + 1);
        const Vec3 origin{robot.position.x, robot.position.y, 0.0};
        if (auto region = detect_enclosed(cloud, origin, params)) registry_merge(registry, *region);
    }
    registry_retire(registry, frontiers, map);

    if (force_greedy) return greedy_baseline_cycle(map, frontiers, robot);

    ViewpointGenParams gen;
    gen.horizon = Box2{robot.position.x - 0.5 * config.detection_extent.x,
                       robot.position.x + 0.5 * config.detection_extent.x,
                       robot.position.y - 0.5 * config.detection_extent.y,
                       robot.position.y + 0.5 * config.detection_extent.y};
    gen.samples = config.viewpoint_samples;
    gen.clearance_cells = config.clearance_cells;
    gen.sensor_range = config.sensor.range;
    gen.linkage_radius = config.linkage_radius;
    gen.parallel = config.parallel_kernels;

    std::vector<Viewpoint> viewpoints = generate_viewpoints(map, frontiers, gen, rng);
    if (viewpoints.empty()) return greedy_baseline_cycle(map, frontiers, robot);

    const int robot_cell = map.cell_at(robot.position);
    const std::vector<double> field = distance_field(map, robot_cell);

    auto evaluate = [&](Viewpoint& v) {
        v.cost_path = field[static_cast<std::size_t>(v.cell)];
        v.cost_region = subregion_cost(v.position, registry);
        v.cost_direction = direction_cost(robot, v.position);
        total_cost_and_utility(v, config.weights);
    };

    std::vector<Viewpoint> reachable;
    for (auto& v : viewpoints) {
        if (!std::isfinite(field[static_cast<std::size_t>(v.cell)])) continue;
        evaluate(v);
        reachable.push_back(v);
    }
    if (reachable.empty()) return greedy_baseline_cycle(map, frontiers, robot);

    if (config.kind != PlannerKind::OtoNoRefine) {
        std::vector<Viewpoint> refined =
            refine_viewpoints(reachable, config.merge_distance, map);
        reachable.clear();
        for (auto& v : refined) {
            if (!std::isfinite(field[static_cast<std::size_t>(v.cell)])) continue;
            evaluate(v);
            reachable.push_back(v);
        }
        if (reachable.empty()) return greedy_baseline_cycle(map, frontiers, robot);
    }

    const auto matrix =
        build_atsp_matrix(robot, reachable, map, config.weights, config.parallel_kernels);
    const TourSolution tour = solve_atsp(matrix);
    const Viewpoint& goal = reachable[static_cast<std::size_t>(tour.order[1] - 1)];
    return astar(map, robot.position, map.cell_center(goal.cell));
}

namespace {

double wall_ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool frontier_sets_equal(const FrontierSet& a, const FrontierSet& b) {
    if (a.size() != b.size()) return false;
    for (int idx : a.cells)
        if (!b.contains(idx)) return false;
    return true;
}

} // namespace

RunResult run_exploration(const Scene& scene, const PlannerConfig& config) {
    RunResult result;
    ExplorationMetrics& metrics = result.metrics;
    metrics.planner = to_string(config.kind);
    metrics.seed = config.seed;

    GridMap map = scene.blank_map();
    FrontierSet frontiers(map.cell_count());
    std::vector<EnclosedRegion> registry;
    RobotState robot;
    robot.position = scene.start;
    robot.velocity = {0.0, 0.0};
    robot.max_speed = config.max_speed;
    Rng rng(derive_seed(config.seed, 0xF00DULL));

    const std::vector<std::uint8_t> reachable = reachable_free_cells(scene);
    std::uint64_t reachable_total = 0;
    for (auto r : reachable) reachable_total += r;
    std::uint64_t reachable_known = 0;

    double sim_time = 0.0;
    std::uint64_t steps = 0;

    CycleRecord cycle_rec;
    CycleTiming cycle_time;

    auto scan_and_update = [&]() -> std::uint64_t {
        const ScanResult scan = raycast_scan(scene, map, robot, config.sensor);
        const auto t0 = std::chrono::steady_clock::now();
        update_frontiers(frontiers, map, scan.newly_updated);
        const double update_ms = wall_ms_since(t0);

        if (config.compare_fullscan) {
            const auto t1 = std::chrono::steady_clock::now();
            const FrontierSet full = full_scan_frontiers(map);
            cycle_time.fullscan_ms += wall_ms_since(t1);
            if (!frontier_sets_equal(frontiers, full)) metrics.frontier_mismatch = true;
        }
        cycle_time.update_ms += update_ms;

        cycle_rec.cells_examined += frontiers.last_examined;
        cycle_rec.cells_newly_updated += scan.newly_updated.size();
        cycle_rec.scans += 1;
        for (int idx : scan.newly_updated) {
            if (map.at(idx) == Belief::Free && reachable[static_cast<std::size_t>(idx)])
                ++reachable_known;
        }
        return scan.newly_updated.size();
    };

    auto coverage_now = [&]() {
        return reachable_total == 0
                   ? 1.0
                   : static_cast<double>(reachable_known) / static_cast<double>(reachable_total);
    };

    auto flush_cycle = [&](int cycle) {
        cycle_rec.cycle = cycle;
        cycle_rec.frontier_size = frontiers.size();
        metrics.total_examined += cycle_rec.cells_examined;
        metrics.total_newly_updated += cycle_rec.cells_newly_updated;
        metrics.fullscan_equiv_examined +=
            cycle_rec.scans * static_cast<std::uint64_t>(map.cell_count());
        metrics.cycles.push_back(cycle_rec);
        cycle_time.cycle = cycle;
        result.timings.push_back(cycle_time);
        metrics.coverage.emplace_back(sim_time, coverage_now());
        cycle_rec = CycleRecord{};
        cycle_time = CycleTiming{};
    };

    result.trajectory.push_back({0.0, robot.position});
    scan_and_update();
    flush_cycle(0);

    int cycle = 0;
    bool force_greedy = false;
    std::string termination;

    while (true) {
        if (frontiers.empty()) {
            termination = "complete";
            break;
        }
        if (steps >= config.step_cap) {
            termination = "cap";
            break;
        }
        ++cycle;

        const auto plan_t0 = std::chrono::steady_clock::now();
        const std::optional<PathResult> plan =
            plan_cycle(robot, map, frontiers, registry, config, rng, static_cast<std::uint64_t>(cycle),
                       force_greedy);
        cycle_time.plan_ms = wall_ms_since(plan_t0);

        if (!plan) {
            termination = "complete-unreachable-remainder";
            break;
        }

        const std::vector<Vec2>& wps = plan->waypoints;
        std::size_t wp = wps.size() > 1 ? 1 : 0;
        const double leg_start = sim_time;
        std::uint64_t revealed = 0;
        bool capped = false;

        while (true) {
            if (wp >= wps.size()) break;
            if (sim_time - leg_start >= config.replan_interval) break;
            if (steps >= config.step_cap) {
                capped = true;
                break;
            }
            const Vec2 before = robot.position;
            robot = step_robot(robot, wps[wp], config.dt);
            sim_time += config.dt;
            ++steps;
            metrics.distance += distance(before, robot.position);
            result.trajectory.push_back({sim_time, robot.position});
            revealed += scan_and_update();
            if (distance(robot.position, wps[wp]) < 1e-9) ++wp;
        }

        const bool goal_reached = wp >= wps.size();
        force_greedy = (revealed == 0 && goal_reached);
        flush_cycle(cycle);

        if (capped) {
            termination = "cap";
            break;
        }
    }

    metrics.termination = termination;
    metrics.sim_time = sim_time;
    metrics.final_coverage = coverage_now();
    metrics.coverage.emplace_back(sim_time, metrics.final_coverage);
    result.final_map = std::move(map);
    result.registry = std::move(registry);
    return result;
}

} // namespace oto
