#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oto/cloud.hpp"
#include "oto/frontier.hpp"
#include "oto/grid.hpp"
#include "oto/routing.hpp"
#include "oto/rng.hpp"
#include "oto/scene.hpp"
#include "oto/sensor.hpp"
#include "oto/subregion.hpp"
#include "oto/viewpoint.hpp"

namespace oto {

enum class PlannerKind { Oto, Greedy, OtoNoEnclosed, OtoNoRefine };

PlannerKind planner_kind_from_string(const std::string& name); // throws on unknown names
std::string to_string(PlannerKind kind);

struct PlannerConfig {
    PlannerKind kind = PlannerKind::Oto;
    SensorParams sensor;                    // 15 m range, 720 rays
    double max_speed = 2.0;                 // m/s
    double dt = 0.1;                        // s per simulation step
    Vec3 detection_extent{20.0, 20.0, 5.0}; // detection cube, m
    CostWeights weights;                    // 0.3 / 0.1 / 0.2
    SubregionParams subregion;              // r=1, n=50, lambda=4, 15 deg
    double merge_distance = 7.0;            // viewpoint refinement radius, m
    int viewpoint_samples = 100;
    int clearance_cells = 1;
    double linkage_radius = 3.0;  // frontier clustering, m
    double replan_interval = 2.0; // simulated s between replans
    std::uint64_t seed = 0;
    std::uint64_t step_cap = 400000;
    bool compare_fullscan = false; // time a full-map rescan next to every update
    bool parallel_kernels = true;
};

/// Per-planning-cycle frontier maintenance counters. Everything here is a
/// deterministic function of (scene, config, seed).
struct CycleRecord {
    int cycle = 0;
    std::uint64_t cells_examined = 0;      // incremental update work
    std::uint64_t cells_newly_updated = 0; // scan output size
    std::uint64_t frontier_size = 0;       // at end of cycle
    std::uint64_t scans = 0;               // maintenance events this cycle

    bool operator==(const CycleRecord&) const = default;
};

/// Wall-clock measurements per cycle. Kept apart from the metrics so run
/// artifacts stay byte-identical across repeated invocations; the
/// full-rescan column is only filled in compare_fullscan mode.
struct CycleTiming {
    int cycle = 0;
    double update_ms = 0.0;   // summed incremental frontier updates
    double fullscan_ms = 0.0; // summed full-map rescans (comparison mode)
    double plan_ms = 0.0;
};

struct ExplorationMetrics {
    std::string scene_name;
    std::string planner;
    std::uint64_t seed = 0;
    double distance = 0.0;  // m
    double sim_time = 0.0;  // s; equals distance / max_speed by construction
    std::string termination;
    double final_coverage = 0.0;
    std::vector<std::pair<double, double>> coverage; // (sim time, fraction)
    std::vector<CycleRecord> cycles;
    std::uint64_t total_examined = 0;
    std::uint64_t total_newly_updated = 0;
    std::uint64_t fullscan_equiv_examined = 0; // map size x maintenance events
    bool frontier_mismatch = false;            // incremental vs full scan disagreed

    bool operator==(const ExplorationMetrics&) const = default;
};

struct TrajectorySample {
    double t = 0.0;
    Vec2 position;
};

struct RunResult {
    ExplorationMetrics metrics;
    std::vector<TrajectorySample> trajectory;
    GridMap final_map;
    std::vector<EnclosedRegion> registry;
    std::vector<CycleTiming> timings;
};

/// One pass of the planning pipeline: enclosure detection and registry
/// upkeep, viewpoint generation/evaluation/refinement, tour sequencing, and
/// the path to the tour's first viewpoint. Falls back to the nearest
/// reachable frontier when no usable viewpoint exists, and returns nullopt
/// when no frontier is reachable at all.
std::optional<PathResult> plan_cycle(const RobotState& robot, const GridMap& map,
                                     const FrontierSet& frontiers,
                                     std::vector<EnclosedRegion>& registry,
                                     const PlannerConfig& config, Rng& rng,
                                     std::uint64_t cycle_index, bool force_greedy = false);

/// Baseline: path to the nearest reachable frontier cell by path length,
/// ties broken by cell index. nullopt when none is reachable.
std::optional<PathResult> greedy_baseline_cycle(const GridMap& map, const FrontierSet& frontiers,
                                                const RobotState& robot);

/// Full exploration run: scan, plan, execute the first leg, replan on leg
/// completion or after the replan interval, until no (reachable) frontier
/// remains or the step cap hits.
RunResult run_exploration(const Scene& scene, const PlannerConfig& config);

} // namespace oto
