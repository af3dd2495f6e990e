#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "oto/geometry.hpp"
#include "oto/grid.hpp"

namespace oto {

/// Set of frontier cells. The hash set carries the members for iteration;
/// the bitmap gives O(1) membership so the incremental update never touches
/// cells outside the newly perceived neighborhood.
struct FrontierSet {
    std::unordered_set<int> cells;
    std::vector<std::uint8_t> member;
    std::uint64_t last_examined = 0;  // cells examined by the last update
    std::uint64_t total_examined = 0; // cumulative across updates

    FrontierSet() = default;
    explicit FrontierSet(int cell_count) : member(cell_count, 0) {}

    bool contains(int idx) const { return idx >= 0 && idx < static_cast<int>(member.size()) && member[idx]; }
    std::size_t size() const { return cells.size(); }
    bool empty() const { return cells.empty(); }

    void insert(int idx) {
        if (!member[idx]) {
            member[idx] = 1;
            cells.insert(idx);
        }
    }
    void erase(int idx) {
        if (member[idx]) {
            member[idx] = 0;
            cells.erase(idx);
        }
    }

    /// Members in ascending index order (for deterministic iteration).
    std::vector<int> sorted_cells() const;
};

/// Exhaustive frontier detection: traverses every cell of the map. This is
/// the reference the incremental update is differentially tested against,
/// and the comparison baseline for the maintenance-cost benchmark.
FrontierSet full_scan_frontiers(const GridMap& map);

/// Same result as full_scan_frontiers, with the per-cell checks spread over
/// OpenMP threads. Kept separate so the serial version stays the oracle.
FrontierSet full_scan_frontiers_parallel(const GridMap& map);

/// Incremental update after a scan. `newly_updated` must be exactly the cells
/// the scan changed; `fs` must have been correct before the scan. Adds fresh
/// frontier cells among the updated cells and re-checks existing members in
/// the 8-neighborhood of every updated cell, so the work done is proportional
/// to |newly_updated|, never to the map size. Throws std::out_of_range on a
/// bad index.
void update_frontiers(FrontierSet& fs, const GridMap& map, std::span<const int> newly_updated);

struct FrontierCluster {
    std::vector<int> cells; // ascending
    Vec2 centroid;
};

/// Connected components of the frontier set under "cell centers within
/// linkage_radius". Clusters are ordered by their smallest member index.
std::vector<FrontierCluster> cluster_frontiers(const FrontierSet& frontiers, const GridMap& map,
                                               double linkage_radius);

} // namespace oto
