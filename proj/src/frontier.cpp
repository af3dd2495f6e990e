#include "oto/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

namespace oto {

std::vector<int> FrontierSet::sorted_cells() const {
    std::vector<int> out(cells.begin(), cells.end());
    std::sort(out.begin(), out.end());
    return out;
}

FrontierSet full_scan_frontiers(const GridMap& map) {
    FrontierSet fs(map.cell_count());
    for (int idx = 0; idx < map.cell_count(); ++idx) {
        if (is_frontier_cell(map, idx)) fs.insert(idx);
    }
    fs.last_examined = static_cast<std::uint64_t>(map.cell_count());
    fs.total_examined = fs.last_examined;
    return fs;
}

FrontierSet full_scan_frontiers_parallel(const GridMap& map) {
    const int n = map.cell_count();
    std::vector<std::uint8_t> flag(n, 0);
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < n; ++idx) {
        flag[idx] = is_frontier_cell(map, idx) ? 1 : 0;
    }
    FrontierSet fs(n);
    for (int idx = 0; idx < n; ++idx) {
        if (flag[idx]) fs.insert(idx);
    }
    fs.last_examined = static_cast<std::uint64_t>(n);
    fs.total_examined = fs.last_examined;
    return fs;
}

void update_frontiers(FrontierSet& fs, const GridMap& map, std::span<const int> newly_updated) {
    std::uint64_t examined = 0;
    for (int idx : newly_updated) {
        if (!map.in_bounds(idx))
            throw std::out_of_range("update_frontiers: cell index out of bounds");
        ++examined;
        const int ix = map.cell_x(idx);
        const int iy = map.cell_y(idx);
        if (map.at(idx) == Belief::Free && has_unknown_4neighbor(map, ix, iy)) fs.insert(idx);

        // A member can only expire when a neighboring cell became known, so
        // re-checking the 8-neighborhood of every updated cell covers all of
        // them.
        for (const auto& d : kNeigh8) {
            const int nx = ix + d[0];
            const int ny = iy + d[1];
            if (!map.in_bounds(nx, ny)) continue;
            ++examined;
            const int n = map.index(nx, ny);
            if (fs.member[n] && !has_unknown_4neighbor(map, nx, ny)) fs.erase(n);
        }
    }
    fs.last_examined = examined;
    fs.total_examined += examined;
}

std::vector<FrontierCluster> cluster_frontiers(const FrontierSet& frontiers, const GridMap& map,
                                               double linkage_radius) {
    std::vector<FrontierCluster> clusters;
    if (frontiers.empty()) return clusters;
    const std::vector<int> members = frontiers.sorted_cells();
    const int n = static_cast<int>(members.size());

    // Spatial buckets of side linkage_radius; neighbors can only be in the
    // 3x3 surrounding buckets.
    struct BucketKey {
        int bx, by;
        bool operator==(const BucketKey& o) const { return bx == o.bx && by == o.by; }
    };
    struct BucketHash {
        std::size_t operator()(const BucketKey& k) const {
            return std::hash<long long>()((static_cast<long long>(k.bx) << 32) ^
                                          static_cast<unsigned int>(k.by));
        }
    };
    std::unordered_map<BucketKey, std::vector<int>, BucketHash> buckets;
    std::vector<Vec2> centers(n);
    for (int i = 0; i < n; ++i) {
        centers[i] = map.cell_center(members[i]);
        BucketKey key{static_cast<int>(std::floor(centers[i].x / linkage_radius)),
                      static_cast<int>(std::floor(centers[i].y / linkage_radius))};
        buckets[key].push_back(i);
    }

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    const double r2 = linkage_radius * linkage_radius;
    for (int i = 0; i < n; ++i) {
        const BucketKey base{static_cast<int>(std::floor(centers[i].x / linkage_radius)),
                             static_cast<int>(std::floor(centers[i].y / linkage_radius))};
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                auto it = buckets.find({base.bx + dx, base.by + dy});
                if (it == buckets.end()) continue;
                for (int j : it->second) {
                    if (j <= i) continue;
                    if (squared_distance(centers[i], centers[j]) <= r2) unite(i, j);
                }
            }
        }
    }

    std::unordered_map<int, int> root_to_cluster;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        auto [it, inserted] = root_to_cluster.try_emplace(root, static_cast<int>(clusters.size()));
        if (inserted) clusters.emplace_back();
        FrontierCluster& c = clusters[it->second];
        c.cells.push_back(members[i]);
        c.centroid += centers[i];
    }
    for (auto& c : clusters) {
        c.centroid = c.centroid * (1.0 / static_cast<double>(c.cells.size()));
    }
    return clusters;
}

} // namespace oto
