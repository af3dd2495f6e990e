#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oto/cloud.hpp"
#include "oto/frontier.hpp"
#include "oto/geometry.hpp"
#include "oto/kdtree.hpp"

namespace oto {

struct SubregionParams {
    double sample_spacing = 1.0;        // minimum spacing of the thinned samples, m
    int neighborhood = 50;              // k-NN size for normal estimation
    int vote_threshold = 4;             // quadrant occupied when count exceeds this
    double max_inclination = 15.0 * M_PI / 180.0; // discard steeper normals, rad
    int ransac_iterations = 100;
    double ransac_inlier_threshold = 0.2; // m, horizontal point-to-line distance
    int ransac_min_inliers = 5;
    std::uint64_t seed = 0;
};

/// Surface normal of a local neighborhood, oriented toward the local origin.
struct OrientedNormal {
    Vec3 origin;      // the sample the neighborhood is centered on
    Vec3 direction;   // unit
    double inclination = 0.0; // angle vs the horizontal plane, rad
    int quadrant = 0;         // 1..4 by sign of (x, y); 0 = discarded
};

struct QuadrantVote {
    std::array<int, 4> counts{};
    std::array<bool, 4> occupied{};
    int occupied_count() const {
        int m = 0;
        for (bool o : occupied) m += o;
        return m;
    }
};

/// Vertical plane fitted in the horizontal projection: normal . p == offset.
struct FittedPlane {
    Vec2 normal;
    double offset = 0.0;
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0; // inlier extrema
    int inlier_count = 0;
};

struct EnclosedRegion {
    Box2 box;
    Vec2 center;
    bool alive = true;
};

struct DegenerateNormalError : std::runtime_error {
    DegenerateNormalError() : std::runtime_error("degenerate normal") {}
};

/// Greedy spatial thinning: walking the cloud in index order, keeps a point
/// iff no already-kept point lies within `spacing`. Returns kept indices in
/// that order.
std::vector<int> sample_points(const PointCloud& cloud, double spacing);

/// Normal of the k nearest neighbors of p (least-variance direction), flipped
/// toward local_origin, with inclination and quadrant assignment. Quadrant is
/// 0 when the inclination exceeds max_inclination. Throws
/// DegenerateNormalError when the neighborhood collapses to a point.
OrientedNormal estimate_normal(const KdTree3& index, const PointCloud& cloud, const Vec3& p,
                               int k, const Vec3& local_origin, double max_inclination);

/// Sign-based quadrant with a fixed tie-break: an exactly axis-aligned
/// direction goes to the lower-numbered adjacent quadrant.
int quadrant_of(double nx, double ny);

struct DetectionReport {
    int cloud_size = 0;
    int sample_count = 0;
    QuadrantVote vote;
    std::array<std::optional<FittedPlane>, 4> planes; // per quadrant, fit quadrants only
    std::optional<EnclosedRegion> region;
};

/// Full detection pass: thin the cloud, estimate oriented normals, vote by
/// quadrant, and when at least three quadrants are occupied fit one vertical
/// plane per occupied quadrant (seeded RANSAC over the thinned samples of
/// that quadrant) and bound the region by the fitted planes' inlier extrema.
/// Quadrants whose fit fails are dropped; fewer than three surviving fits
/// yield no region.
DetectionReport detect_enclosed_report(const PointCloud& cloud, const Vec3& local_origin,
                                       const SubregionParams& params);

std::optional<EnclosedRegion> detect_enclosed(const PointCloud& cloud, const Vec3& local_origin,
                                              const SubregionParams& params);

/// Folds a fresh detection into the registry: a candidate overlapping an
/// alive region with IoU > 0.5 replaces it by the union box; otherwise it is
/// appended.
void registry_merge(std::vector<EnclosedRegion>& registry, const EnclosedRegion& candidate);

/// Retires regions whose box no longer contains any frontier cell.
void registry_retire(std::vector<EnclosedRegion>& registry, const FrontierSet& frontiers,
                     const GridMap& map);

} // namespace oto
