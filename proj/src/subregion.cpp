#include "oto/subregion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <Eigen/Dense>

#include "oto/rng.hpp"

namespace oto {

std::vector<int> sample_points(const PointCloud& cloud, double spacing) {
    std::vector<int> kept;
    if (cloud.empty()) return kept;

    // Hash grid of kept points; bucket side = spacing, so only the 3x3x3
    // neighborhood has to be checked.
    struct Key {
        int x, y, z;
        bool operator==(const Key& o) const { return x == o.x && y == o.y && z == o.z; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = static_cast<std::size_t>(k.x) * 73856093u;
            h ^= static_cast<std::size_t>(k.y) * 19349663u;
            h ^= static_cast<std::size_t>(k.z) * 83492791u;
            return h;
        }
    };
    std::unordered_map<Key, std::vector<int>, KeyHash> grid;
    auto key_of = [&](const Vec3& p) {
        return Key{static_cast<int>(std::floor(p.x / spacing)),
                   static_cast<int>(std::floor(p.y / spacing)),
                   static_cast<int>(std::floor(p.z / spacing))};
    };

    const double s2 = spacing * spacing;
    for (int i = 0; i < static_cast<int>(cloud.size()); ++i) {
        const Vec3& p = cloud.points[static_cast<std::size_t>(i)];
        const Key base = key_of(p);
        bool blocked = false;
        for (int dx = -1; dx <= 1 && !blocked; ++dx)
            for (int dy = -1; dy <= 1 && !blocked; ++dy)
                for (int dz = -1; dz <= 1 && !blocked; ++dz) {
                    auto it = grid.find({base.x + dx, base.y + dy, base.z + dz});
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        if (squared_distance(p, cloud.points[static_cast<std::size_t>(j)]) < s2) {
                            blocked = true;
                            break;
                        }
                    }
                }
        if (!blocked) {
            kept.push_back(i);
            grid[base].push_back(i);
        }
    }
    return kept;
}

int quadrant_of(double nx, double ny) {
    if (nx == 0.0 && ny == 0.0) return 0;
    if (nx > 0.0 && ny > 0.0) return 1;
    if (nx < 0.0 && ny > 0.0) return 2;
    if (nx < 0.0 && ny < 0.0) return 3;
    if (nx > 0.0 && ny < 0.0) return 4;
    if (nx == 0.0) return ny > 0.0 ? 1 : 3;
    return nx > 0.0 ? 1 : 2; // ny == 0
}

OrientedNormal estimate_normal(const KdTree3& index, const PointCloud& cloud, const Vec3& p,
                               int k, const Vec3& local_origin, double max_inclination) {
    const std::vector<int> nn = index.knn(p, k);
    if (nn.size() < 3) throw DegenerateNormalError();

    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int i : nn) {
        const Vec3& q = cloud.points[static_cast<std::size_t>(i)];
        mean += Eigen::Vector3d(q.x, q.y, q.z);
    }
    mean /= static_cast<double>(nn.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (int i : nn) {
        const Vec3& q = cloud.points[static_cast<std::size_t>(i)];
        const Eigen::Vector3d d = Eigen::Vector3d(q.x, q.y, q.z) - mean;
        cov += d * d.transpose();
    }
    cov /= static_cast<double>(nn.size());
    if (cov.trace() < 1e-18) throw DegenerateNormalError();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    const Eigen::Vector3d n = solver.eigenvectors().col(0); // smallest variance

    OrientedNormal out;
    out.origin = p;
    out.direction = {n.x(), n.y(), n.z()};

    // Orient toward the local origin; ties pick the lexicographically
    // positive direction.
    const Vec3 to_origin = local_origin - p;
    const double dot = out.direction.dot(to_origin);
    const bool flip = dot < 0.0 ||
                      (dot == 0.0 && (out.direction.x < 0.0 ||
                                      (out.direction.x == 0.0 && out.direction.y < 0.0) ||
                                      (out.direction.x == 0.0 && out.direction.y == 0.0 &&
                                       out.direction.z < 0.0)));
    if (flip) out.direction = out.direction * -1.0;

    out.inclination = std::asin(std::fmin(1.0, std::fabs(out.direction.z)));
    out.quadrant =
        out.inclination > max_inclination ? 0 : quadrant_of(out.direction.x, out.direction.y);
    return out;
}

namespace {

std::optional<FittedPlane> ransac_vertical_plane(const PointCloud& cloud,
                                                 const std::vector<int>& sample_indices,
                                                 const SubregionParams& params, Rng& rng) {
    const int n = static_cast<int>(sample_indices.size());
    if (n < 2) return std::nullopt;

    std::vector<Vec2> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pts[static_cast<std::size_t>(i)] = cloud.points[static_cast<std::size_t>(sample_indices[i])].xy();

    Vec2 best_normal;
    double best_offset = 0.0;
    int best_inliers = 0;
    for (int iter = 0; iter < params.ransac_iterations; ++iter) {
        const int a = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
        const int b = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
        if (a == b) continue;
        const Vec2 pa = pts[static_cast<std::size_t>(a)];
        const Vec2 pb = pts[static_cast<std::size_t>(b)];
        const Vec2 d = pb - pa;
        const double len = d.norm();
        if (len < 1e-9) continue;
        const Vec2 normal{-d.y / len, d.x / len};
        const double offset = normal.dot(pa);
        int inliers = 0;
        for (const Vec2& q : pts) {
            if (std::fabs(normal.dot(q) - offset) <= params.ransac_inlier_threshold) ++inliers;
        }
        if (inliers > best_inliers) {
            best_inliers = inliers;
            best_normal = normal;
            best_offset = offset;
        }
    }
    if (best_inliers < params.ransac_min_inliers) return std::nullopt;

    FittedPlane plane;
    plane.normal = best_normal;
    plane.offset = best_offset;
    plane.inlier_count = best_inliers;
    bool first = true;
    for (const Vec2& q : pts) {
        if (std::fabs(best_normal.dot(q) - best_offset) > params.ransac_inlier_threshold) continue;
        if (first) {
            plane.x_min = plane.x_max = q.x;
            plane.y_min = plane.y_max = q.y;
            first = false;
        } else {
            plane.x_min = std::fmin(plane.x_min, q.x);
            plane.x_max = std::fmax(plane.x_max, q.x);
            plane.y_min = std::fmin(plane.y_min, q.y);
            plane.y_max = std::fmax(plane.y_max, q.y);
        }
    }
    return plane;
}

} // namespace

DetectionReport detect_enclosed_report(const PointCloud& cloud, const Vec3& local_origin,
                                       const SubregionParams& params) {
    DetectionReport report;
    report.cloud_size = static_cast<int>(cloud.size());
    if (cloud.empty()) return report;

    const std::vector<int> samples = sample_points(cloud, params.sample_spacing);
    report.sample_count = static_cast<int>(samples.size());

    const KdTree3 tree(cloud.points);
    std::array<std::vector<int>, 4> by_quadrant;
    for (int si : samples) {
        const Vec3& p = cloud.points[static_cast<std::size_t>(si)];
        OrientedNormal normal;
        try {
            normal = estimate_normal(tree, cloud, p, params.neighborhood, local_origin,
                                     params.max_inclination);
        } catch (const DegenerateNormalError&) {
            continue;
        }
        if (normal.quadrant == 0) continue;
        report.vote.counts[static_cast<std::size_t>(normal.quadrant - 1)]++;
        by_quadrant[static_cast<std::size_t>(normal.quadrant - 1)].push_back(si);
    }
    for (int j = 0; j < 4; ++j)
        report.vote.occupied[static_cast<std::size_t>(j)] =
            report.vote.counts[static_cast<std::size_t>(j)] > params.vote_threshold;

    if (report.vote.occupied_count() < 3) return report;

    int fit_count = 0;
    for (int j = 0; j < 4; ++j) {
        if (!report.vote.occupied[static_cast<std::size_t>(j)]) continue;
        Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(j)));
        report.planes[static_cast<std::size_t>(j)] =
            ransac_vertical_plane(cloud, by_quadrant[static_cast<std::size_t>(j)], params, rng);
        if (report.planes[static_cast<std::size_t>(j)]) ++fit_count;
    }
    if (fit_count < 3) return report;

    Box2 box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& plane : report.planes) {
        if (!plane) continue;
        box.x_min = std::fmin(box.x_min, plane->x_min);
        box.x_max = std::fmax(box.x_max, plane->x_max);
        box.y_min = std::fmin(box.y_min, plane->y_min);
        box.y_max = std::fmax(box.y_max, plane->y_max);
    }
    if (!(box.x_min < box.x_max) || !(box.y_min < box.y_max)) return report;

    report.region = EnclosedRegion{box, box.center(), true};
    return report;
}

std::optional<EnclosedRegion> detect_enclosed(const PointCloud& cloud, const Vec3& local_origin,
                                              const SubregionParams& params) {
    return detect_enclosed_report(cloud, local_origin, params).region;
}

void registry_merge(std::vector<EnclosedRegion>& registry, const EnclosedRegion& candidate) {
    for (auto& region : registry) {
        if (!region.alive) continue;
        if (box_iou(region.box, candidate.box) > 0.5) {
            region.box = box_union(region.box, candidate.box);
            region.center = region.box.center();
            return;
        }
    }
    registry.push_back(candidate);
}

void registry_retire(std::vector<EnclosedRegion>& registry, const FrontierSet& frontiers,
                     const GridMap& map) {
    for (auto& region : registry) {
        if (!region.alive) continue;
        bool has_frontier = false;
        for (int idx : frontiers.cells) {
            if (region.box.contains(map.cell_center(idx))) {
                has_frontier = true;
                break;
            }
        }
        if (!has_frontier) region.alive = false;
    }
}

} // namespace oto
