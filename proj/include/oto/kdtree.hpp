#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "oto/geometry.hpp"

namespace oto {

/// Static 3D k-d tree over a point array. Build and queries are fully
/// deterministic: splits order by (coordinate, index) and k-NN ties resolve
/// by index.
class KdTree3 {
public:
    KdTree3() = default;

    explicit KdTree3(const std::vector<Vec3>& points) : points_(&points) {
        order_.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) order_[i] = static_cast<int>(i);
        if (!order_.empty()) root_ = build(0, static_cast<int>(order_.size()), 0);
    }

    bool empty() const { return points_ == nullptr || points_->empty(); }

    /// Indices of the k nearest points to `query`, sorted by (distance, index).
    std::vector<int> knn(const Vec3& query, int k) const {
        std::vector<int> result;
        if (empty() || k <= 0) return result;
        Heap heap;
        search(root_, query, k, heap);
        result.resize(heap.size());
        for (int i = static_cast<int>(heap.size()) - 1; i >= 0; --i) {
            result[static_cast<std::size_t>(i)] = heap.top().second;
            heap.pop();
        }
        return result;
    }

private:
    struct Node {
        int point = -1;
        int left = -1;
        int right = -1;
        int axis = 0;
    };
    // Max-heap on (distance^2, index): the worst candidate sits on top.
    using Entry = std::pair<double, int>;
    using Heap = std::priority_queue<Entry>;

    static double coord(const Vec3& p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }

    int build(int lo, int hi, int depth) {
        const int axis = depth % 3;
        const int mid = lo + (hi - lo) / 2;
        std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                         [&](int a, int b) {
                             const double ca = coord((*points_)[a], axis);
                             const double cb = coord((*points_)[b], axis);
                             if (ca != cb) return ca < cb;
                             return a < b;
                         });
        Node node;
        node.point = order_[mid];
        node.axis = axis;
        const int self = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        if (lo < mid) nodes_[self].left = build(lo, mid, depth + 1);
        if (mid + 1 < hi) nodes_[self].right = build(mid + 1, hi, depth + 1);
        return self;
    }

    void search(int node_id, const Vec3& query, int k, Heap& heap) const {
        if (node_id < 0) return;
        const Node& node = nodes_[static_cast<std::size_t>(node_id)];
        const Vec3& p = (*points_)[static_cast<std::size_t>(node.point)];
        const double d2 = squared_distance(p, query);
        if (static_cast<int>(heap.size()) < k) {
            heap.emplace(d2, node.point);
        } else if (d2 < heap.top().first ||
                   (d2 == heap.top().first && node.point < heap.top().second)) {
            heap.pop();
            heap.emplace(d2, node.point);
        }
        const double dq = coord(query, node.axis) - coord(p, node.axis);
        const int near = dq <= 0.0 ? node.left : node.right;
        const int far = dq <= 0.0 ? node.right : node.left;
        search(near, query, k, heap);
        if (static_cast<int>(heap.size()) < k || dq * dq <= heap.top().first) {
            search(far, query, k, heap);
        }
    }

    const std::vector<Vec3>* points_ = nullptr;
    std::vector<int> order_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

} // namespace oto
