#include "oto/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include <omp.h>

namespace oto {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::optional<PathResult> astar(const GridMap& map, const Vec2& from, const Vec2& to) {
    const int start = map.cell_at(from);
    const int goal = map.cell_at(to);
    if (start < 0 || goal < 0) return std::nullopt;
    if (map.at(start) != Belief::Free || map.at(goal) != Belief::Free) return std::nullopt;

    if (start == goal) {
        PathResult r;
        r.length = 0.0;
        r.waypoints = {map.cell_center(start)};
        return r;
    }

    const int n = map.cell_count();
    std::vector<double> g(static_cast<std::size_t>(n), kInf);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<std::uint8_t> closed(static_cast<std::size_t>(n), 0);

    const Vec2 goal_center = map.cell_center(goal);
    auto heuristic = [&](int idx) { return distance(map.cell_center(idx), goal_center); };

    // Min-heap on (f, index); equal f pops the lower cell index.
    using Entry = std::pair<double, int>;
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);

    g[static_cast<std::size_t>(start)] = 0.0;
    open.emplace(heuristic(start), start);
    const double step = map.resolution;

    while (!open.empty()) {
        const auto [f, idx] = open.top();
        open.pop();
        if (closed[static_cast<std::size_t>(idx)]) continue;
        closed[static_cast<std::size_t>(idx)] = 1;
        if (idx == goal) break;

        const int ix = map.cell_x(idx);
        const int iy = map.cell_y(idx);
        for (const auto& d : kNeigh4) {
            const int nx = ix + d[0];
            const int ny = iy + d[1];
            if (!map.in_bounds(nx, ny) || map.at(nx, ny) != Belief::Free) continue;
            const int nidx = map.index(nx, ny);
            if (closed[static_cast<std::size_t>(nidx)]) continue;
            const double ng = g[static_cast<std::size_t>(idx)] + step;
            if (ng < g[static_cast<std::size_t>(nidx)]) {
                g[static_cast<std::size_t>(nidx)] = ng;
                parent[static_cast<std::size_t>(nidx)] = idx;
                open.emplace(ng + heuristic(nidx), nidx);
            }
        }
    }

    if (!closed[static_cast<std::size_t>(goal)]) return std::nullopt;

    PathResult r;
    r.length = g[static_cast<std::size_t>(goal)];
    std::vector<int> chain;
    for (int c = goal; c != -1; c = parent[static_cast<std::size_t>(c)]) chain.push_back(c);
    r.waypoints.reserve(chain.size());
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        r.waypoints.push_back(map.cell_center(*it));
    return r;
}

std::vector<double> distance_field(const GridMap& map, int source_cell,
                                   const std::vector<int>& targets) {
    const int n = map.cell_count();
    std::vector<double> dist(static_cast<std::size_t>(n), kInf);
    if (source_cell < 0 || source_cell >= n || map.at(source_cell) != Belief::Free) return dist;

    std::vector<std::uint8_t> pending(static_cast<std::size_t>(n), 0);
    int remaining = 0;
    for (int t : targets) {
        if (t >= 0 && t < n && !pending[static_cast<std::size_t>(t)]) {
            pending[static_cast<std::size_t>(t)] = 1;
            ++remaining;
        }
    }

    // Uniform step costs: plain BFS is the shortest path.
    std::queue<int> q;
    dist[static_cast<std::size_t>(source_cell)] = 0.0;
    q.push(source_cell);
    if (pending[static_cast<std::size_t>(source_cell)]) --remaining;
    const double step = map.resolution;
    while (!q.empty()) {
        if (!targets.empty() && remaining == 0) break;
        const int idx = q.front();
        q.pop();
        const int ix = map.cell_x(idx);
        const int iy = map.cell_y(idx);
        for (const auto& d : kNeigh4) {
            const int nx = ix + d[0];
            const int ny = iy + d[1];
            if (!map.in_bounds(nx, ny) || map.at(nx, ny) != Belief::Free) continue;
            const int nidx = map.index(nx, ny);
            if (dist[static_cast<std::size_t>(nidx)] != kInf) continue;
            dist[static_cast<std::size_t>(nidx)] = dist[static_cast<std::size_t>(idx)] + step;
            if (pending[static_cast<std::size_t>(nidx)]) --remaining;
            q.push(nidx);
        }
    }
    return dist;
}

std::vector<std::vector<double>> pairwise_path_lengths(const GridMap& map,
                                                       const std::vector<int>& cells,
                                                       bool parallel) {
    const int n = static_cast<int>(cells.size());
    std::vector<std::vector<double>> lengths(static_cast<std::size_t>(n),
                                             std::vector<double>(static_cast<std::size_t>(n), 0.0));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n; ++i) {
        const std::vector<double> field = distance_field(map, cells[static_cast<std::size_t>(i)], cells);
        for (int j = 0; j < n; ++j)
            lengths[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                field[static_cast<std::size_t>(cells[static_cast<std::size_t>(j)])];
    }
    return lengths;
}

std::vector<std::vector<double>> build_atsp_matrix(const RobotState& state,
                                                   const std::vector<Viewpoint>& viewpoints,
                                                   const GridMap& map, const CostWeights& weights,
                                                   bool parallel) {
    (void)state; // departure costs are carried by the viewpoints' cost_total
    const int n = static_cast<int>(viewpoints.size()) + 1;
    std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));

    std::vector<int> cells(viewpoints.size());
    for (std::size_t i = 0; i < viewpoints.size(); ++i) cells[i] = viewpoints[i].cell;
    const auto travel = pairwise_path_lengths(map, cells, parallel);

    for (int i = 1; i < n; ++i) {
        m[0][static_cast<std::size_t>(i)] = viewpoints[static_cast<std::size_t>(i - 1)].cost_total;
        m[static_cast<std::size_t>(i)][0] = 0.0; // open tour: returning is free
        for (int j = 1; j < n; ++j) {
            if (i == j) continue;
            const double len = travel[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            if (!std::isfinite(len))
                throw std::logic_error("build_atsp_matrix: unreachable viewpoint pair");
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = weights.path * len;
        }
    }
    return m;
}

double tour_cost(const std::vector<std::vector<double>>& matrix, const std::vector<int>& order) {
    double cost = 0.0;
    for (std::size_t t = 0; t + 1 < order.size(); ++t)
        cost += matrix[static_cast<std::size_t>(order[t])][static_cast<std::size_t>(order[t + 1])];
    return cost;
}

namespace {

std::vector<int> nearest_neighbor_tour(const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> used(static_cast<std::size_t>(n), 0);
    order.push_back(0);
    used[0] = 1;
    int current = 0;
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_cost = kInf;
        for (int j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double c = m[static_cast<std::size_t>(current)][static_cast<std::size_t>(j)];
            if (c < best_cost || (c == best_cost && (best == -1 || j < best))) {
                best_cost = c;
                best = j;
            }
        }
        order.push_back(best);
        used[static_cast<std::size_t>(best)] = 1;
        current = best;
    }
    return order;
}

constexpr double kImprove = 1e-12;

// Relocate a segment of 1-3 nodes to another position (orientation kept).
// Applies the first strictly improving move found and returns.
bool or_opt_pass(const std::vector<std::vector<double>>& m, std::vector<int>& order,
                 double& cost) {
    const int n = static_cast<int>(order.size());
    for (int len = 1; len <= 3; ++len) {
        for (int s = 1; s + len <= n; ++s) {
            const int a = order[static_cast<std::size_t>(s - 1)];
            const int b = order[static_cast<std::size_t>(s)];
            const int c = order[static_cast<std::size_t>(s + len - 1)];
            const int d = s + len < n ? order[static_cast<std::size_t>(s + len)] : -1;

            std::vector<int> reduced;
            reduced.reserve(static_cast<std::size_t>(n - len));
            reduced.insert(reduced.end(), order.begin(), order.begin() + s);
            reduced.insert(reduced.end(), order.begin() + s + len, order.end());

            double removal = -m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (d >= 0)
                removal += m[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)] -
                           m[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];

            const int rn = static_cast<int>(reduced.size());
            for (int p = 1; p <= rn; ++p) {
                if (p == s) continue; // original position
                const int x = reduced[static_cast<std::size_t>(p - 1)];
                const int y = p < rn ? reduced[static_cast<std::size_t>(p)] : -1;
                double delta = removal + m[static_cast<std::size_t>(x)][static_cast<std::size_t>(b)];
                if (y >= 0)
                    delta += m[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)] -
                             m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
                if (delta < -kImprove) {
                    std::vector<int> next = reduced;
                    next.insert(next.begin() + p, order.begin() + s, order.begin() + s + len);
                    order = std::move(next);
                    cost += delta;
                    return true;
                }
            }
        }
    }
    return false;
}

// Reverse a segment; all arcs inside the segment flip direction, so the delta
// re-evaluates them against the asymmetric matrix.
bool two_opt_pass(const std::vector<std::vector<double>>& m, std::vector<int>& order,
                  double& cost) {
    const int n = static_cast<int>(order.size());
    for (int i = 1; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double delta = 0.0;
            delta -= m[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])]
                      [static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
            delta += m[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])]
                      [static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
            if (j + 1 < n) {
                delta -= m[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]
                          [static_cast<std::size_t>(order[static_cast<std::size_t>(j + 1)])];
                delta += m[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
                          [static_cast<std::size_t>(order[static_cast<std::size_t>(j + 1)])];
            }
            for (int t = i; t < j; ++t) {
                delta -= m[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])]
                          [static_cast<std::size_t>(order[static_cast<std::size_t>(t + 1)])];
                delta += m[static_cast<std::size_t>(order[static_cast<std::size_t>(t + 1)])]
                          [static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
            }
            if (delta < -kImprove) {
                std::reverse(order.begin() + i, order.begin() + j + 1);
                cost += delta;
                return true;
            }
        }
    }
    return false;
}

} // namespace

TourSolution solve_atsp(const std::vector<std::vector<double>>& matrix) {
    const int n = static_cast<int>(matrix.size());
    if (n < 2) throw std::invalid_argument("solve_atsp: need at least 2 nodes");

    TourSolution sol;
    sol.order = nearest_neighbor_tour(matrix);
    sol.total_cost = tour_cost(matrix, sol.order);

    bool improved = true;
    while (improved) {
        improved = false;
        if (or_opt_pass(matrix, sol.order, sol.total_cost)) improved = true;
        if (two_opt_pass(matrix, sol.order, sol.total_cost)) improved = true;
    }
    // Accumulated deltas drift; report the exact sum along the final order.
    sol.total_cost = tour_cost(matrix, sol.order);
    return sol;
}

TourSolution brute_force_atsp(const std::vector<std::vector<double>>& matrix) {
    const int n = static_cast<int>(matrix.size());
    if (n < 2) throw std::invalid_argument("brute_force_atsp: need at least 2 nodes");
    if (n > 10) throw std::invalid_argument("brute_force_atsp: refusing n > 10");

    std::vector<int> tail;
    for (int i = 1; i < n; ++i) tail.push_back(i);

    TourSolution best;
    best.total_cost = kInf;
    std::vector<int> order(static_cast<std::size_t>(n));
    order[0] = 0;
    do {
        std::copy(tail.begin(), tail.end(), order.begin() + 1);
        const double c = tour_cost(matrix, order);
        if (c < best.total_cost) {
            best.total_cost = c;
            best.order = order;
        }
    } while (std::next_permutation(tail.begin(), tail.end()));
    return best;
}

} // namespace oto
