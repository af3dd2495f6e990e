#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

#include "oto/geometry.hpp"

namespace oto {

enum class Belief : std::uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

/// 2D occupancy belief grid. Cells start Unknown and only ever transition
/// Unknown -> Free or Unknown -> Occupied (static world).
struct GridMap {
    int width = 0;
    int height = 0;
    double resolution = 1.0; // meters per cell
    std::vector<Belief> cells;

    GridMap() = default;
    GridMap(int w, int h, double res)
        : width(w), height(h), resolution(res), cells(static_cast<std::size_t>(w) * h, Belief::Unknown) {}

    int cell_count() const { return width * height; }
    int index(int ix, int iy) const { return iy * width + ix; }
    int cell_x(int idx) const { return idx % width; }
    int cell_y(int idx) const { return idx / width; }

    bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < width && iy >= 0 && iy < height; }
    bool in_bounds(int idx) const { return idx >= 0 && idx < cell_count(); }

    Belief at(int ix, int iy) const { return cells[index(ix, iy)]; }
    Belief at(int idx) const { return cells[idx]; }

    void set(int idx, Belief b) { cells[idx] = b; }

    Vec2 cell_center(int idx) const {
        return {(cell_x(idx) + 0.5) * resolution, (cell_y(idx) + 0.5) * resolution};
    }
    Vec2 cell_center(int ix, int iy) const { return {(ix + 0.5) * resolution, (iy + 0.5) * resolution}; }

    /// Cell containing a world point, or -1 if outside the grid.
    int cell_at(const Vec2& p) const {
        const int ix = static_cast<int>(std::floor(p.x / resolution));
        const int iy = static_cast<int>(std::floor(p.y / resolution));
        if (!in_bounds(ix, iy)) return -1;
        return index(ix, iy);
    }

    bool is(int ix, int iy, Belief b) const { return in_bounds(ix, iy) && at(ix, iy) == b; }
};

/// 4-neighborhood offsets, fixed order: +x, -x, +y, -y.
inline constexpr int kNeigh4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

/// 8-neighborhood offsets, row-major order.
inline constexpr int kNeigh8[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                      {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

inline bool has_unknown_4neighbor(const GridMap& map, int ix, int iy) {
    for (const auto& d : kNeigh4) {
        const int nx = ix + d[0];
        const int ny = iy + d[1];
        if (map.in_bounds(nx, ny) && map.at(nx, ny) == Belief::Unknown) return true;
    }
    return false;
}

/// Frontier rule: a known-Free cell with at least one Unknown 4-neighbor.
inline bool is_frontier_cell(const GridMap& map, int idx) {
    if (map.at(idx) != Belief::Free) return false;
    return has_unknown_4neighbor(map, map.cell_x(idx), map.cell_y(idx));
}

} // namespace oto
