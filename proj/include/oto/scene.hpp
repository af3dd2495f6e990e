#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oto/geometry.hpp"
#include "oto/grid.hpp"

namespace oto {

/// Ground-truth world: a sealed rectangular grid of free/occupied cells plus
/// the robot start pose.
struct Scene {
    int width = 0;
    int height = 0;
    double resolution = 1.0;
    std::vector<std::uint8_t> occupied; // 1 = occupied, 0 = free
    Vec2 start;
    double heading = 0.0;

    int cell_count() const { return width * height; }
    int index(int ix, int iy) const { return iy * width + ix; }
    bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < width && iy >= 0 && iy < height; }
    bool occupied_at(int ix, int iy) const { return occupied[index(ix, iy)] != 0; }
    bool occupied_at(int idx) const { return occupied[idx] != 0; }

    int free_cell_count() const {
        int n = 0;
        for (auto o : occupied) n += (o == 0);
        return n;
    }

    GridMap blank_map() const { return GridMap(width, height, resolution); }
};

/// Parses a scene from text. Line 1: "resolution <float>"; remaining lines are
/// a rectangular character grid with '#': occupied, '.': free, 'S': start
/// (exactly one). The grid boundary must be fully '#'. Throws SceneError with
/// the offending row/condition on malformed input.
struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scene load_scene(const std::string& text);
Scene load_scene_file(const std::string& path);

/// Serializes a scene back to the text format (used by generators).
std::string scene_to_text(const Scene& scene);

/// Cells 4-connected to the start cell through ground-truth free cells.
/// Flags one byte per cell; this is the coverage denominator.
std::vector<std::uint8_t> reachable_free_cells(const Scene& scene);

} // namespace oto
