#include "oto/scene.hpp"

#include <fstream>
#include <queue>
#include <sstream>

namespace oto {

Scene load_scene(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw SceneError("empty scene file");

    std::istringstream hs(header);
    std::string key;
    double resolution = 0.0;
    if (!(hs >> key >> resolution) || key != "resolution")
        throw SceneError("bad header, expected 'resolution <float>': " + header);
    if (!(resolution > 0.0)) throw SceneError("resolution must be positive");

    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(line);
    }
    if (rows.size() < 3) throw SceneError("grid must have at least 3 rows");

    const std::size_t width = rows[0].size();
    if (width < 3) throw SceneError("grid must have at least 3 columns");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width)
            throw SceneError("non-rectangular grid at row " + std::to_string(r + 1));
    }

    Scene scene;
    scene.width = static_cast<int>(width);
    scene.height = static_cast<int>(rows.size());
    scene.resolution = resolution;
    scene.occupied.assign(scene.cell_count(), 0);

    int start_count = 0;
    int start_ix = -1, start_iy = -1;
    // Row 0 of the file is the top of the map; grid y grows upward.
    for (int iy = 0; iy < scene.height; ++iy) {
        const std::string& row = rows[static_cast<std::size_t>(scene.height - 1 - iy)];
        for (int ix = 0; ix < scene.width; ++ix) {
            const char c = row[static_cast<std::size_t>(ix)];
            switch (c) {
                case '#': scene.occupied[scene.index(ix, iy)] = 1; break;
                case '.': break;
                case 'S':
                    ++start_count;
                    start_ix = ix;
                    start_iy = iy;
                    break;
                default:
                    throw SceneError(std::string("unknown cell character '") + c + "' at row " +
                                     std::to_string(scene.height - iy));
            }
        }
    }
    if (start_count == 0) throw SceneError("no start cell 'S'");
    if (start_count > 1) throw SceneError("multiple start cells");

    for (int ix = 0; ix < scene.width; ++ix) {
        if (!scene.occupied_at(ix, 0) || !scene.occupied_at(ix, scene.height - 1))
            throw SceneError("unsealed boundary: top/bottom row must be all '#'");
    }
    for (int iy = 0; iy < scene.height; ++iy) {
        if (!scene.occupied_at(0, iy) || !scene.occupied_at(scene.width - 1, iy))
            throw SceneError("unsealed boundary: left/right column must be all '#' at row " +
                             std::to_string(scene.height - iy));
    }

    scene.start = {(start_ix + 0.5) * resolution, (start_iy + 0.5) * resolution};
    scene.heading = 0.0;
    return scene;
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SceneError("cannot open scene file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scene(ss.str());
}

std::string scene_to_text(const Scene& scene) {
    std::ostringstream out;
    out << "resolution " << scene.resolution << "\n";
    const int start_idx = scene.index(static_cast<int>(scene.start.x / scene.resolution),
                                      static_cast<int>(scene.start.y / scene.resolution));
    for (int iy = scene.height - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < scene.width; ++ix) {
            const int idx = scene.index(ix, iy);
            if (idx == start_idx)
                out << 'S';
            else
                out << (scene.occupied_at(idx) ? '#' : '.');
        }
        out << "\n";
    }
    return out.str();
}

std::vector<std::uint8_t> reachable_free_cells(const Scene& scene) {
    std::vector<std::uint8_t> reach(scene.cell_count(), 0);
    const int sx = static_cast<int>(scene.start.x / scene.resolution);
    const int sy = static_cast<int>(scene.start.y / scene.resolution);
    if (!scene.in_bounds(sx, sy) || scene.occupied_at(sx, sy)) return reach;

    std::queue<int> q;
    const int start = scene.index(sx, sy);
    reach[start] = 1;
    q.push(start);
    while (!q.empty()) {
        const int idx = q.front();
        q.pop();
        const int ix = idx % scene.width;
        const int iy = idx / scene.width;
        for (const auto& d : kNeigh4) {
            const int nx = ix + d[0];
            const int ny = iy + d[1];
            if (!scene.in_bounds(nx, ny)) continue;
            const int n = scene.index(nx, ny);
            if (reach[n] || scene.occupied_at(n)) continue;
            reach[n] = 1;
            q.push(n);
        }
    }
    return reach;
}

} // namespace oto
