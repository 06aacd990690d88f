#include "crowdsim/spatial_grid.hpp"

#include <algorithm>
#include <cmath>

namespace crowdsim {

SpatialGrid build_grid(const std::vector<AgentState>& agents, double cell) {
    SpatialGrid grid;
    grid.cell = cell;
    for (const AgentState& a : agents) {
        if (a.exited) continue;
        const int ix = static_cast<int>(std::floor(a.pos.x() / cell));
        const int iy = static_cast<int>(std::floor(a.pos.y() / cell));
        grid.buckets[SpatialGrid::key(ix, iy)].push_back({a.id, a.pos});
    }
    return grid;
}

void query_neighbors_into(const SpatialGrid& grid, const Vec2& center, double radius,
                          int exclude_id, std::vector<std::pair<int, double>>& out) {
    out.clear();
    const int cx = static_cast<int>(std::floor(center.x() / grid.cell));
    const int cy = static_cast<int>(std::floor(center.y() / grid.cell));
    for (int iy = cy - 1; iy <= cy + 1; ++iy) {
        for (int ix = cx - 1; ix <= cx + 1; ++ix) {
            const auto it = grid.buckets.find(SpatialGrid::key(ix, iy));
            if (it == grid.buckets.end()) continue;
            for (const SpatialGrid::Entry& e : it->second) {
                if (e.id == exclude_id) continue;
                const double d = (e.pos - center).norm();
                if (d <= radius) out.emplace_back(e.id, d);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::vector<std::pair<int, double>> query_neighbors(const SpatialGrid& grid, const Vec2& center,
                                                    double radius, int exclude_id) {
    std::vector<std::pair<int, double>> out;
    query_neighbors_into(grid, center, radius, exclude_id, out);
    return out;
}

} // namespace crowdsim
