#pragma once

#include "crowdsim/types.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crowdsim {

/// Uniform hash grid over agent centers for fixed-radius neighbor queries.
/// Exited agents are never inserted. Bucket lists are ascending by id.
struct SpatialGrid {
    struct Entry {
        int id;
        Vec2 pos;
    };

    double cell = 1.0;
    std::unordered_map<std::uint64_t, std::vector<Entry>> buckets;

    static std::uint64_t key(int ix, int iy) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy));
    }
};

/// Bins every non-exited agent by the cell containing its center.
SpatialGrid build_grid(const std::vector<AgentState>& agents, double cell);

/// All agents with center distance <= radius of `center`, ascending id,
/// excluding `exclude_id` (pass -1 to keep everything). Requires
/// radius <= grid cell size; the engine sizes the cell to the largest
/// interaction radius so every query satisfies this.
void query_neighbors_into(const SpatialGrid& grid, const Vec2& center, double radius,
                          int exclude_id, std::vector<std::pair<int, double>>& out);

std::vector<std::pair<int, double>> query_neighbors(const SpatialGrid& grid, const Vec2& center,
                                                    double radius, int exclude_id = -1);

} // namespace crowdsim
