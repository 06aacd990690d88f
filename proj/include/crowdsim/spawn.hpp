#pragma once

#include "crowdsim/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace crowdsim {

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
/// std::uniform_real_distribution varies across standard libraries, so all
/// draws go through this instead to keep runs reproducible everywhere.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Places every spawn group in order. Attributes are drawn uniformly within
/// their group ranges, positions rejection-sampled inside the group
/// rectangle so no disc overlaps another agent, an obstacle, or the domain
/// boundary. Ids are dense 0..N-1 in placement order, velocities zero.
/// Pure in (spec, seed): identical inputs give bit-identical agents.
/// Throws PlacementError after 10000 rejections for one agent.
std::vector<AgentState> spawn_agents(const ScenarioSpec& spec, std::uint64_t seed);

} // namespace crowdsim
