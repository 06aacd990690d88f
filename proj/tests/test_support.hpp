#pragma once

// Shared helpers for the unit suites: canned scenario builders, a
// brute-force neighbor oracle, and small random generators. Everything
// here is deliberately naive — tests must not share code paths with the
// implementation they check.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crowdsim/types.hpp"

namespace test_support {

inline std::string scenario_path(const std::string& name) {
    return (std::filesystem::path(CROWDSIM_SCENARIO_DIR) / name).string();
}

/// Smallest spec that passes validation: a 10x10 room, a 2 m exit on the
/// east wall, one spawn group tucked into the far corner.
inline crowdsim::ScenarioSpec one_room_spec(int count = 5) {
    crowdsim::ScenarioSpec spec;
    spec.width = 10.0;
    spec.height = 10.0;
    spec.cell_size = 0.25;
    crowdsim::ExitSegment exit;
    exit.a = crowdsim::Vec2(10.0, 4.0);
    exit.b = crowdsim::Vec2(10.0, 6.0);
    spec.exits.push_back(exit);
    crowdsim::SpawnGroup g;
    g.count = count;
    g.rect = crowdsim::Rect{1.0, 1.0, 4.0, 4.0};
    spec.groups.push_back(g);
    return spec;
}

/// All non-exited agents within `radius` of `center`, excluding `self_id`,
/// by scanning every agent. Returns (id, distance) sorted ascending by id,
/// matching the grid query contract.
inline std::vector<std::pair<int, double>> brute_force_neighbors(
        const std::vector<crowdsim::AgentState>& agents, const crowdsim::Vec2& center,
        double radius, int self_id) {
    std::vector<std::pair<int, double>> out;
    for (const auto& a : agents) {
        if (a.exited || a.id == self_id) continue;
        const double d = (a.pos - center).norm();
        if (d <= radius) out.emplace_back(a.id, d);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

/// Agents scattered uniformly in [0,w]x[0,h] with a test-local RNG; ids
/// are dense and ascending. Used to cross-check the grid against the
/// brute-force oracle above.
inline std::vector<crowdsim::AgentState> random_agents(int n, double w, double h,
                                                       std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ux(0.0, w), uy(0.0, h);
    std::vector<crowdsim::AgentState> agents(n);
    for (int i = 0; i < n; ++i) {
        agents[i].id = i;
        agents[i].pos = crowdsim::Vec2(ux(gen), uy(gen));
    }
    return agents;
}

/// A spec with every collection populated and every knob off its default,
/// for round-trip checks. `salt` perturbs the numbers so two calls give
/// two distinct specs.
inline crowdsim::ScenarioSpec busy_spec(int salt) {
    const double s = 0.001 * salt;
    crowdsim::ScenarioSpec spec;
    spec.width = 24.0 + s;
    spec.height = 18.0 + s;
    spec.cell_size = 0.2;
    spec.obstacles.push_back(crowdsim::Rect{4.0 + s, 5.0, 2.0, 3.0});
    spec.obstacles.push_back(crowdsim::Rect{10.0, 2.0 + s, 1.5, 6.0});
    crowdsim::ExitSegment e1, e2;
    e1.a = crowdsim::Vec2(24.0 + s, 8.0);
    e1.b = crowdsim::Vec2(24.0 + s, 10.0);
    e2.a = crowdsim::Vec2(3.0, 0.0);
    e2.b = crowdsim::Vec2(5.0, 0.0);
    spec.exits = {e1, e2};
    crowdsim::Hazard hz;
    hz.pos = crowdsim::Vec2(12.0, 9.0 + s);
    hz.amplitude = 0.7;
    hz.decay_length = 2.5;
    spec.hazards.push_back(hz);
    crowdsim::SpawnGroup g1, g2;
    g1.count = 30 + salt;
    g1.rect = crowdsim::Rect{1.0, 1.0, 6.0, 6.0};
    g1.v_pref = {1.1, 1.5 + s};
    g1.mass = {65.0, 95.0};
    g1.radius = {0.21, 0.26};
    g1.strength_frac = {0.8, 1.0};
    g1.panic = {0.0, 0.4};
    g2.count = 12;
    g2.rect = crowdsim::Rect{15.0, 12.0, 5.0, 4.0};
    spec.groups = {g1, g2};
    spec.params.tau = 0.45 + s;
    spec.params.beta = 0.25;
    spec.params.r_rec = 30.0;
    spec.params.gamma_jl = 0.04;
    spec.sim.dt = 0.04;
    spec.sim.max_time = 90.0;
    spec.sim.seed = 1234 + static_cast<std::uint64_t>(salt);
    spec.sim.output_every = 4;
    return spec;
}

/// Scratch directory for files a test writes; unique per tag, wiped on
/// entry so reruns start clean.
inline std::string scratch_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("crowdsim_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

} // namespace test_support
