#include "crowdsim/spawn.hpp"

#include "crowdsim/errors.hpp"
#include "crowdsim/geometry.hpp"

#include <cstddef>
#include <string>

namespace crowdsim {

namespace {

double draw_range(std::mt19937_64& gen, const Range& r) {
    return r.lo + uniform01(gen) * (r.hi - r.lo);
}

} // namespace

std::vector<AgentState> spawn_agents(const ScenarioSpec& spec, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<AgentState> agents;
    std::size_t total = 0;
    for (const SpawnGroup& g : spec.groups) total += static_cast<std::size_t>(g.count);
    agents.reserve(total);

    int id = 0;
    for (std::size_t gi = 0; gi < spec.groups.size(); ++gi) {
        const SpawnGroup& g = spec.groups[gi];
        for (int k = 0; k < g.count; ++k) {
            AgentState a;
            a.id = id;
            a.radius = draw_range(gen, g.radius);
            a.mass = draw_range(gen, g.mass);
            a.v_pref = draw_range(gen, g.v_pref);
            a.strength = draw_range(gen, g.strength_frac) * spec.params.s_max;
            a.panic = draw_range(gen, g.panic);
            a.vel = Vec2::Zero();
            a.exited = false;

            bool placed = false;
            for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
                const double x = g.rect.x + uniform01(gen) * g.rect.w;
                const double y = g.rect.y + uniform01(gen) * g.rect.h;
                const Vec2 pos(x, y);
                if (x < a.radius || x > spec.width - a.radius || y < a.radius ||
                    y > spec.height - a.radius)
                    continue;
                bool rejected = false;
                for (const Rect& ob : spec.obstacles) {
                    if (rect_distance(ob, pos) < a.radius) {
                        rejected = true;
                        break;
                    }
                }
                for (std::size_t j = 0; j < agents.size() && !rejected; ++j) {
                    if ((agents[j].pos - pos).norm() < agents[j].radius + a.radius)
                        rejected = true;
                }
                if (rejected) continue;
                a.pos = pos;
                placed = true;
            }
            if (!placed)
                throw PlacementError("placement failed after 10000 attempts (group " +
                                     std::to_string(gi) + ", agent " + std::to_string(id) +
                                     ")");
            agents.push_back(a);
            ++id;
        }
    }
    return agents;
}

} // namespace crowdsim
