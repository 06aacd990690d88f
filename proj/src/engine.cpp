#include "crowdsim/engine.hpp"

#include "crowdsim/emotion.hpp"
#include "crowdsim/errors.hpp"
#include "crowdsim/geometry.hpp"
#include "crowdsim/spatial_grid.hpp"
#include "crowdsim/spawn.hpp"
#include "crowdsim/validation.hpp"

#include <cmath>
#include <cstddef>
#include <thread>
#include <utility>

namespace crowdsim {

// Boundary clamping can leave a disc tangent to an exit on the wall with the
// computed gap a rounding ulp above the radius; the slack absorbs exactly
// that, a nanometer is far below any physical scale in the model.
constexpr double kExitTouchSlack = 1e-9;

World make_world(const ScenarioSpec& spec, const std::vector<AgentState>& agents) {
    World w;
    w.spec = spec;
    w.nav = compute_nav_field(spec);
    w.walls = build_wall_set(spec);
    double max_radius = 0.0;
    for (const AgentState& a : agents) max_radius = std::max(max_radius, a.radius);
    w.interaction_radius = std::max(spec.params.r_contagion, 2.0 * max_radius + 0.5);
    return w;
}

MetricsRow metrics_row(const SimFrame& frame, double s_max) {
    MetricsRow row;
    row.time = frame.time;
    double sum_panic = 0, sum_frac = 0, sum_speed = 0;
    std::size_t active = 0;
    for (const AgentState& a : frame.agents) {
        if (a.exited) {
            ++row.exited;
            continue;
        }
        ++active;
        sum_panic += a.panic;
        row.max_panic = std::max(row.max_panic, a.panic);
        sum_frac += a.strength / s_max;
        sum_speed += a.vel.norm();
    }
    if (active > 0) {
        row.mean_panic = sum_panic / static_cast<double>(active);
        row.mean_strength_frac = sum_frac / static_cast<double>(active);
        row.mean_speed = sum_speed / static_cast<double>(active);
    }
    return row;
}

MetricsReport compute_metrics(const std::vector<SimFrame>& frames,
                              const std::vector<ExitEvent>& exit_events, double s_max) {
    MetricsReport report;
    report.rows.reserve(frames.size());
    for (const SimFrame& f : frames) report.rows.push_back(metrics_row(f, s_max));
    if (!frames.empty() && !frames.back().agents.empty() && !exit_events.empty()) {
        const SimFrame& last = frames.back();
        bool all_exited = true;
        for (const AgentState& a : last.agents) all_exited = all_exited && a.exited;
        if (all_exited) report.evacuation_time = exit_events.back().time;
    }
    return report;
}

namespace {

// Chunked fan-out over [0, n). make_task(0) runs inline when workers <= 1;
// otherwise each worker gets one contiguous range and its own task state,
// so results cannot depend on the worker count.
template <typename MakeTask>
void parallel_for(std::size_t n, int workers, MakeTask&& make_task) {
    if (n == 0) return;
    const std::size_t w =
        std::min<std::size_t>(std::max(workers, 1), n);
    if (w <= 1) {
        make_task()(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t begin = n * k / w;
        const std::size_t end = n * (k + 1) / w;
        threads.emplace_back([task = make_task(), begin, end]() mutable { task(begin, end); });
    }
    for (std::thread& t : threads) t.join();
}

} // namespace

SimFrame step(const SimFrame& frame, const World& world, TickOutputs* outputs, int workers) {
    const ModelParams& p = world.spec.params;
    const double dt = world.spec.sim.dt;
    const std::size_t n = frame.agents.size();

    SimFrame next;
    next.tick = frame.tick + 1;
    next.time = static_cast<double>(next.tick) * dt;
    next.agents = frame.agents;

    if (outputs) {
        outputs->consumed.assign(n, 0.0);
        outputs->recovered.assign(n, 0.0);
        outputs->power.assign(n, 0.0);
        outputs->exits.clear();
    }
    std::vector<std::uint8_t> nonfinite(n, 0);

    const SpatialGrid grid = build_grid(frame.agents, world.interaction_radius);

    struct Scratch {
        std::vector<std::pair<int, double>> hits;
        std::vector<PanicSource> sources;
    };

    auto make_task = [&]() {
        return [&, scratch = Scratch{}](std::size_t begin, std::size_t end) mutable {
            for (std::size_t i = begin; i < end; ++i) {
                const AgentState& a = frame.agents[i];
                if (a.exited) continue;
                AgentState& out = next.agents[i];

                Vec2 goal;
                try {
                    goal = goal_direction(world.nav, a.pos);
                } catch (const BlockedError&) {
                    goal = Vec2::Zero(); // boxed in: brake and wait
                }
                const double v_des = desired_speed(a.v_pref, a.panic, a.strength, p);

                ForceBreakdown fb;
                fb.drive = drive_force(a, goal, v_des, p);
                query_neighbors_into(grid, a.pos, world.interaction_radius, a.id,
                                     scratch.hits);
                for (const auto& [id, dist] : scratch.hits)
                    fb.repulsion += agent_repulsion(a, frame.agents[id], p);
                fb.wall = wall_repulsion(a, world.walls, p);
                fb.total = fb.drive + fb.repulsion + fb.wall;
                if (!fb.total.allFinite()) {
                    nonfinite[i] = 1;
                    continue;
                }

                const auto [pos, vel] = integrate(a, fb.total, dt, world.walls, p);

                const double power = mechanical_power(fb.drive, a.vel);
                const StrengthDelta sd =
                    update_strength(a.strength, power, a.vel.norm(), dt, p);

                scratch.sources.clear();
                for (const auto& [id, dist] : scratch.hits) {
                    if (dist <= p.r_contagion)
                        scratch.sources.push_back({frame.agents[id].panic, dist});
                }
                EmotionIncrement inc;
                inc.contagion = contagion_rate(a.panic, scratch.sources, p);
                inc.hazard = hazard_rate(a.pos, world.spec.hazards);
                inc.james_lange = james_lange_rate(sd.consumed, dt, p);
                inc.decay = panic_decay_rate(a.panic, p);

                out.pos = pos;
                out.vel = vel;
                out.strength = sd.s_next;
                out.panic = update_panic(a.panic, inc, dt);
                for (const ExitSegment& e : world.spec.exits) {
                    if (segment_distance(e.a, e.b, pos) <= a.radius + kExitTouchSlack) {
                        out.exited = true;
                        break;
                    }
                }

                if (outputs) {
                    outputs->consumed[i] = sd.consumed;
                    outputs->recovered[i] = sd.recovered;
                    outputs->power[i] = power;
                }
            }
        };
    };
    parallel_for(n, workers, make_task);

    for (std::size_t i = 0; i < n; ++i)
        if (nonfinite[i]) throw NonFiniteForce(frame.tick, frame.agents[i].id);
    if (outputs) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!frame.agents[i].exited && next.agents[i].exited)
                outputs->exits.push_back({next.tick, next.time, next.agents[i].id});
        }
    }
    return next;
}

namespace {

bool all_exited(const SimFrame& frame) {
    for (const AgentState& a : frame.agents)
        if (!a.exited) return false;
    return true;
}

} // namespace

SimRun run(const ScenarioSpec& spec, int workers) {
    const ValidationReport report = validate_scenario(spec);
    if (!report.ok()) throw ValidationFailed(report.errors);

    SimRun out;
    out.scenario = spec;
    std::vector<AgentState> agents = spawn_agents(spec, spec.sim.seed);
    const World world = make_world(spec, agents);
    const std::size_t n = agents.size();
    out.ledger.resize(n);

    SimFrame frame;
    frame.tick = 0;
    frame.time = 0.0;
    frame.agents = std::move(agents);

    const double dt = spec.sim.dt;
    const auto max_ticks =
        static_cast<std::int64_t>(std::floor(spec.sim.max_time / dt + 1e-9));
    const int every = spec.sim.output_every;

    out.metrics.rows.push_back(metrics_row(frame, spec.params.s_max));
    out.frames.push_back(frame);

    TickOutputs tick_out;
    while (frame.tick < max_ticks && !all_exited(frame)) {
        SimFrame next = step(frame, world, &tick_out, workers);
        for (std::size_t i = 0; i < n; ++i) {
            out.ledger.consumed[i] += tick_out.consumed[i];
            out.ledger.recovered[i] += tick_out.recovered[i];
            out.ledger.last_power[i] = tick_out.power[i];
        }
        out.exit_events.insert(out.exit_events.end(), tick_out.exits.begin(),
                               tick_out.exits.end());
        out.metrics.rows.push_back(metrics_row(next, spec.params.s_max));
        if (next.tick % every == 0) out.frames.push_back(next);
        frame = std::move(next);
    }
    if (out.frames.back().tick != frame.tick) out.frames.push_back(frame);

    if (n > 0 && all_exited(frame))
        out.metrics.evacuation_time = out.exit_events.back().time;
    return out;
}

} // namespace crowdsim
