#pragma once

#include "crowdsim/dynamics.hpp"
#include "crowdsim/nav_field.hpp"
#include "crowdsim/physiology.hpp"
#include "crowdsim/types.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace crowdsim {

/// Everything static a tick needs: scenario, navigation field, wall
/// geometry, and the neighbor-query radius. Built once per run.
struct World {
    ScenarioSpec spec;
    NavField nav;
    WallSet walls;
    // Fixed for the whole run: covers both contagion and the widest
    // possible contact pair plus a 0.5 m margin. Doubles as the grid cell.
    double interaction_radius = 0;
};

World make_world(const ScenarioSpec& spec, const std::vector<AgentState>& agents);

/// One agent crossing one exit, at the tick whose frame first shows it.
struct ExitEvent {
    std::int64_t tick = 0;
    double time = 0;
    int agent_id = -1;
};

/// Aggregates over the non-exited population at one tick.
struct MetricsRow {
    double time = 0;
    int exited = 0;
    double mean_panic = 0;
    double max_panic = 0;
    double mean_strength_frac = 0;
    double mean_speed = 0;
};

struct MetricsReport {
    double evacuation_time = std::numeric_limits<double>::infinity();
    std::vector<MetricsRow> rows; // one per tick, ascending
};

MetricsRow metrics_row(const SimFrame& frame, double s_max);

/// Assembles the report from per-tick frames and the exit event log.
/// evacuation_time is the last event's time when every agent exited,
/// otherwise the +infinity sentinel (also for an empty population).
MetricsReport compute_metrics(const std::vector<SimFrame>& frames,
                              const std::vector<ExitEvent>& exit_events, double s_max);

/// Per-agent side channel of one step: this tick's strength flows and
/// power (ledger bookkeeping) plus exit events in ascending id order.
struct TickOutputs {
    std::vector<double> consumed;
    std::vector<double> recovered;
    std::vector<double> power;
    std::vector<ExitEvent> exits;
};

/// Advances one tick. Every stage reads only the immutable input frame:
/// grid build, forces, integration, strength, panic, exit marking, in that
/// order, agents in ascending id. Exited agents are frozen and excluded
/// from forces, contagion, and the grid. outputs may be null. workers
/// splits the per-agent work across threads; the result is bit-identical
/// for any worker count.
/// Throws NonFiniteForce (with this frame's tick) if any total force goes
/// non-finite.
SimFrame step(const SimFrame& frame, const World& world, TickOutputs* outputs,
              int workers = 1);

struct SimRun {
    ScenarioSpec scenario;
    std::vector<SimFrame> frames; // sampled every output_every ticks + final
    MetricsReport metrics;        // rows for every tick
    StrengthLedger ledger;
    std::vector<ExitEvent> exit_events;
};

/// Full pipeline: validate, spawn from spec.sim.seed, build the world,
/// then step until everyone exited or the time horizon is reached.
/// Deterministic in spec alone; any worker count gives identical output.
/// Throws ValidationFailed, PlacementError, or NonFiniteForce.
SimRun run(const ScenarioSpec& spec, int workers = 1);

} // namespace crowdsim
