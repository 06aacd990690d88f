#pragma once

#include "crowdsim/errors.hpp"
#include "crowdsim/types.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace crowdsim {

/// Diagnostic decomposition of the per-agent force. total is accumulated
/// in the fixed order drive, repulsion, wall so replays are bit-identical.
struct ForceBreakdown {
    Vec2 drive = Vec2::Zero();
    Vec2 repulsion = Vec2::Zero();
    Vec2 wall = Vec2::Zero();
    Vec2 total = Vec2::Zero();
};

/// Static wall geometry for one scenario: the four domain boundary walls
/// (split where exit segments overlap them, so doorways do not repel) plus
/// the obstacle rectangles. Built once per run.
struct WallSet {
    struct Segment {
        Vec2 a, b;
    };
    double width = 0, height = 0;
    std::vector<Segment> boundary; // W, E, S, N order, sub-segments along-axis
    std::vector<Rect> obstacles;   // scenario order
};

WallSet build_wall_set(const ScenarioSpec& spec);

/// Desired speed after panic amplification and the fatigue cap.
/// Panic raises the target toward v_pref*(1 + alpha_p*E); fatigue caps it
/// at v_crawl + (v_phys - v_crawl)*(S/S_max)^kappa_fat, so an exhausted
/// agent cannot sprint no matter how scared it is.
inline double desired_speed(double v_pref, double panic, double strength,
                            const ModelParams& p) {
    const double cap =
        p.v_crawl + (p.v_phys - p.v_crawl) * std::pow(strength / p.s_max, p.kappa_fat);
    return std::min(cap, v_pref * (1.0 + p.alpha_p * panic));
}

/// Relaxation toward the desired velocity: m*(v_des*goal - vel)/tau.
/// goal is unit length, or zero at an exit (pure braking).
inline Vec2 drive_force(const AgentState& a, const Vec2& goal, double v_des,
                        const ModelParams& p) {
    return a.mass * (v_des * goal - a.vel) / p.tau;
}

/// g(x) = x for x > 0, else 0: contact terms act only when discs overlap.
inline double contact_overlap(double x) { return x > 0.0 ? x : 0.0; }

/// Degenerate-overlap fallback direction, keyed on the agent id so replays
/// stay bit-identical: unit vector at angle (id mod 8) * pi/4.
Vec2 overlap_fallback_normal(int id);

/// Social repulsion plus body/friction contact force exerted on a by b.
Vec2 agent_repulsion(const AgentState& a, const AgentState& b, const ModelParams& p);

/// Repulsion/contact from every boundary sub-segment and obstacle, summed
/// in fixed order (W, E, S, N walls, then obstacles by index). Walls are
/// static, so only the agent's velocity enters the friction term.
Vec2 wall_repulsion(const AgentState& a, const WallSet& walls, const ModelParams& p);

/// Semi-implicit Euler step with the hard speed cap, then containment:
/// the disc is clamped inside the domain and pushed out of any obstacle
/// along the wall normal. Returns (new pos, new vel).
/// Throws NonFiniteForce (tick/agent filled in by the engine) if any force
/// component is not finite.
std::pair<Vec2, Vec2> integrate(const AgentState& a, const Vec2& total_force, double dt,
                                const WallSet& walls, const ModelParams& p);

} // namespace crowdsim
