#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace crowdsim {

using Vec2 = Eigen::Vector2d;

/// One simulated pedestrian. Units are SI throughout (m, s, kg, N, J, W);
/// panic is dimensionless in [0, 1].
struct AgentState {
    int id = 0;             // dense, stable, ascending from 0
    Vec2 pos = Vec2::Zero();
    Vec2 vel = Vec2::Zero();
    double radius = 0.25;   // disc radius, m
    double mass = 80.0;     // kg
    double v_pref = 1.4;    // preferred walking speed, m/s
    double strength = 5000; // physical strength reserve, J, in [0, s_max]
    double panic = 0.0;     // panic level, in [0, 1]
    bool exited = false;    // removed from dynamics, kept in output
};

/// Every model constant. Names double as the scenario-file [params] keys
/// and as `sweep --param` names.
struct ModelParams {
    double tau = 0.5;          // drive relaxation time, s
    double a_rep = 2000.0;     // repulsion amplitude, N
    double b_rep = 0.08;       // repulsion range, m
    double k_body = 1.2e5;     // body compression stiffness, N/m
    double kappa_fric = 2.4e5; // sliding friction coefficient, kg/(m s)
    double s_max = 5000.0;     // strength capacity, J
    double c_basal = 2.0;      // basal consumption, W
    double r_rec = 0.0;        // recovery rate while near-stationary, W
    double v_rest = 0.1;       // rest-speed threshold, m/s
    double v_crawl = 0.3;      // exhausted speed floor, m/s
    double v_phys = 3.0;       // unfatigued physical speed ceiling, m/s
    double kappa_fat = 0.25;   // fatigue exponent
    double alpha_p = 0.8;      // panic speed amplification
    double r_contagion = 2.0;  // perception radius, m
    double beta = 0.3;         // contagion rate, 1/s
    double a_hazard = 0.5;     // default hazard panic drive, 1/s
    double lambda_hazard = 2.0; // default hazard decay length, m
    double gamma_jl = 0.05;    // James-Lange gain
    double p_ref = 200.0;      // reference power for arousal normalization, W
    double delta_decay = 0.02; // panic decay, 1/s
    double v_hard = 5.0;       // absolute speed cap, m/s
};

/// Name table for ModelParams: scenario [params] keys, sweep --param names,
/// resolved-params dump. Order here is the canonical serialization order.
struct ParamDesc {
    const char* name;
    double ModelParams::*member;
};

inline constexpr ParamDesc kParamTable[] = {
    {"tau", &ModelParams::tau},
    {"A_rep", &ModelParams::a_rep},
    {"B_rep", &ModelParams::b_rep},
    {"k_body", &ModelParams::k_body},
    {"kappa_fric", &ModelParams::kappa_fric},
    {"S_max", &ModelParams::s_max},
    {"c_basal", &ModelParams::c_basal},
    {"r_rec", &ModelParams::r_rec},
    {"v_rest", &ModelParams::v_rest},
    {"v_crawl", &ModelParams::v_crawl},
    {"v_phys", &ModelParams::v_phys},
    {"kappa_fat", &ModelParams::kappa_fat},
    {"alpha_p", &ModelParams::alpha_p},
    {"R_contagion", &ModelParams::r_contagion},
    {"beta", &ModelParams::beta},
    {"A_h", &ModelParams::a_hazard},
    {"lambda_h", &ModelParams::lambda_hazard},
    {"gamma_jl", &ModelParams::gamma_jl},
    {"P_ref", &ModelParams::p_ref},
    {"delta_decay", &ModelParams::delta_decay},
    {"v_hard", &ModelParams::v_hard},
};

/// Axis-aligned rectangle, lower-left corner plus extents.
struct Rect {
    double x = 0, y = 0, w = 0, h = 0;
};

struct ExitSegment {
    Vec2 a = Vec2::Zero();
    Vec2 b = Vec2::Zero();
};

struct Hazard {
    Vec2 pos = Vec2::Zero();
    double amplitude = 0.5;     // panic drive at the hazard point, 1/s
    double decay_length = 2.0;  // exponential falloff length, m
};

/// Closed interval for uniform attribute sampling.
struct Range {
    double lo = 0, hi = 0;
};

struct SpawnGroup {
    int count = 0;
    Rect rect;                        // spawn rectangle
    Range v_pref{1.2, 1.6};
    Range mass{70.0, 90.0};
    Range radius{0.2, 0.25};
    Range strength_frac{1.0, 1.0};    // initial strength as fraction of s_max
    Range panic{0.0, 0.0};            // initial panic
};

struct SimSettings {
    double dt = 0.05;        // timestep, s
    double max_time = 60.0;  // horizon, s
    std::uint64_t seed = 1;
    int output_every = 1;    // frame sampling stride, ticks
};

/// Static world description: domain, geometry, population, constants.
/// Immutable after construction; safe to share across threads.
struct ScenarioSpec {
    double width = 0, height = 0;   // domain, m
    double cell_size = 0.25;        // navigation grid resolution, m
    std::vector<Rect> obstacles;
    std::vector<ExitSegment> exits;
    std::vector<Hazard> hazards;
    std::vector<SpawnGroup> groups;
    ModelParams params;             // fully resolved (defaults + overrides)
    SimSettings sim;
};

/// Immutable snapshot of every agent at one tick. time == tick * dt.
struct SimFrame {
    std::int64_t tick = 0;
    double time = 0.0;
    std::vector<AgentState> agents; // ascending id
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

inline bool operator==(const Rect& a, const Rect& b) {
    return a.x == b.x && a.y == b.y && a.w == b.w && a.h == b.h;
}
inline bool operator==(const ExitSegment& a, const ExitSegment& b) {
    return a.a.x() == b.a.x() && a.a.y() == b.a.y() && a.b.x() == b.b.x() && a.b.y() == b.b.y();
}
inline bool operator==(const Hazard& a, const Hazard& b) {
    return a.pos.x() == b.pos.x() && a.pos.y() == b.pos.y() &&
           a.amplitude == b.amplitude && a.decay_length == b.decay_length;
}
inline bool operator==(const Range& a, const Range& b) { return a.lo == b.lo && a.hi == b.hi; }
inline bool operator==(const SpawnGroup& a, const SpawnGroup& b) {
    return a.count == b.count && a.rect == b.rect && a.v_pref == b.v_pref && a.mass == b.mass &&
           a.radius == b.radius && a.strength_frac == b.strength_frac && a.panic == b.panic;
}
inline bool operator==(const ModelParams& a, const ModelParams& b) {
    for (const auto& d : kParamTable)
        if (a.*(d.member) != b.*(d.member)) return false;
    return true;
}
inline bool operator==(const SimSettings& a, const SimSettings& b) {
    return a.dt == b.dt && a.max_time == b.max_time && a.seed == b.seed &&
           a.output_every == b.output_every;
}
inline bool operator==(const ScenarioSpec& a, const ScenarioSpec& b) {
    return a.width == b.width && a.height == b.height && a.cell_size == b.cell_size &&
           a.obstacles == b.obstacles && a.exits == b.exits && a.hazards == b.hazards &&
           a.groups == b.groups && a.params == b.params && a.sim == b.sim;
}

} // namespace crowdsim
