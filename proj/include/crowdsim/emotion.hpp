#pragma once

#include "crowdsim/types.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace crowdsim {

/// Panic rate terms for one agent and one tick, kept separate so tests and
/// diagnostics can attribute changes to a source.
struct EmotionIncrement {
    double contagion = 0;
    double hazard = 0;
    double james_lange = 0;
    double decay = 0;
};

/// A neighbor as the contagion term sees it: its panic level and its
/// center distance. Callers pass neighbors in ascending id order so the
/// sum has one fixed evaluation order.
struct PanicSource {
    double panic = 0;
    double dist = 0;
};

/// Contagion picks up only from more-panicked neighbors, weighted by
/// w(d) = 1 - d/R, so influence fades linearly to zero at the contagion
/// radius. Calmer neighbors contribute nothing rather than soothing.
inline double contagion_rate(double self_panic, const std::vector<PanicSource>& neighbors,
                             const ModelParams& p) {
    double sum = 0.0;
    for (const PanicSource& n : neighbors) {
        if (n.dist > p.r_contagion) continue;
        const double w = 1.0 - n.dist / p.r_contagion;
        sum += w * std::max(0.0, n.panic - self_panic);
    }
    return p.beta * sum;
}

/// Hazard fields stack additively, each decaying exponentially with
/// distance from its source. Summed in scenario order.
inline double hazard_rate(const Vec2& pos, const std::vector<Hazard>& hazards) {
    double sum = 0.0;
    for (const Hazard& h : hazards)
        sum += h.amplitude * std::exp(-(pos - h.pos).norm() / h.decay_length);
    return sum;
}

/// Bodily feedback: panic rises with the rate the agent is spending
/// strength, normalized by the reference power p_ref.
inline double james_lange_rate(double consumed, double dt, const ModelParams& p) {
    return p.gamma_jl * (consumed / dt) / p.p_ref;
}

/// Linear relaxation toward calm.
inline double panic_decay_rate(double panic, const ModelParams& p) {
    return p.delta_decay * panic;
}

/// Explicit Euler step on panic, clamped to [0, 1].
inline double update_panic(double panic, const EmotionIncrement& inc, double dt) {
    const double rate = inc.contagion + inc.hazard + inc.james_lange - inc.decay;
    return std::clamp(panic + dt * rate, 0.0, 1.0);
}

} // namespace crowdsim
