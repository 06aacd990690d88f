#pragma once

#include "crowdsim/types.hpp"

#include <algorithm>
#include <vector>

namespace crowdsim {

/// Whole-run energy bookkeeping, indexed by agent id. consumed and
/// recovered accumulate across ticks and never decrease; last_power holds
/// the most recent tick's mechanical power.
struct StrengthLedger {
    std::vector<double> consumed;
    std::vector<double> recovered;
    std::vector<double> last_power;

    void resize(std::size_t n) {
        consumed.assign(n, 0.0);
        recovered.assign(n, 0.0);
        last_power.assign(n, 0.0);
    }
};

/// One tick of the strength ledger for a single agent.
/// s_next - s == recovered - consumed up to the final clamp guard, which
/// only absorbs rounding at the pool edges, so a run-long energy audit can
/// sum the deltas without drift.
struct StrengthDelta {
    double s_next = 0;
    double consumed = 0;
    double recovered = 0;
};

/// Rate of work the drive force does on the agent, floored at zero:
/// braking is free, only propulsion costs strength.
inline double mechanical_power(const Vec2& drive, const Vec2& vel) {
    return std::max(0.0, drive.dot(vel));
}

/// Advances strength one tick. Drain is basal plus mechanical power;
/// recovery runs only while the agent moves slower than v_rest. Both flows
/// are truncated so the pool stays in [0, s_max] by construction.
inline StrengthDelta update_strength(double s, double power, double speed, double dt,
                                     const ModelParams& p) {
    const double loss = (p.c_basal + power) * dt;
    const double gain = speed < p.v_rest ? p.r_rec * dt : 0.0;
    StrengthDelta d;
    d.consumed = std::min(loss, s + gain);
    d.recovered = std::min(gain, p.s_max - s + d.consumed);
    d.s_next = std::clamp(s - d.consumed + d.recovered, 0.0, p.s_max);
    return d;
}

} // namespace crowdsim
