#pragma once

#include "crowdsim/engine.hpp"

#include <string>

namespace crowdsim {

/// trajectory.csv: header `t,id,x,y,vx,vy,speed,panic,strength,exited`,
/// one row per agent per sampled frame in (t, id) order, fixed 6-decimal
/// numbers, exited as 0/1. Panic and strength ranges are re-checked at
/// write time as a tripwire. Throws std::runtime_error on IO failure or a
/// tripwire hit, naming the path.
void write_trajectory(const SimRun& run, const std::string& path);

/// metrics.csv: header `t,exited,mean_panic,max_panic,mean_strength_frac,
/// mean_speed`, one row per tick, then a final summary line
/// `evacuation_time,<seconds or inf>`.
void write_metrics(const SimRun& run, const std::string& path);

/// resolved-params.txt: every effective constant (domain, sim, full param
/// table) as `name = value`, numbers in shortest round-trip form.
void write_resolved_params(const ScenarioSpec& spec, const std::string& path);

} // namespace crowdsim
