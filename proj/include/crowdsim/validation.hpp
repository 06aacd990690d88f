#pragma once

#include "crowdsim/types.hpp"

namespace crowdsim {

/// Checks every scenario invariant and collects human-readable findings.
/// Errors make the scenario unrunnable; warnings flag numerically risky
/// settings (dt vs tau, contagion overshoot). Never mutates its input.
ValidationReport validate_scenario(const ScenarioSpec& spec);

} // namespace crowdsim
