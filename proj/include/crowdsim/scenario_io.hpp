#pragma once

#include "crowdsim/types.hpp"

#include <string>

namespace crowdsim {

/// Parses the sectioned scenario text format. Strict: unknown sections,
/// unknown keys, duplicate keys, and malformed numbers are ParseErrors
/// carrying the 1-based line number. Semantic problems (negative dt,
/// missing exits, ...) are left to validate_scenario.
///
/// Grammar: `key = value` lines under `[domain]`, `[sim]`, `[params]`
/// headers and repeated `[[obstacle]]`, `[[exit]]`, `[[hazard]]`,
/// `[[group]]` blocks; `#` starts a comment. Rectangles are `x y w h`,
/// segments `x1 y1 x2 y2`, points `x y`, ranges `lo hi`. Hazards missing
/// amplitude or decay_length inherit A_h / lambda_h from the resolved
/// params, wherever the [params] section appears in the file.
ScenarioSpec parse_scenario(const std::string& text);

/// parse_scenario over a file's contents. IO failures become
/// std::runtime_error with the path in the message.
ScenarioSpec parse_scenario_file(const std::string& path);

/// Canonical text form: domain, sim, params (full table), then obstacle /
/// exit / hazard / group blocks in stored order. Numbers print in
/// shortest round-trip form, so parse(serialize(spec)) == spec.
std::string serialize_scenario(const ScenarioSpec& spec);

} // namespace crowdsim
