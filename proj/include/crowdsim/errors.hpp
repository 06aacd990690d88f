#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace crowdsim {

/// Scenario text could not be parsed. Carries the 1-based line number.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// run() was called on a scenario that fails validation.
struct ValidationFailed : std::runtime_error {
    std::vector<std::string> errors;
    explicit ValidationFailed(std::vector<std::string> errs)
        : std::runtime_error(errs.empty() ? "scenario invalid"
                                          : "scenario invalid: " + errs.front()),
          errors(std::move(errs)) {}
};

/// Rejection sampling ran out of attempts while placing an agent.
struct PlacementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A spawn rectangle has no cell with a finite distance to any exit.
struct UnreachableError : std::runtime_error {
    std::vector<int> group_indices;
    UnreachableError(std::vector<int> groups, const std::string& what_)
        : std::runtime_error(what_), group_indices(std::move(groups)) {}
};

/// Navigation lookup landed on an obstacle or unreachable cell.
struct BlockedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A force component went non-finite; the simulation aborts with diagnostics.
struct NonFiniteForce : std::runtime_error {
    std::int64_t tick;
    int agent_id;
    NonFiniteForce(std::int64_t tick_, int agent_id_)
        : std::runtime_error("non-finite force at tick " + std::to_string(tick_) +
                             ", agent " + std::to_string(agent_id_)),
          tick(tick_), agent_id(agent_id_) {}
};

} // namespace crowdsim
