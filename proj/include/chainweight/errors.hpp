#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chainweight {

/// Syntax error in the weight-function DSL. `position` is a 0-based byte
/// offset into the input text.
struct ParseError : std::runtime_error {
    ParseError(std::string msg, std::size_t pos)
        : std::runtime_error(std::move(msg)), position(pos) {}
    std::size_t position;
};

/// Raised when a constant expression is asked for a security verdict.
/// Constant weight functions admit no adversary with a weight disadvantage,
/// so classification is meaningless for them.
struct VacuousWeightError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Witness search or attack synthesis could not complete (e.g. a stretch
/// witness was found but no second point with a differing weight exists in
/// the sampled region).
struct AttackInconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario-file validation failure; `path` is the JSON field path
/// (e.g. "profiles.honest.segments[2].V").
struct ScenarioError : std::runtime_error {
    ScenarioError(const std::string& msg, std::string field_path)
        : std::runtime_error(field_path.empty() ? msg : field_path + ": " + msg),
          path(std::move(field_path)) {}
    std::string path;
};

}  // namespace chainweight
