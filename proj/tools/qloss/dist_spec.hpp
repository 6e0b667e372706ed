#pragma once

#include <string>

#include <json.hpp>

#include "qloss/distribution.hpp"

namespace qloss::cli {

/// Parses a compact distribution spec of the form "kind:params":
///   exponential:RATE            deterministic:VALUE
///   erlang:SHAPE,RATE           hyperexp:W1,..,Wk;R1,..,Rk
///   twopoint:G1,G2              empirical:PATH
/// Nested mixtures are only expressible through the JSON form.
Distribution parse_dist_string(const std::string& spec);

/// Parses the JSON form {"kind": ..., ...}; mixtures nest recursively via
/// {"kind":"mixture","p":...,"left":...,"right":...}. A plain JSON string is
/// handed to parse_dist_string.
Distribution parse_dist_json(const nlohmann::json& spec);

}  // namespace qloss::cli
