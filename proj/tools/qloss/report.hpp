#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qloss/bounds.hpp"
#include "qloss/models.hpp"
#include "qloss/roots.hpp"
#include "qloss/sim.hpp"

namespace qloss::cli {

inline nlohmann::json to_json(const RootReport& r) {
    return {{"root", r.root},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"bracket", {r.bracket_lo, r.bracket_hi}}};
}

inline nlohmann::json to_json(const EpsilonAdmissibility& a) {
    nlohmann::json j{{"value", a.value},
                     {"terms", {a.terms[0], a.terms[1], a.terms[2]}},
                     {"inside_sandwich", a.inside_sandwich}};
    if (!a.diagnostic.empty()) j["diagnostic"] = a.diagnostic;
    return j;
}

inline nlohmann::json to_json(const BoundEnvelope& e) {
    return {{"lower", e.lower},
            {"upper", e.upper},
            {"root_interval", {e.root_lo, e.root_hi}},
            {"admissibility", to_json(e.admissibility)},
            {"saturated", {{"lower", e.lower_saturated}, {"upper", e.upper_saturated}}}};
}

inline nlohmann::json to_json(const SimEstimate& e) {
    return {{"point", e.point},
            {"half_width", e.half_width},
            {"arrivals", e.arrivals},
            {"losses", e.losses},
            {"seed", e.seed},
            {"stream", e.stream},
            {"rng", e.rng_algorithm}};
}

inline void append_warnings(std::vector<std::string>& sink,
                            const std::vector<std::string>& src) {
    sink.insert(sink.end(), src.begin(), src.end());
}

}  // namespace qloss::cli
