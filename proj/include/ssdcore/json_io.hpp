#pragma once

#include <json.hpp>

#include "ssdcore/classical_game.hpp"
#include "ssdcore/distribution.hpp"
#include "ssdcore/newsvendor.hpp"
#include "ssdcore/stochastic_game.hpp"

namespace ssdcore::io {

using nlohmann::json;

/// Parse "1,3"-style ascending 1-based coalition keys.
Coalition parse_coalition_key(const std::string& key, int n);

/// Distribution object with an explicit "family" field.
Distribution parse_distribution(const json& j);
json distribution_to_json(const Distribution& d);

/// Family parameter object without the "family" field (game files name the
/// family once at the top level).
Distribution parse_distribution_params(const std::string& family, const json& j,
                                       const std::string& where);

/// {"players": n, "family": f, "coalitions": {"1": {...}, ...}}
StochasticGame parse_stochastic_game(const json& j);
json stochastic_game_to_json(const StochasticGame& g);

/// {"players": n, "values": {"1": v, ...}}
ClassicalGame parse_classical_game(const json& j);
ClassicalGame parse_classical_values(int n, const json& values, const std::string& where);
json classical_game_to_json(const ClassicalGame& g);

/// {"type": "r"|"dr"|"dr_signed"|"unstructured", ...}
Allocation parse_allocation(const json& j, int n);

/// {"players": n, "p": ..., "c": ..., "demand": {"1": {"a":..., "b":...}, ...}}
NewsvendorProblem parse_newsvendor(const json& j);

}  // namespace ssdcore::io
