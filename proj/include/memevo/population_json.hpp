#pragma once

#include <json.hpp>

#include "memevo/evolution.hpp"

namespace memevo {

inline constexpr const char* kPopulationSchema = "memevo.population/1";

/// Full population state: members (with birth order), generation, evaluation counter,
/// first solved generation and the random stream, enough to resume a run exactly.
nlohmann::json population_to_json(const Population& pop);
Population population_from_json(const nlohmann::json& j);

}  // namespace memevo
