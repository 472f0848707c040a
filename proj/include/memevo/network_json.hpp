#pragma once

#include <json.hpp>

#include "memevo/network.hpp"

namespace memevo {

inline constexpr const char* kNetworkSchema = "memevo.network/1";

nlohmann::json params_to_json(const NetworkParams& params);
NetworkParams params_from_json(const nlohmann::json& j);
nlohmann::json memristor_to_json(const MemristorParams& params);
MemristorParams memristor_from_json(const nlohmann::json& j);

nlohmann::json network_to_json(const Network& net);
/// Throws std::invalid_argument (or nlohmann::json::exception) on malformed documents.
Network network_from_json(const nlohmann::json& j);

}  // namespace memevo
