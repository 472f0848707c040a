#include "memevo/population_json.hpp"

#include <stdexcept>
#include <string>

#include "memevo/network_json.hpp"

namespace memevo {

using nlohmann::json;

json population_to_json(const Population& pop) {
    json members = json::array();
    for (const auto& m : pop.members) members.push_back({{"birth", m.birth}, {"network", network_to_json(m.net)}});
    return {{"schema", kPopulationSchema},
            {"system", to_string(pop.system)},
            {"generation", pop.generation},
            {"next_birth", pop.next_birth},
            {"evaluations", pop.evaluations},
            {"first_solved", pop.first_solved},
            {"rng", pop.rng.state()},
            {"members", std::move(members)}};
}

Population population_from_json(const json& j) {
    if (j.value("schema", std::string()) != kPopulationSchema)
        throw std::invalid_argument("not a population document (schema mismatch)");
    Population pop;
    pop.system = system_kind_from_string(j.at("system").get<std::string>());
    pop.generation = j.at("generation").get<int>();
    pop.next_birth = j.at("next_birth").get<std::uint64_t>();
    pop.evaluations = j.at("evaluations").get<std::uint64_t>();
    pop.first_solved = j.at("first_solved").get<int>();
    pop.rng.set_state(j.at("rng").get<std::string>());
    for (const auto& m : j.at("members"))
        pop.members.push_back({network_from_json(m.at("network")), m.at("birth").get<std::uint64_t>()});
    return pop;
}

}  // namespace memevo
