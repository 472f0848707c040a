#include "memevo/network_json.hpp"

#include <stdexcept>
#include <string>

namespace memevo {

using nlohmann::json;

json params_to_json(const NetworkParams& p) {
    return {{"a", p.a},
            {"b", p.b},
            {"c", p.c},
            {"c_ini", p.c_ini},
            {"y_thresh", p.y_thresh},
            {"steps_per_timestep", p.steps_per_timestep},
            {"window_size", p.window_size},
            {"last_spike_init", p.last_spike_init},
            {"stdp_threshold", p.stdp_threshold}};
}

NetworkParams params_from_json(const json& j) {
    NetworkParams p;
    p.a = j.at("a").get<double>();
    p.b = j.at("b").get<double>();
    p.c = j.at("c").get<double>();
    p.c_ini = j.at("c_ini").get<double>();
    p.y_thresh = j.at("y_thresh").get<double>();
    p.steps_per_timestep = j.at("steps_per_timestep").get<int>();
    p.window_size = j.at("window_size").get<int>();
    p.last_spike_init = j.at("last_spike_init").get<int>();
    p.stdp_threshold = j.at("stdp_threshold").get<int>();
    p.validate();
    return p;
}

json memristor_to_json(const MemristorParams& p) {
    return {{"r_on", p.r_on}, {"r_off", p.r_off}, {"beta", p.beta}, {"mem_lifetime", p.mem_lifetime}};
}

MemristorParams memristor_from_json(const json& j) {
    MemristorParams p;
    p.r_on = j.at("r_on").get<double>();
    p.r_off = j.at("r_off").get<double>();
    p.beta = j.at("beta").get<double>();
    p.mem_lifetime = j.at("mem_lifetime").get<int>();
    p.validate();
    return p;
}

json network_to_json(const Network& net) {
    json neurons = json::array();
    for (int i = 0; i < net.neuron_count(); ++i) {
        const auto& n = net.neurons()[i];
        neurons.push_back({{"index", i}, {"layer", to_string(n.layer)}, {"polarity", to_string(n.polarity)}});
    }
    json connections = json::array();
    for (const auto& c : net.connections()) {
        json entry = {{"pre", c.pre},
                      {"post", c.post},
                      {"type", to_string(c.kind)},
                      {"enabled", c.enabled},
                      {"weight", c.weight}};
        if (is_variable(c.kind)) {
            entry["q"] = c.q(net.memristor());
            entry["level"] = c.level;
        } else {
            entry["q"] = nullptr;
        }
        connections.push_back(std::move(entry));
    }
    return {{"schema", kNetworkSchema},
            {"params", params_to_json(net.params())},
            {"memristor", memristor_to_json(net.memristor())},
            {"neurons", std::move(neurons)},
            {"connections", std::move(connections)},
            {"mu", net.adaptive.mu},
            {"psi", net.adaptive.psi},
            {"omega", net.adaptive.omega},
            {"tau", net.adaptive.tau},
            {"fitness", net.fitness}};
}

Network network_from_json(const json& j) {
    if (j.value("schema", std::string()) != kNetworkSchema)
        throw std::invalid_argument("not a network document (schema mismatch)");
    const auto& neurons = j.at("neurons");
    const int hidden = static_cast<int>(neurons.size()) - kInputCount - kOutputCount;
    Network net(hidden, params_from_json(j.at("params")), memristor_from_json(j.at("memristor")));
    for (int i = 0; i < net.neuron_count(); ++i) {
        const auto& entry = neurons.at(i);
        if (entry.at("index").get<int>() != i || layer_from_string(entry.at("layer").get<std::string>()) != net.layer_of(i))
            throw std::invalid_argument("neuron list is not in input/hidden/output order");
        net.neuron(i).polarity = polarity_from_string(entry.at("polarity").get<std::string>());
    }
    for (const auto& entry : j.at("connections")) {
        const auto kind = synapse_kind_from_string(entry.at("type").get<std::string>());
        const int index = net.add_connection(entry.at("pre").get<int>(), entry.at("post").get<int>(), kind,
                                             entry.at("enabled").get<bool>(),
                                             is_variable(kind) ? 0.0 : entry.at("weight").get<double>());
        if (!is_variable(kind)) continue;
        auto& conn = net.connection(index);
        if (entry.contains("level")) {
            conn.level = entry.at("level").get<double>();
            conn.refresh_weight(net.memristor());
        } else {
            conn.set_q(entry.at("q").get<double>(), net.memristor());
        }
    }
    net.adaptive = {j.at("mu").get<double>(), j.at("psi").get<double>(), j.at("omega").get<double>(),
                    j.at("tau").get<double>()};
    net.fitness = j.at("fitness").get<double>();
    return net;
}

}  // namespace memevo
