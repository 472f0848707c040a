#include "memevo/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace memevo {

std::string_view to_string(Layer layer) {
    switch (layer) {
        case Layer::Input: return "input";
        case Layer::Hidden: return "hidden";
        case Layer::Output: return "output";
    }
    return "?";
}

std::string_view to_string(Polarity polarity) {
    return polarity == Polarity::Excitatory ? "excitatory" : "inhibitory";
}

std::string_view to_string(Action action) {
    switch (action) {
        case Action::Forward: return "forward";
        case Action::LeftTurn: return "left";
        case Action::RightTurn: return "right";
    }
    return "?";
}

Layer layer_from_string(std::string_view name) {
    if (name == "input") return Layer::Input;
    if (name == "hidden") return Layer::Hidden;
    if (name == "output") return Layer::Output;
    throw std::invalid_argument("unknown layer: " + std::string(name));
}

Polarity polarity_from_string(std::string_view name) {
    if (name == "excitatory") return Polarity::Excitatory;
    if (name == "inhibitory") return Polarity::Inhibitory;
    throw std::invalid_argument("unknown polarity: " + std::string(name));
}

void NetworkParams::validate() const {
    if (!(a > 0 && b > 0 && c_ini > 0 && y_thresh > 0) || c < 0)
        throw std::invalid_argument("network params: a, b, c_ini, y_thresh must be positive and c >= 0");
    if (steps_per_timestep < 1 || window_size != steps_per_timestep)
        throw std::invalid_argument("network params: window size must equal steps per timestep");
    if (last_spike_init < 1 || stdp_threshold < 1)
        throw std::invalid_argument("network params: last_spike_init and stdp_threshold must be positive");
}

NeuronUpdate step_neuron(double y, double current, const NetworkParams& params) {
    double next = y + (current + params.a - params.b * y);
    if (next < 0.0) next = 0.0;
    if (next > params.y_thresh) return {params.c, true};
    return {next, false};
}

int connection_delay(Layer from, Layer to, int sender, int receiver) {
    if (from != Layer::Hidden || to != Layer::Hidden) return 0;
    if (sender <= receiver)
        throw std::invalid_argument("hidden->hidden connections must run from a higher to a lower index");
    return sender - receiver;
}

WindowClass classify_window(int spike_count, int window_size) {
    // n_s < t_s / 2, in integers.
    return 2 * spike_count < window_size ? WindowClass::Low : WindowClass::High;
}

Action decode_action(WindowClass first, WindowClass second) {
    if (first == second) return Action::Forward;
    return first == WindowClass::High ? Action::LeftTurn : Action::RightTurn;
}

Network::Network(int hidden_count, NetworkParams params, MemristorParams memristor)
    : params_(params), memristor_(memristor) {
    if (hidden_count < 1) throw std::invalid_argument("network needs at least one hidden neuron");
    params_.validate();
    memristor_.validate();
    neurons_.reserve(kInputCount + hidden_count + kOutputCount);
    for (int i = 0; i < kInputCount; ++i) neurons_.push_back({Layer::Input, Polarity::Excitatory, params_.c_ini, 0});
    for (int h = 0; h < hidden_count; ++h) neurons_.push_back({Layer::Hidden, Polarity::Excitatory, params_.c_ini, 0});
    for (int o = 0; o < kOutputCount; ++o) neurons_.push_back({Layer::Output, Polarity::Excitatory, params_.c_ini, 0});
}

NeuronState& Network::neuron(int index) { return neurons_.at(index); }

Connection& Network::connection(int index) {
    wiring_dirty_ = true;
    return connections_.at(index);
}

bool Network::is_legal(int pre, int post) const {
    if (pre < 0 || post < 0 || pre >= neuron_count() || post >= neuron_count() || pre == post) return false;
    const Layer from = layer_of(pre);
    const Layer to = layer_of(post);
    switch (from) {
        case Layer::Input: return to == Layer::Hidden;
        case Layer::Hidden: return to == Layer::Output || (to == Layer::Hidden && pre > post);
        case Layer::Output: return false;
    }
    return false;
}

int Network::add_connection(int pre, int post, SynapseKind kind, bool enabled, double weight) {
    if (!is_legal(pre, post))
        throw std::invalid_argument("illegal connection " + std::to_string(pre) + "->" + std::to_string(post));
    Connection conn;
    conn.pre = pre;
    conn.post = post;
    conn.kind = kind;
    conn.enabled = enabled;
    conn.delay = connection_delay(layer_of(pre), layer_of(post), pre, post);
    if (is_variable(kind)) {
        reset_connection(conn, memristor_);
    } else {
        if (weight < 0.0 || weight > 1.0) throw std::out_of_range("constant weight outside [0, 1]");
        conn.weight = weight;
    }
    connections_.push_back(conn);
    wiring_dirty_ = true;
    return static_cast<int>(connections_.size()) - 1;
}

void Network::shift_indices_from(int first, int by) {
    for (auto& conn : connections_) {
        if (conn.pre >= first) conn.pre += by;
        if (conn.post >= first) conn.post += by;
    }
}

void Network::recompute_delays() {
    for (auto& conn : connections_) conn.delay = connection_delay(layer_of(conn.pre), layer_of(conn.post), conn.pre, conn.post);
}

int Network::add_hidden(Polarity polarity) {
    const int index = kInputCount + hidden_count();
    shift_indices_from(index, 1);
    neurons_.insert(neurons_.begin() + index, NeuronState{Layer::Hidden, polarity, params_.c_ini, 0});
    for (auto& ring : ring_) ring.clear();
    wiring_dirty_ = true;
    return index;
}

void Network::remove_hidden(int h) {
    if (h < 0 || h >= hidden_count()) throw std::out_of_range("hidden neuron index out of range");
    if (hidden_count() == 1) throw std::logic_error("cannot remove the last hidden neuron");
    const int index = hidden_index(h);
    std::erase_if(connections_, [index](const Connection& c) { return c.pre == index || c.post == index; });
    for (auto& conn : connections_) {
        if (conn.pre > index) --conn.pre;
        if (conn.post > index) --conn.post;
    }
    neurons_.erase(neurons_.begin() + index);
    recompute_delays();
    for (auto& ring : ring_) ring.clear();
    wiring_dirty_ = true;
}

void Network::ensure_wiring() {
    if (!wiring_dirty_) return;
    outgoing_.assign(neurons_.size(), {});
    plastic_.clear();
    for (int i = 0; i < static_cast<int>(connections_.size()); ++i) {
        const auto& conn = connections_[i];
        if (!conn.enabled) continue;
        outgoing_[conn.pre].push_back(i);
        if (is_variable(conn.kind)) plastic_.push_back(i);
    }
    current_.assign(neurons_.size(), 0.0);
    const std::size_t ring_size = std::max(1, hidden_count());
    if (ring_.size() != ring_size) {
        // Every pending arrival is due less than hidden_count() steps ahead; a
        // size change only happens together with a topology edit, which drops them.
        ring_.assign(ring_size, {});
    }
    wiring_dirty_ = false;
}

void Network::reset_state() {
    for (auto& n : neurons_) {
        n.y = params_.c_ini;
        n.ls = 0;
    }
    for (auto& conn : connections_) reset_connection(conn, memristor_);
    wiring_dirty_ = true;
    ensure_wiring();
    for (auto& bucket : ring_) bucket.clear();
    clock_ = 0;
    timestep_ = 0;
    window_ = {};
    stdp_counts_ = {};
}

std::size_t Network::pending_spikes() const {
    std::size_t n = 0;
    for (const auto& bucket : ring_) n += bucket.size();
    return n;
}

const std::vector<int>& Network::run_step(const SensorVector& sensors, int step_index) {
    ensure_wiring();
    auto& spikes = spikes_;
    spikes.clear();
    std::fill(current_.begin(), current_.end(), 0.0);
    const int first_hidden = kInputCount;
    const int first_output = kInputCount + hidden_count();
    const int end = neuron_count();
    const std::size_t ring_size = ring_.size();

    auto signed_weight = [this](int source, const Connection& conn) {
        return neurons_[source].polarity == Polarity::Excitatory ? conn.weight : -conn.weight;
    };

    // Inputs: external current only; spikes reach hidden targets in the same step.
    for (int i = 0; i < kInputCount; ++i) {
        auto& n = neurons_[i];
        const auto update = step_neuron(n.y, sensors[i], params_);
        n.y = update.y;
        if (!update.spiked) continue;
        n.ls = params_.last_spike_init;
        spikes.push_back(i);
        for (int ci : outgoing_[i]) current_[connections_[ci].post] += signed_weight(i, connections_[ci]);
    }

    // Hidden: delayed arrivals due now, then ascending-index updates.
    auto& due = ring_[clock_ % ring_size];
    for (const auto& arrival : due) current_[arrival.target] += arrival.amount;
    due.clear();
    for (int h = first_hidden; h < first_output; ++h) {
        auto& n = neurons_[h];
        const auto update = step_neuron(n.y, current_[h], params_);
        n.y = update.y;
        if (!update.spiked) continue;
        n.ls = params_.last_spike_init;
        spikes.push_back(h);
        for (int ci : outgoing_[h]) {
            const auto& conn = connections_[ci];
            const double amount = signed_weight(h, conn);
            if (conn.delay > 0)
                ring_[(clock_ + conn.delay) % ring_size].push_back({conn.post, amount});
            else
                current_[conn.post] += amount;
        }
    }

    for (int o = first_output; o < end; ++o) {
        auto& n = neurons_[o];
        const auto update = step_neuron(n.y, current_[o], params_);
        n.y = update.y;
        if (!update.spiked) continue;
        n.ls = params_.last_spike_init;
        spikes.push_back(o);
        ++window_[o - first_output];
    }

    const int threshold = params_.stdp_threshold;
    for (int ci : plastic_) {
        auto& conn = connections_[ci];
        const int ls_pre = neurons_[conn.pre].ls;
        const int ls_post = neurons_[conn.post].ls;
        if (ls_pre + ls_post <= threshold || ls_pre == ls_post) continue;
        const auto event = stdp_update(conn, ls_pre, ls_post, threshold, memristor_);
        const auto kind = static_cast<std::size_t>(conn.kind);
        if (*event == StdpPolarity::Positive)
            ++stdp_counts_.positive[kind];
        else
            ++stdp_counts_.negative[kind];
        if (event_sink_) event_sink_->push_back({ci, *event, timestep_, step_index});
    }

    for (auto& n : neurons_)
        if (n.ls > 0) --n.ls;
    ++clock_;
    return spikes;
}

Action Network::run_timestep(const SensorVector& sensors) {
    window_ = {};
    stdp_counts_ = {};
    for (int step = 0; step < params_.steps_per_timestep; ++step) run_step(sensors, step);
    ++timestep_;
    return decode_action(classify_window(window_[0], params_.window_size),
                         classify_window(window_[1], params_.window_size));
}

}  // namespace memevo
