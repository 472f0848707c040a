#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "memevo/synapse.hpp"

namespace memevo {

enum class Layer { Input, Hidden, Output };
enum class Polarity { Excitatory, Inhibitory };
enum class WindowClass { Low, High };
enum class Action { Forward, LeftTurn, RightTurn };

std::string_view to_string(Layer layer);
std::string_view to_string(Polarity polarity);
std::string_view to_string(Action action);
Layer layer_from_string(std::string_view name);
Polarity polarity_from_string(std::string_view name);

struct NetworkParams {
    double a = 0.3;
    double b = 0.05;
    double c = 0.0;
    double c_ini = 0.5;
    double y_thresh = 1.0;
    int steps_per_timestep = 21;
    int window_size = 21;
    int last_spike_init = 3;
    int stdp_threshold = 4;

    void validate() const;
};

struct NeuronState {
    Layer layer = Layer::Hidden;
    Polarity polarity = Polarity::Excitatory;
    double y = 0.0;
    int ls = 0;
};

struct NeuronUpdate {
    double y = 0.0;
    bool spiked = false;
};

/// One leaky integrate-and-fire update: y + (I + a - b*y), floored at 0, reset to c above threshold.
NeuronUpdate step_neuron(double y, double current, const NetworkParams& params);

/// Transmission delay in steps. Only hidden->hidden spikes are delayed, by the index
/// difference of sender and receiver; throws std::invalid_argument if sender <= receiver.
int connection_delay(Layer from, Layer to, int sender, int receiver);

WindowClass classify_window(int spike_count, int window_size);
Action decode_action(WindowClass first, WindowClass second);

struct SelfAdaptive {
    double mu = 0.0;
    double psi = 0.0;
    double omega = 0.0;
    double tau = 0.0;
};

/// Positive/negative STDP counts per variable kind (HP, PEO, LIN).
struct StdpCounts {
    std::array<int, 3> positive{};
    std::array<int, 3> negative{};
};

inline constexpr int kInputCount = 6;
inline constexpr int kOutputCount = 2;
using SensorVector = std::array<double, kInputCount>;

/// Spiking network genome plus runtime state.
///
/// Neurons are indexed layer by layer: inputs [0, 6), hidden [6, 6 + H),
/// outputs [6 + H, 8 + H). Hidden->hidden connections run only from a higher
/// to a lower hidden index, so the hidden layer is acyclic and every
/// hidden->hidden delay is at least one step.
class Network {
  public:
    Network(int hidden_count = 9, NetworkParams params = {}, MemristorParams memristor = {});

    const NetworkParams& params() const { return params_; }
    const MemristorParams& memristor() const { return memristor_; }

    int neuron_count() const { return static_cast<int>(neurons_.size()); }
    int hidden_count() const { return neuron_count() - kInputCount - kOutputCount; }
    int input_index(int i) const { return i; }
    int hidden_index(int h) const { return kInputCount + h; }
    int output_index(int o) const { return kInputCount + hidden_count() + o; }
    Layer layer_of(int neuron) const { return neurons_.at(neuron).layer; }

    const std::vector<NeuronState>& neurons() const { return neurons_; }
    NeuronState& neuron(int index);

    const std::vector<Connection>& connections() const { return connections_; }
    Connection& connection(int index);

    bool is_legal(int pre, int post) const;
    /// Appends a connection; variable kinds start at weight 0.5, CONST at `weight`.
    int add_connection(int pre, int post, SynapseKind kind, bool enabled, double weight = 0.0);

    /// Appends a hidden neuron (highest hidden index) and returns its neuron index.
    int add_hidden(Polarity polarity);
    /// Removes hidden neuron `h` (hidden ordinal) and its connections; survivors are re-indexed.
    /// Adding or removing hidden neurons drops any spikes still in flight.
    void remove_hidden(int h);

    /// Membranes to c_ini, last-spike counters to 0, spike queue emptied, variable
    /// connections back to weight 0.5.
    void reset_state();

    /// One of the 21 processing steps of a timestep. Returns the neurons that spiked
    /// (valid until the next call).
    const std::vector<int>& run_step(const SensorVector& sensors, int step_index);
    /// Clears the output windows, runs all steps with constant sensors and decodes the action.
    Action run_timestep(const SensorVector& sensors);

    const std::array<int, kOutputCount>& output_window() const { return window_; }
    const StdpCounts& stdp_counts() const { return stdp_counts_; }
    std::uint64_t clock() const { return clock_; }
    std::size_t pending_spikes() const;

    /// When set, every STDP event is appended to the sink.
    void set_event_sink(std::vector<StdpEvent>* sink) { event_sink_ = sink; }

    SelfAdaptive adaptive;
    double fitness = 0.0;

  private:
    struct Arrival {
        int target;
        double amount;
    };

    void shift_indices_from(int first, int by);
    void recompute_delays();
    void ensure_wiring();

    NetworkParams params_;
    MemristorParams memristor_;
    std::vector<NeuronState> neurons_;
    std::vector<Connection> connections_;

    // Derived wiring, rebuilt lazily after any mutable access to connections.
    bool wiring_dirty_ = true;
    std::vector<std::vector<int>> outgoing_;
    std::vector<int> plastic_;

    std::vector<double> current_;
    std::vector<int> spikes_;
    std::vector<std::vector<Arrival>> ring_;
    std::uint64_t clock_ = 0;
    long timestep_ = 0;
    std::array<int, kOutputCount> window_{};
    StdpCounts stdp_counts_;
    std::vector<StdpEvent>* event_sink_ = nullptr;
};

}  // namespace memevo
