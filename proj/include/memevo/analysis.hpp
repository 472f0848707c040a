#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "memevo/network.hpp"
#include "memevo/trial.hpp"

namespace memevo {

/// Neurons of any layer with at least one enabled connection.
int connected_neurons(const Network& net);

/// Enabled connections as a percentage of connections present (0 when there are none).
double connectivity_percent(const Network& net);

/// Enabled-connection counts for one connection kind.
struct KindCensus {
    int total = 0;
    int input_hidden = 0;
    int hidden_hidden = 0;
    int hidden_output = 0;
    int pre_excitatory = 0;
    int pre_inhibitory = 0;
    int post_excitatory = 0;
    int post_inhibitory = 0;
    /// Input->hidden connections by sensor modality of the source input.
    int from_light = 0;
    int from_ir = 0;

    bool operator==(const KindCensus&) const = default;
};

/// Indexed by SynapseKind (HP, PEO, LIN, CONST).
using Census = std::array<KindCensus, 4>;

Census topology_census(const Network& net);

inline constexpr const char* kCensusSchema = "memevo.census/1";
void write_census_csv(std::ostream& out, const Census& census);

/// Moving averages over timesteps max(0, t - window + 1) .. t, per variable kind.
struct TraceRow {
    int timestep = 0;
    std::array<double, 3> mean_weight{};
    std::array<double, 3> positive{};
    std::array<double, 3> negative{};
};

/// NaN weights (kind absent) are skipped inside a window; a window of only NaN stays NaN.
std::vector<TraceRow> stdp_trace(const std::vector<TimestepRecord>& log, int window = 10);

/// One point of a device sweep driven by synthetic STDP events.
struct DeviceRow {
    SynapseKind kind = SynapseKind::LIN;
    int step = 0;
    double q = 0.0;
    double m = 0.0;
    double w = 0.0;
};

/// Starting from q = 0, applies `events` positive then `events` negative STDP events to
/// each variable kind; step 0 is the initial state, so each kind has 2 * events + 1 rows.
std::vector<DeviceRow> characterize(const MemristorParams& p = {}, int events = 1000);

inline constexpr const char* kDeviceSchema = "memevo.device/1";
void write_device_csv(std::ostream& out, const std::vector<DeviceRow>& rows);

inline constexpr const char* kTraceSchema = "memevo.trace/1";
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace memevo
