#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace memevo {

enum class SynapseKind { HP, PEO, LIN, CONST };

std::string_view to_string(SynapseKind kind);
SynapseKind synapse_kind_from_string(std::string_view name);

constexpr bool is_variable(SynapseKind kind) { return kind != SynapseKind::CONST; }

struct MemristorParams {
    double r_on = 0.01;
    double r_off = 1.0;
    double beta = 100.0;
    int mem_lifetime = 1000;

    /// Throws std::invalid_argument unless 0 < r_on < r_off, beta > 0 and mem_lifetime >= 1.
    void validate() const;
};

/// Maximum charge: the q at which memristance reaches r_on.
double q_max(const MemristorParams& p);

/// Charge moved by a single STDP event.
double charge_step(const MemristorParams& p);

/// M = r_off - r_off * r_on * beta * q, for q in [0, q_max].
double memristance(double q, const MemristorParams& p);

/// HP-like device: inverse memristance normalized so that M = r_on maps to 1.
double weight_hp(double m, const MemristorParams& p);

/// PEO-PANI-like device, the mirror image of the HP curve: W_peo(q) = 1 - W_hp(q_max - q).
double weight_peo(double m, const MemristorParams& p);

/// Linear resistor: W = q / q_max.
double weight_lin(double q, const MemristorParams& p);

/// Charge that gives weight w0 for the given kind (the inverse of the kind's weight map).
double init_q_for_weight(SynapseKind kind, double w0, const MemristorParams& p);

/// Weight of a variable connection given its charge level (see Connection::level).
double weight_from_level(SynapseKind kind, double level, const MemristorParams& p);

enum class StdpPolarity { Positive, Negative };

struct StdpEvent {
    int connection = 0;
    StdpPolarity polarity = StdpPolarity::Positive;
    long timestep = 0;
    int step = 0;
};

/// Spacing of representable charge levels: the ulp of mem_lifetime.
double level_grid(const MemristorParams& p);

/// Directed synapse between two neurons of a Network.
///
/// The charge of variable kinds is kept as `level`, the charge expressed in
/// units of charge_step(); q = level / mem_lifetime * q_max. Levels sit on the
/// grid level_grid(), where every level in [0, mem_lifetime] is a double and
/// adding or removing one step is exact. Event sequences therefore accumulate
/// without rounding and the linear resistor's weight is exactly level / mem_lifetime.
struct Connection {
    int pre = 0;
    int post = 0;
    SynapseKind kind = SynapseKind::CONST;
    bool enabled = true;
    double level = 0.0;
    double weight = 0.0;
    int delay = 0;

    double q(const MemristorParams& p) const;
    void set_q(double q, const MemristorParams& p);
    /// Recomputes `weight` from the charge level (no-op for CONST).
    void refresh_weight(const MemristorParams& p);
};

/// Applies the stepwise-waveform STDP rule to one enabled variable connection.
/// Returns the polarity of the event, if any.
std::optional<StdpPolarity> stdp_update(Connection& conn, int ls_pre, int ls_post,
                                        int stdp_threshold, const MemristorParams& p);

/// Restores a variable connection to weight 0.5; CONST connections are untouched.
void reset_connection(Connection& conn, const MemristorParams& p);

inline constexpr double kInitialVariableWeight = 0.5;

}  // namespace memevo
