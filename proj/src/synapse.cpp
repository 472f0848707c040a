#include "memevo/synapse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace memevo {

std::string_view to_string(SynapseKind kind) {
    switch (kind) {
        case SynapseKind::HP: return "HP";
        case SynapseKind::PEO: return "PEO";
        case SynapseKind::LIN: return "LIN";
        case SynapseKind::CONST: return "CONST";
    }
    return "?";
}

SynapseKind synapse_kind_from_string(std::string_view name) {
    if (name == "HP") return SynapseKind::HP;
    if (name == "PEO") return SynapseKind::PEO;
    if (name == "LIN") return SynapseKind::LIN;
    if (name == "CONST") return SynapseKind::CONST;
    throw std::invalid_argument("unknown synapse kind: " + std::string(name));
}

void MemristorParams::validate() const {
    if (!(r_on > 0.0 && r_on < r_off)) throw std::invalid_argument("memristor: need 0 < r_on < r_off");
    if (!(beta > 0.0)) throw std::invalid_argument("memristor: beta must be positive");
    if (mem_lifetime < 1) throw std::invalid_argument("memristor: mem_lifetime must be >= 1");
}

double q_max(const MemristorParams& p) {
    const double q = (p.r_on - p.r_off) / (-p.r_on * p.r_off * p.beta);
    if (!(q > 0.0)) throw std::invalid_argument("memristor: q_max is not positive");
    return q;
}

double charge_step(const MemristorParams& p) { return q_max(p) / p.mem_lifetime; }

double memristance(double q, const MemristorParams& p) {
    const double qm = q_max(p);
    if (q < 0.0 || q > qm) throw std::out_of_range("memristance: charge outside [0, q_max]");
    return p.r_off - p.r_off * p.r_on * p.beta * q;
}

double weight_hp(double m, const MemristorParams& p) { return p.r_on / m; }

double weight_peo(double m, const MemristorParams& p) {
    // 1 - r_on / (r_off + r_on - m), arranged to give exact endpoints.
    return (p.r_off - m) / (p.r_off + p.r_on - m);
}

double weight_lin(double q, const MemristorParams& p) { return q / q_max(p); }

double init_q_for_weight(SynapseKind kind, double w0, const MemristorParams& p) {
    const double qm = q_max(p);
    double q = 0.0;
    switch (kind) {
        case SynapseKind::HP: {
            if (w0 < p.r_on / p.r_off || w0 > 1.0) throw std::out_of_range("HP weight outside range");
            const double m = p.r_on / w0;
            q = (p.r_off - m) / (p.r_off * p.r_on * p.beta);
            break;
        }
        case SynapseKind::PEO: {
            if (w0 < 0.0 || w0 > 1.0 - p.r_on / p.r_off) throw std::out_of_range("PEO weight outside range");
            const double m = p.r_off + p.r_on - p.r_on / (1.0 - w0);
            q = (p.r_off - m) / (p.r_off * p.r_on * p.beta);
            break;
        }
        case SynapseKind::LIN:
            if (w0 < 0.0 || w0 > 1.0) throw std::out_of_range("LIN weight outside range");
            q = w0 * qm;
            break;
        case SynapseKind::CONST:
            throw std::invalid_argument("constant connections carry no charge");
    }
    return std::clamp(q, 0.0, qm);
}

double weight_from_level(SynapseKind kind, double level, const MemristorParams& p) {
    const double fraction = level / p.mem_lifetime;
    switch (kind) {
        case SynapseKind::LIN: return fraction;
        case SynapseKind::HP: return weight_hp(memristance(fraction * q_max(p), p), p);
        case SynapseKind::PEO: return weight_peo(memristance(fraction * q_max(p), p), p);
        case SynapseKind::CONST: break;
    }
    throw std::invalid_argument("constant connections carry no charge");
}

double Connection::q(const MemristorParams& p) const {
    return level / p.mem_lifetime * q_max(p);
}

double level_grid(const MemristorParams& p) { return std::ldexp(1.0, std::ilogb(double(p.mem_lifetime)) - 52); }

void Connection::set_q(double charge, const MemristorParams& p) {
    const double top = p.mem_lifetime;
    const double grid = level_grid(p);
    level = std::clamp(std::round(charge / q_max(p) * top / grid) * grid, 0.0, top);
    refresh_weight(p);
}

void Connection::refresh_weight(const MemristorParams& p) {
    if (is_variable(kind)) weight = weight_from_level(kind, level, p);
}

std::optional<StdpPolarity> stdp_update(Connection& conn, int ls_pre, int ls_post,
                                        int stdp_threshold, const MemristorParams& p) {
    if (ls_pre + ls_post <= stdp_threshold || ls_pre == ls_post) return std::nullopt;
    const double top = p.mem_lifetime;
    StdpPolarity polarity;
    if (ls_pre < ls_post) {
        conn.level = std::min(conn.level + 1.0, top);
        polarity = StdpPolarity::Positive;
    } else {
        conn.level = std::max(conn.level - 1.0, 0.0);
        polarity = StdpPolarity::Negative;
    }
    conn.refresh_weight(p);
    return polarity;
}

void reset_connection(Connection& conn, const MemristorParams& p) {
    if (!is_variable(conn.kind)) return;
    conn.set_q(init_q_for_weight(conn.kind, kInitialVariableWeight, p), p);
}

}  // namespace memevo
