#include "memevo/analysis.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace memevo {

int connected_neurons(const Network& net) {
    std::vector<bool> touched(net.neuron_count(), false);
    for (const auto& c : net.connections()) {
        if (!c.enabled) continue;
        touched[c.pre] = true;
        touched[c.post] = true;
    }
    int n = 0;
    for (bool t : touched) n += t;
    return n;
}

double connectivity_percent(const Network& net) {
    const auto& conns = net.connections();
    if (conns.empty()) return 0.0;
    int enabled = 0;
    for (const auto& c : conns) enabled += c.enabled;
    return 100.0 * enabled / static_cast<double>(conns.size());
}

Census topology_census(const Network& net) {
    Census census{};
    for (const auto& c : net.connections()) {
        if (!c.enabled) continue;
        auto& k = census[static_cast<std::size_t>(c.kind)];
        ++k.total;
        const auto& pre = net.neurons()[c.pre];
        const auto& post = net.neurons()[c.post];
        if (pre.layer == Layer::Input) {
            ++k.input_hidden;
            // Inputs 0-2 carry light sensors, 3-5 IR sensors.
            if (c.pre < 3)
                ++k.from_light;
            else
                ++k.from_ir;
        } else if (post.layer == Layer::Hidden) {
            ++k.hidden_hidden;
        } else {
            ++k.hidden_output;
        }
        ++(pre.polarity == Polarity::Excitatory ? k.pre_excitatory : k.pre_inhibitory);
        ++(post.polarity == Polarity::Excitatory ? k.post_excitatory : k.post_inhibitory);
    }
    return census;
}

void write_census_csv(std::ostream& out, const Census& census) {
    out << "# schema: " << kCensusSchema << '\n';
    out << "kind,total,input_hidden,hidden_hidden,hidden_output,pre_excitatory,pre_inhibitory,"
           "post_excitatory,post_inhibitory,from_light,from_ir\n";
    for (std::size_t i = 0; i < census.size(); ++i) {
        const auto& k = census[i];
        out << to_string(static_cast<SynapseKind>(i)) << ',' << k.total << ',' << k.input_hidden << ','
            << k.hidden_hidden << ',' << k.hidden_output << ',' << k.pre_excitatory << ',' << k.pre_inhibitory
            << ',' << k.post_excitatory << ',' << k.post_inhibitory << ',' << k.from_light << ',' << k.from_ir
            << '\n';
    }
}

std::vector<TraceRow> stdp_trace(const std::vector<TimestepRecord>& log, int window) {
    if (window < 1) throw std::invalid_argument("stdp_trace: window must be >= 1");
    std::vector<TraceRow> trace;
    trace.reserve(log.size());
    for (std::size_t t = 0; t < log.size(); ++t) {
        const std::size_t from = t + 1 >= static_cast<std::size_t>(window) ? t + 1 - window : 0;
        const double span = static_cast<double>(t - from + 1);
        TraceRow row;
        row.timestep = log[t].timestep;
        for (std::size_t k = 0; k < 3; ++k) {
            double pos = 0.0, neg = 0.0, w = 0.0;
            int weights = 0;
            for (std::size_t s = from; s <= t; ++s) {
                pos += log[s].stdp.positive[k];
                neg += log[s].stdp.negative[k];
                if (!std::isnan(log[s].mean_weight[k])) {
                    w += log[s].mean_weight[k];
                    ++weights;
                }
            }
            row.positive[k] = pos / span;
            row.negative[k] = neg / span;
            row.mean_weight[k] = weights ? w / weights : std::numeric_limits<double>::quiet_NaN();
        }
        trace.push_back(row);
    }
    return trace;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
    out << "# schema: " << kTraceSchema << '\n';
    out << "timestep,mean_w_hp,mean_w_peo,mean_w_lin,pos_stdp_hp,pos_stdp_peo,pos_stdp_lin,"
           "neg_stdp_hp,neg_stdp_peo,neg_stdp_lin\n";
    const auto old = out.precision(17);
    for (const auto& r : trace) {
        out << r.timestep;
        for (double v : r.mean_weight) {
            out << ',';
            if (std::isnan(v))
                out << "nan";
            else
                out << v;
        }
        for (double v : r.positive) out << ',' << v;
        for (double v : r.negative) out << ',' << v;
        out << '\n';
    }
    out.precision(old);
}

std::vector<DeviceRow> characterize(const MemristorParams& p, int events) {
    p.validate();
    if (events < 0) throw std::invalid_argument("characterize: events must be non-negative");
    std::vector<DeviceRow> rows;
    rows.reserve(3 * (2 * static_cast<std::size_t>(events) + 1));
    const int threshold = NetworkParams{}.stdp_threshold;
    for (auto kind : {SynapseKind::HP, SynapseKind::PEO, SynapseKind::LIN}) {
        Connection conn;
        conn.kind = kind;
        conn.level = 0.0;
        conn.refresh_weight(p);
        auto record = [&](int step) {
            const double q = conn.q(p);
            rows.push_back({kind, step, q, memristance(q, p), conn.weight});
        };
        record(0);
        for (int i = 1; i <= 2 * events; ++i) {
            // A pre spike one step before the post spike potentiates; the reverse depresses.
            if (i <= events)
                stdp_update(conn, threshold / 2, threshold / 2 + 1, threshold, p);
            else
                stdp_update(conn, threshold / 2 + 1, threshold / 2, threshold, p);
            record(i);
        }
    }
    return rows;
}

void write_device_csv(std::ostream& out, const std::vector<DeviceRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "# schema: " << kDeviceSchema << '\n';
    os << "kind,step,q,M,W\n";
    for (const auto& r : rows) os << to_string(r.kind) << ',' << r.step << ',' << r.q << ',' << r.m << ',' << r.w << '\n';
    out << os.str();
}

}  // namespace memevo
