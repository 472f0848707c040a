#include <doctest.h>

#include <cmath>
#include <sstream>

#include "memevo/analysis.hpp"
#include "memevo/evolution.hpp"

using namespace memevo;

TEST_CASE("connected neurons and connectivity") {
    Network net(3);
    CHECK(connected_neurons(net) == 0);
    CHECK(connectivity_percent(net) == 0.0);
    net.add_connection(0, 6, SynapseKind::CONST, true, 0.5);
    net.add_connection(7, 9, SynapseKind::LIN, false);
    CHECK(connected_neurons(net) == 2);
    CHECK(connectivity_percent(net) == 50.0);
}

TEST_CASE("census of a hand-built network") {
    Network net(3);
    net.neuron(8).polarity = Polarity::Inhibitory;
    net.add_connection(4, 8, SynapseKind::PEO, true);         // IR input -> inhibitory hidden
    net.add_connection(8, 6, SynapseKind::PEO, true);         // inhibitory -> excitatory hidden
    net.add_connection(6, 10, SynapseKind::HP, true);         // hidden -> output
    net.add_connection(1, 7, SynapseKind::PEO, false);        // disabled: not counted
    net.add_connection(0, 6, SynapseKind::CONST, true, 0.2);  // light input
    const auto c = topology_census(net);
    const auto& peo = c[static_cast<int>(SynapseKind::PEO)];
    CHECK(peo.total == 2);
    CHECK(peo.input_hidden == 1);
    CHECK(peo.hidden_hidden == 1);
    CHECK(peo.hidden_output == 0);
    CHECK(peo.pre_excitatory == 1);
    CHECK(peo.pre_inhibitory == 1);
    CHECK(peo.post_excitatory == 1);
    CHECK(peo.post_inhibitory == 1);
    CHECK(peo.from_ir == 1);
    CHECK(peo.from_light == 0);
    const auto& hp = c[static_cast<int>(SynapseKind::HP)];
    CHECK(hp.total == 1);
    CHECK(hp.hidden_output == 1);
    const auto& k = c[static_cast<int>(SynapseKind::CONST)];
    CHECK(k.from_light == 1);
    CHECK(c[static_cast<int>(SynapseKind::LIN)] == KindCensus{});
}

TEST_CASE("census partitions enabled connections") {
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        Network net = create_network(SystemKind::HET, rng, 2 + static_cast<int>(rng.index(8)));
        connection_event(net, 0.3, SystemKind::HET, rng);
        int enabled = 0;
        for (const auto& conn : net.connections()) enabled += conn.enabled;
        int total = 0;
        for (const auto& k : topology_census(net)) {
            CHECK(k.input_hidden + k.hidden_hidden + k.hidden_output == k.total);
            CHECK(k.pre_excitatory + k.pre_inhibitory == k.total);
            CHECK(k.post_excitatory + k.post_inhibitory == k.total);
            CHECK(k.from_light + k.from_ir == k.input_hidden);
            total += k.total;
        }
        CHECK(total == enabled);
    }
    Network empty(4);
    for (const auto& k : topology_census(empty)) CHECK(k == KindCensus{});
}

TEST_CASE("census CSV") {
    std::ostringstream os;
    write_census_csv(os, Census{});
    CHECK(os.str().rfind("# schema: memevo.census/1\nkind,total,", 0) == 0);
}

namespace {

std::vector<TimestepRecord> constant_log(int n, double w, int pos) {
    std::vector<TimestepRecord> log(n);
    for (int t = 0; t < n; ++t) {
        log[t].timestep = t + 1;
        log[t].mean_weight = {w, w, w};
        log[t].stdp.positive = {pos, pos, pos};
    }
    return log;
}

}  // namespace

TEST_CASE("trace of a constant log is the constant") {
    const auto trace = stdp_trace(constant_log(30, 0.25, 3));
    REQUIRE(trace.size() == 30);
    for (const auto& row : trace) {
        CHECK(row.mean_weight[1] == 0.25);
        CHECK(row.positive[2] == 3.0);
        CHECK(row.negative[0] == 0.0);
    }
}

TEST_CASE("trace of an impulse") {
    auto log = constant_log(30, 0.5, 0);
    log[5].stdp.positive[0] = 10;
    const auto trace = stdp_trace(log, 10);
    for (int t = 0; t < 30; ++t) {
        const double v = trace[t].positive[0];
        if (t < 5 || t > 14)
            CHECK(v == 0.0);
        else if (t < 9)
            CHECK(v == doctest::Approx(10.0 / (t + 1)));  // windows shorter than 10 at the start
        else
            CHECK(v == 1.0);
    }
}

TEST_CASE("trace skips absent kinds") {
    auto log = constant_log(4, 0.5, 0);
    log[0].mean_weight[2] = std::nan("");
    log[1].mean_weight[2] = std::nan("");
    const auto trace = stdp_trace(log, 10);
    CHECK(std::isnan(trace[0].mean_weight[2]));
    CHECK(trace[3].mean_weight[2] == 0.5);
    CHECK_THROWS(stdp_trace(log, 0));
}

TEST_CASE("device characterization") {
    const auto rows = characterize();
    REQUIRE(rows.size() == 3 * 2001);
    auto at = [&](SynapseKind kind, int step) {
        for (const auto& r : rows)
            if (r.kind == kind && r.step == step) return r;
        FAIL("missing row");
        return DeviceRow{};
    };
    CHECK(at(SynapseKind::HP, 1000).w == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at(SynapseKind::PEO, 0).w == 0.0);
    CHECK(at(SynapseKind::HP, 0).m == 1.0);
    CHECK(at(SynapseKind::HP, 910).w == doctest::Approx(0.1009).epsilon(1e-3));
    CHECK(at(SynapseKind::PEO, 90).w == doctest::Approx(0.8991).epsilon(1e-3));
    for (int s = 0; s <= 1000; ++s) REQUIRE(at(SynapseKind::LIN, s).w == s / 1000.0);
    for (int s = 1000; s <= 2000; ++s) REQUIRE(at(SynapseKind::LIN, s).w == (2000 - s) / 1000.0);
    std::ostringstream os;
    write_device_csv(os, rows);
    CHECK(os.str().rfind("# schema: memevo.device/1\nkind,step,q,M,W\n", 0) == 0);
}
