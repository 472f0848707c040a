#include "memevo/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace memevo {

std::string_view to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::HP: return "hp";
        case SystemKind::PEO: return "peo";
        case SystemKind::LIN: return "lin";
        case SystemKind::GA: return "ga";
        case SystemKind::HET: return "het";
    }
    return "?";
}

SystemKind system_kind_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "hp") return SystemKind::HP;
    if (lower == "peo") return SystemKind::PEO;
    if (lower == "lin") return SystemKind::LIN;
    if (lower == "ga") return SystemKind::GA;
    if (lower == "het") return SystemKind::HET;
    throw std::invalid_argument("unknown system: " + std::string(name));
}

namespace {

constexpr std::array<SynapseKind, 3> kVariableKinds{SynapseKind::HP, SynapseKind::PEO, SynapseKind::LIN};

void add_drawn_connection(Network& net, int pre, int post, bool enabled, SystemKind system, Rng& rng) {
    const SynapseKind kind = draw_connection_kind(system, rng);
    const double weight = kind == SynapseKind::CONST ? rng.uniform() : 0.0;
    net.add_connection(pre, post, kind, enabled, weight);
}

}  // namespace

SynapseKind draw_connection_kind(SystemKind system, Rng& rng) {
    switch (system) {
        case SystemKind::HP: return SynapseKind::HP;
        case SystemKind::PEO: return SynapseKind::PEO;
        case SystemKind::LIN: return SynapseKind::LIN;
        case SystemKind::GA: return SynapseKind::CONST;
        case SystemKind::HET: return kVariableKinds[rng.index(kVariableKinds.size())];
    }
    return SynapseKind::CONST;
}

Network create_network(SystemKind system, Rng& rng, int hidden, const NetworkParams& params,
                       const MemristorParams& memristor) {
    Network net(hidden, params, memristor);
    for (int h = 0; h < hidden; ++h)
        net.neuron(net.hidden_index(h)).polarity = rng.bernoulli(0.5) ? Polarity::Excitatory : Polarity::Inhibitory;
    for (int i = 0; i < kInputCount; ++i)
        for (int h = 0; h < hidden; ++h) add_drawn_connection(net, net.input_index(i), net.hidden_index(h), true, system, rng);
    for (int from = 1; from < hidden; ++from)
        for (int to = 0; to < from; ++to)
            add_drawn_connection(net, net.hidden_index(from), net.hidden_index(to), true, system, rng);
    for (int h = 0; h < hidden; ++h)
        for (int o = 0; o < kOutputCount; ++o)
            add_drawn_connection(net, net.hidden_index(h), net.output_index(o), true, system, rng);
    net.adaptive.mu = std::max(kAdaptiveFloor, rng.uniform(0.0, 0.25));
    net.adaptive.psi = std::max(kAdaptiveFloor, rng.uniform(0.0, 0.5));
    net.adaptive.omega = std::max(kAdaptiveFloor, rng.uniform(0.0, 1.0));
    net.adaptive.tau = std::max(kAdaptiveFloor, rng.uniform(0.0, 0.25));
    return net;
}

std::size_t select_parent(std::span<const double> fitness, Rng& rng) {
    if (fitness.empty()) throw std::invalid_argument("cannot select from an empty population");
    const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
    if (!(total > 0.0)) return rng.index(fitness.size());
    const double r = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        if (fitness[i] <= 0.0) continue;
        cumulative += fitness[i];
        last_positive = i;
        if (r < cumulative) return i;
    }
    return last_positive;
}

double self_adapt(double v, double normal_draw) {
    return std::clamp(v * std::exp(normal_draw), kAdaptiveFloor, 1.0);
}

double self_adapt(double v, Rng& rng) { return self_adapt(v, rng.normal()); }

void mutate_weights(Network& net, double mu, Rng& rng) {
    for (int i = 0; i < static_cast<int>(net.connections().size()); ++i) {
        const auto& conn = net.connections()[i];
        if (conn.kind != SynapseKind::CONST || !conn.enabled) continue;
        if (rng.bernoulli(mu)) net.connection(i).weight = rng.uniform();
    }
}

void mutate_types(Network& net, double mu, Rng& rng) {
    for (int i = 0; i < static_cast<int>(net.connections().size()); ++i) {
        const auto kind = net.connections()[i].kind;
        if (!is_variable(kind) || !rng.bernoulli(mu)) continue;
        std::array<SynapseKind, 2> others{};
        std::size_t n = 0;
        for (auto k : kVariableKinds)
            if (k != kind) others[n++] = k;
        auto& conn = net.connection(i);
        conn.kind = others[rng.bernoulli(0.5) ? 0 : 1];
        reset_connection(conn, net.memristor());
    }
}

void node_event(Network& net, double psi, double omega, SystemKind system, Rng& rng) {
    if (!rng.bernoulli(psi)) return;
    if (rng.bernoulli(omega)) {
        const Polarity polarity = rng.bernoulli(0.5) ? Polarity::Excitatory : Polarity::Inhibitory;
        const int existing = net.hidden_count();
        const int added = net.add_hidden(polarity);
        for (int i = 0; i < kInputCount; ++i) {
            const bool enabled = rng.bernoulli(0.5);
            add_drawn_connection(net, net.input_index(i), added, enabled, system, rng);
        }
        for (int h = 0; h < existing; ++h) {
            const bool enabled = rng.bernoulli(0.5);
            add_drawn_connection(net, added, net.hidden_index(h), enabled, system, rng);
        }
        for (int o = 0; o < kOutputCount; ++o) {
            const bool enabled = rng.bernoulli(0.5);
            add_drawn_connection(net, added, net.output_index(o), enabled, system, rng);
        }
        return;
    }
    if (net.hidden_count() <= 1) return;
    net.remove_hidden(static_cast<int>(rng.index(net.hidden_count())));
}

void connection_event(Network& net, double tau, SystemKind system, Rng& rng) {
    for (int i = 0; i < static_cast<int>(net.connections().size()); ++i) {
        if (!rng.bernoulli(tau)) continue;
        auto& conn = net.connection(i);
        conn.enabled = !conn.enabled;
        if (!conn.enabled) continue;
        if (system == SystemKind::HET) conn.kind = draw_connection_kind(system, rng);
        if (conn.kind == SynapseKind::CONST)
            conn.weight = rng.uniform();
        else
            reset_connection(conn, net.memristor());
    }
}

double Population::best_fitness() const {
    double best = 0.0;
    for (const auto& m : members) best = std::max(best, m.net.fitness);
    return best;
}

double Population::mean_fitness() const {
    if (members.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& m : members) sum += m.net.fitness;
    return sum / static_cast<double>(members.size());
}

std::size_t Population::best_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i)
        if (members[i].net.fitness > members[best].net.fitness) best = i;
    return best;
}

Population initialize_population(SystemKind system, int size, std::uint64_t seed, const Evaluator& evaluate,
                                 int jobs, int hidden, const NetworkParams& params,
                                 const MemristorParams& memristor) {
    if (size < 2) throw std::invalid_argument("population needs at least two members");
    Population pop;
    pop.system = system;
    pop.rng = Rng(seed);
    pop.members.reserve(size + 2);
    for (int i = 0; i < size; ++i)
        pop.members.push_back({create_network(system, pop.rng, hidden, params, memristor), pop.next_birth++});

    std::vector<Evaluation> results(size);
    parallel_for(size, jobs, [&](std::size_t i) { results[i] = evaluate(pop.members[i].net, i); });
    pop.evaluations = size;
    for (int i = 0; i < size; ++i) {
        pop.members[i].net.fitness = results[i].fitness;
        if (results[i].solved) pop.first_solved = 0;
    }
    return pop;
}

void ga_cycle(Population& pop, const Evaluator& evaluate, int jobs) {
    if (pop.members.empty()) throw std::invalid_argument("cannot run a generation on an empty population");
    std::vector<double> fitness;
    fitness.reserve(pop.members.size());
    for (const auto& m : pop.members) fitness.push_back(m.net.fitness);

    Rng& rng = pop.rng;
    const std::size_t first = select_parent(fitness, rng);
    const std::size_t second = select_parent(fitness, rng);
    std::array<Network, 2> offspring{pop.members[first].net, pop.members[second].net};
    for (auto& child : offspring) {
        auto& sa = child.adaptive;
        sa.mu = self_adapt(sa.mu, rng);
        sa.psi = self_adapt(sa.psi, rng);
        sa.omega = self_adapt(sa.omega, rng);
        sa.tau = self_adapt(sa.tau, rng);
        if (pop.system == SystemKind::GA) mutate_weights(child, sa.mu, rng);
        if (pop.system == SystemKind::HET) mutate_types(child, sa.mu, rng);
        node_event(child, sa.psi, sa.omega, pop.system, rng);
        connection_event(child, sa.tau, pop.system, rng);
    }

    std::array<Evaluation, 2> results{};
    const std::uint64_t base = pop.evaluations;
    parallel_for(2, jobs, [&](std::size_t i) { results[i] = evaluate(offspring[i], base + i); });

    pop.evaluations += 2;
    ++pop.generation;
    for (std::size_t i = 0; i < 2; ++i) {
        offspring[i].fitness = results[i].fitness;
        if (results[i].solved && pop.first_solved < 0) pop.first_solved = pop.generation;
        pop.members.push_back({std::move(offspring[i]), pop.next_birth++});
    }
    for (int removed = 0; removed < 2; ++removed) {
        auto worst = std::min_element(pop.members.begin(), pop.members.end(), [](const Member& a, const Member& b) {
            if (a.net.fitness != b.net.fitness) return a.net.fitness < b.net.fitness;
            return a.birth < b.birth;
        });
        pop.members.erase(worst);
    }
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace memevo
