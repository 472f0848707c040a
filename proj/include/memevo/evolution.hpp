#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "memevo/network.hpp"
#include "memevo/rng.hpp"

namespace memevo {

/// Connection regime of a whole population.
enum class SystemKind { HP, PEO, LIN, GA, HET };

std::string_view to_string(SystemKind kind);
/// Accepts lower- or upper-case names (hp, peo, lin, ga, het).
SystemKind system_kind_from_string(std::string_view name);

inline constexpr double kAdaptiveFloor = 1e-6;

/// Connection kind for a freshly created (or re-enabled) connection of this system.
SynapseKind draw_connection_kind(SystemKind system, Rng& rng);

/// Random network: `hidden` neurons each excitatory with probability 0.5, every legal
/// connection present and enabled, CONST weights uniform in [0,1], variable kinds at
/// weight 0.5, and self-adaptive parameters mu~U[0,0.25], psi~U[0,0.5], omega~U[0,1],
/// tau~U[0,0.25].
///
/// Draw order: hidden polarities; then per connection (input->hidden, hidden->hidden,
/// hidden->output, each in ascending pre then post) the kind (HET) and weight (GA);
/// then mu, psi, omega, tau.
Network create_network(SystemKind system, Rng& rng, int hidden = 9, const NetworkParams& params = {},
                       const MemristorParams& memristor = {});

/// Roulette-wheel draw proportional to fitness; uniform when all fitnesses are zero.
std::size_t select_parent(std::span<const double> fitness, Rng& rng);

/// v * exp(draw), clamped to [kAdaptiveFloor, 1].
double self_adapt(double v, double normal_draw);
double self_adapt(double v, Rng& rng);

/// Each enabled CONST connection is redrawn from U[0,1] with probability mu.
void mutate_weights(Network& net, double mu, Rng& rng);

/// Each connection switches, with probability mu, to one of the two other variable kinds
/// and restarts at weight 0.5.
void mutate_types(Network& net, double mu, Rng& rng);

/// With probability psi, adds (probability omega) or removes a hidden neuron. Removal is
/// skipped when only one hidden neuron remains.
void node_event(Network& net, double psi, double omega, SystemKind system, Rng& rng);

/// Each connection toggles enabled state with probability tau. Re-enabled connections get
/// a fresh weight (U[0,1] for CONST, 0.5 for variable kinds; HET redraws the kind).
void connection_event(Network& net, double tau, SystemKind system, Rng& rng);

struct Evaluation {
    double fitness = 0.0;
    bool solved = false;
};

/// Trial function. `eval_index` is the population-wide evaluation counter, used to
/// derive per-trial random streams independently of scheduling.
using Evaluator = std::function<Evaluation(Network&, std::uint64_t eval_index)>;

struct Member {
    Network net;
    std::uint64_t birth = 0;
};

struct Population {
    SystemKind system = SystemKind::GA;
    std::vector<Member> members;
    Rng rng;
    int generation = 0;
    std::uint64_t next_birth = 0;
    std::uint64_t evaluations = 0;
    /// First generation at which any evaluated network solved the task; -1 if none yet.
    int first_solved = -1;

    double best_fitness() const;
    double mean_fitness() const;
    std::size_t best_index() const;
};

/// Creates `size` networks and evaluates them all (generation 0).
Population initialize_population(SystemKind system, int size, std::uint64_t seed, const Evaluator& evaluate,
                                 int jobs = 1, int hidden = 9, const NetworkParams& params = {},
                                 const MemristorParams& memristor = {});

/// One steady-state generation: two fitness-proportionate parents are cloned, each clone
/// self-adapts mu/psi/omega/tau, is mutated (GA: weights, HET: types), undergoes a node
/// event then a connection event, and is evaluated; the two offspring join the population
/// and the two lowest-fitness members (oldest first on ties) are deleted.
///
/// If an evaluation throws, the members are left untouched (the random stream has already
/// advanced) and the exception propagates.
void ga_cycle(Population& pop, const Evaluator& evaluate, int jobs = 1);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Exceptions are rethrown (first index wins).
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace memevo
