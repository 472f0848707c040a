#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "memevo/arena.hpp"
#include "memevo/network.hpp"

namespace memevo {

enum class Scenario { Static, Dynamic };

std::string_view to_string(Scenario scenario);
Scenario scenario_from_string(std::string_view name);

/// One row of a trajectory log.
struct TimestepRecord {
    int timestep = 0;
    Pose pose;
    Action action = Action::Forward;
    /// Static: fitness_step at this timestep. Dynamic: rewards collected so far.
    double f = 0.0;
    StdpCounts stdp;
    /// Mean weight of enabled HP, PEO, LIN connections (NaN when the kind is absent).
    std::array<double, 3> mean_weight{};
};

struct TrialResult {
    double fitness = 0.0;
    int st = 0;
    int timesteps = 0;
    /// Goal flags for phase 1 (x + y >= 1.6) and phase 2 (y - x >= 1.6, dynamic only).
    std::array<bool, 2> goals{};
    std::vector<TimestepRecord> log;

    /// Static: the goal was reached. Dynamic: both rewards were collected.
    bool solved(Scenario scenario) const { return scenario == Scenario::Static ? goals[0] : goals[1]; }
};

/// Runs one trial from a freshly reset network state. The static scenario is noiseless and
/// ends at the goal; the dynamic scenario adds sensor noise and slippage, relocates the
/// reward after the first goal without resetting the network, and scores 0, 1 or 2.
/// `seed` drives every stochastic element of the trial.
TrialResult run_trial(Network& net, const ArenaConfig& arena, Scenario scenario, std::uint64_t seed,
                      bool record_log = false);

/// Per-kind mean weight over enabled connections (NaN if none).
std::array<double, 3> mean_variable_weights(const Network& net);

inline constexpr const char* kTrajectorySchema = "memevo.trajectory/1";

void write_trajectory_csv(std::ostream& out, const std::vector<TimestepRecord>& log);
std::vector<TimestepRecord> read_trajectory_csv(std::istream& in);

}  // namespace memevo
