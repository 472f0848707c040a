#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "memevo/arena.hpp"
#include "memevo/evolution.hpp"
#include "memevo/network.hpp"
#include "memevo/trial.hpp"

namespace memevo {

struct RunConfig {
    SystemKind system = SystemKind::GA;
    Scenario scenario = Scenario::Static;
    int population = 100;
    int generations = 1000;
    int snapshot_interval = 20;
    int repeats = 30;
    std::uint64_t seed = 1;
    int initial_hidden = 9;
    NetworkParams snn;
    MemristorParams memristor;
    ArenaConfig arena;

    /// Full-scale protocol: 100 networks, 1000 generations, snapshots every 20, 30 repeats.
    static RunConfig paper();
    /// Desk scale: 40 networks, 300 generations, snapshots every 20, 10 repeats.
    static RunConfig desk();

    void validate() const;
};

struct GenerationSnapshot {
    int repeat = 0;
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double neurons = 0.0;
    double connectivity = 0.0;
    SelfAdaptive adaptive;
    bool solved = false;
};

GenerationSnapshot take_snapshot(const Population& pop, int repeat);

/// Seed of repeat i: derive_seed(master, i). Within a repeat, the population stream uses
/// derive_seed(repeat_seed, 0) and evaluation k uses derive_seed(repeat_seed, k + 1).
std::uint64_t repeat_seed(std::uint64_t master, int repeat);
std::uint64_t trial_seed(std::uint64_t repeat_seed, std::uint64_t eval_index);

/// Trial evaluator for a configuration: resets the network, runs the trial and resets again.
Evaluator make_evaluator(const RunConfig& cfg, std::uint64_t repeat_seed);

struct RepeatResult {
    int repeat = 0;
    std::uint64_t seed = 0;
    std::vector<GenerationSnapshot> snapshots;
    /// First generation with a solving network, or generations + 1.
    int performance = 0;
    GenerationSnapshot final_state;
    Population population;
    /// Logged re-run of the final best network.
    TrialResult best_trial;
};

/// First solved generation, or `generations + 1` when the run never solved the task.
int performance_metric(const Population& pop, int generations);

/// Initializes, evaluates and evolves one repeat, snapshotting every interval and at the end.
RepeatResult run_repeat(const RunConfig& cfg, int repeat, int jobs = 1);

/// Continues an existing population up to cfg.generations. Snapshots cover the continued
/// generations only; the result is identical to an uninterrupted run.
RepeatResult continue_repeat(const RunConfig& cfg, int repeat, Population pop, int jobs = 1);

struct ExperimentResult {
    std::vector<RepeatResult> repeats;
};

/// Runs every repeat (in parallel up to `jobs`) and writes the run directory:
/// manifest.txt, config.txt, snapshots.csv, summary.csv and per repeat
/// population_rNN.json, best_rNN.json, best_rNN_trajectory.csv, best_rNN_census.csv.
/// The manifest reads status=partial until every artifact has been written.
ExperimentResult run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir, int jobs = 1,
                                std::function<void(const std::string&)> progress = {});

inline constexpr const char* kSnapshotSchema = "memevo.snapshots/1";
inline constexpr const char* kSummarySchema = "memevo.summary/1";
inline constexpr const char* kManifestSchema = "memevo.manifest/1";

void write_snapshots_csv(std::ostream& out, const std::vector<RepeatResult>& repeats);
void write_summary_csv(std::ostream& out, const std::vector<RepeatResult>& repeats);

/// Per-repeat metrics as read back from summary.csv.
struct RunSummary {
    std::string name;
    std::string system;
    std::string scenario;
    std::vector<double> performance;
    std::vector<double> high_fitness;
    std::vector<double> neurons;
    std::vector<double> connectivity;
};

/// Reads manifest.txt and summary.csv of a completed run directory. Throws
/// std::invalid_argument if the directory is missing or incomplete.
RunSummary load_run_summary(const std::filesystem::path& run_dir);

/// Plain-text report: per-run mean (sd) of Performance / High fitness / Neurons /
/// Connectivity, then pairwise Welch p-values. Throws std::invalid_argument when the
/// runs use different scenarios or fewer than two runs are given.
std::string comparison_report(const std::vector<RunSummary>& runs);

}  // namespace memevo
