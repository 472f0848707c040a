#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "memevo/analysis.hpp"
#include "memevo/config.hpp"
#include "memevo/harness.hpp"
#include "memevo/io.hpp"
#include "memevo/network_json.hpp"
#include "memevo/trial.hpp"

namespace fs = std::filesystem;
using namespace memevo;

namespace {

constexpr int kUsageError = 2;

const char* kSchemas = R"(Output files (each begins with a "# schema: <name>" comment line):
  memevo.snapshots/1   repeat,generation,best_f,mean_f,neurons,connectivity_pct,mu,psi,omega,tau,solved
  memevo.summary/1     repeat,seed,performance,high_fitness,mean_fitness,neurons,connectivity_pct,
                       mu,psi,omega,tau,solved
  memevo.trajectory/1  timestep,x,y,heading,action,f,pos_stdp_hp,neg_stdp_hp,pos_stdp_peo,neg_stdp_peo,
                       pos_stdp_lin,neg_stdp_lin,mean_w_hp,mean_w_peo,mean_w_lin
  memevo.census/1      kind,total,input_hidden,hidden_hidden,hidden_output,pre_excitatory,
                       pre_inhibitory,post_excitatory,post_inhibitory,from_light,from_ir
  memevo.device/1      kind,step,q,M,W
  memevo.trace/1       timestep,mean_w_hp,mean_w_peo,mean_w_lin,pos_stdp_hp,pos_stdp_peo,pos_stdp_lin,
                       neg_stdp_hp,neg_stdp_peo,neg_stdp_lin
  memevo.manifest/1    key=value lines: status (partial|failed|complete), system, scenario, seed,
                       repeats, file=<artifact>
Networks and populations are JSON documents carrying a "schema" field.
Exit status: 0 on success, 2 on invalid usage or input, 1 on other failures.)";

int default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

/// Writes to `path`, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file_atomic(path, content);
}

Network load_network(const std::string& path) { return network_from_json(nlohmann::json::parse(read_file(path))); }

const std::vector<std::string> kSystems{"hp", "peo", "lin", "ga", "het"};
const std::vector<std::string> kScenarios{"static", "dynamic"};

struct RunArgs {
    std::string system;
    std::string scenario = "static";
    std::string profile = "paper";
    std::uint64_t seed = 1;
    std::string out;
    int jobs = default_jobs();
    std::string config;
    std::vector<std::string> settings;
    int repeats = 0;
    int generations = -1;
    int population = 0;
    bool quiet = false;
};

int cmd_run(const RunArgs& a) {
    RunConfig cfg = a.profile == "desk" ? RunConfig::desk() : RunConfig::paper();
    if (!a.config.empty()) cfg = parse_config(read_file(a.config), cfg);
    cfg.system = system_kind_from_string(a.system);
    cfg.scenario = scenario_from_string(a.scenario);
    cfg.seed = a.seed;
    if (a.repeats > 0) cfg.repeats = a.repeats;
    if (a.generations >= 0) cfg.generations = a.generations;
    if (a.population > 0) cfg.population = a.population;
    for (const auto& s : a.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    cfg.validate();

    fs::path out = a.out;
    if (out.empty()) {
        const char* root = std::getenv("MEMEVO_OUT");
        if (!root || !*root) throw std::invalid_argument("no --out given and MEMEVO_OUT is not set");
        std::ostringstream name;
        name << to_string(cfg.system) << '_' << to_string(cfg.scenario) << '_' << a.profile << "_s" << cfg.seed;
        out = fs::path(root) / name.str();
    }
    auto progress = [&](const std::string& msg) {
        if (!a.quiet) std::cerr << msg << '\n';
    };
    run_experiment(cfg, out, a.jobs, progress);
    if (!a.quiet) std::cerr << "wrote " << out.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolution of spiking networks with memristive synapses for a simulated robot"};
    app.footer(kSchemas);
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Evolve a population and write a run directory");
    run_cmd->add_option("--system", run.system, "hp, peo, lin, ga or het")
        ->required()
        ->check(CLI::IsMember(kSystems, CLI::ignore_case));
    run_cmd->add_option("--scenario", run.scenario, "static or dynamic")
        ->check(CLI::IsMember(kScenarios, CLI::ignore_case));
    run_cmd->add_option("--profile", run.profile, "paper (100 x 1000 x 30) or desk (40 x 300 x 10)")
        ->check(CLI::IsMember({"paper", "desk"}));
    run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_option("--out", run.out, "Run directory (default: $MEMEVO_OUT/<system>_<scenario>_<profile>_s<seed>)");
    run_cmd->add_option("--jobs", run.jobs, "Repeats evaluated in parallel")->check(CLI::PositiveNumber);
    run_cmd->add_option("--config", run.config, "key=value configuration file")->check(CLI::ExistingFile);
    run_cmd->add_option("--set", run.settings, "Override one configuration key (key=value)");
    run_cmd->add_option("--repeats", run.repeats, "Override the repeat count")->check(CLI::PositiveNumber);
    run_cmd->add_option("--generations", run.generations, "Override the generation count")
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--population", run.population, "Override the population size")->check(CLI::Range(2, 1 << 20));
    run_cmd->add_flag("--quiet", run.quiet, "No progress messages");

    std::string char_out;
    int char_events = 1000;
    auto* char_cmd = app.add_subcommand("characterize", "Sweep each device with synthetic STDP events");
    char_cmd->add_option("--out", char_out, "CSV file (default: stdout)");
    char_cmd->add_option("--events", char_events, "Positive (then negative) events per kind")
        ->check(CLI::NonNegativeNumber);

    std::string census_net, census_out;
    auto* census_cmd = app.add_subcommand("census", "Count enabled connections of a network by kind");
    census_cmd->add_option("--network", census_net, "Network JSON")->required()->check(CLI::ExistingFile);
    census_cmd->add_option("--out", census_out, "CSV file (default: stdout)");

    std::string trace_log, trace_out;
    int trace_window = 10;
    auto* trace_cmd = app.add_subcommand("trace", "Moving averages of weights and STDP events over a trajectory");
    trace_cmd->add_option("--log", trace_log, "Trajectory CSV")->required()->check(CLI::ExistingFile);
    trace_cmd->add_option("--window", trace_window, "Window in timesteps")->check(CLI::PositiveNumber);
    trace_cmd->add_option("--out", trace_out, "CSV file (default: stdout)");

    std::vector<std::string> compare_runs;
    std::string compare_out;
    auto* compare_cmd = app.add_subcommand("compare", "Compare run directories with Welch t-tests");
    compare_cmd->add_option("--runs", compare_runs, "Two or more run directories")
        ->required()
        ->check(CLI::ExistingDirectory);
    compare_cmd->add_option("--out", compare_out, "Report file (default: stdout)");

    std::string replay_net, replay_out, replay_config;
    std::string replay_scenario = "static";
    std::uint64_t replay_seed = 1;
    auto* replay_cmd = app.add_subcommand("replay", "Run one logged trial of a saved network");
    replay_cmd->add_option("--network", replay_net, "Network JSON")->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--scenario", replay_scenario, "static or dynamic")
        ->check(CLI::IsMember(kScenarios, CLI::ignore_case));
    replay_cmd->add_option("--seed", replay_seed, "Trial seed");
    replay_cmd->add_option("--config", replay_config, "key=value configuration (arena.* keys apply)")
        ->check(CLI::ExistingFile);
    replay_cmd->add_option("--out", replay_out, "Trajectory CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*run_cmd) return cmd_run(run);

        if (*char_cmd) {
            std::ostringstream os;
            write_device_csv(os, characterize(MemristorParams{}, char_events));
            emit(char_out, os.str());
        } else if (*census_cmd) {
            std::ostringstream os;
            write_census_csv(os, topology_census(load_network(census_net)));
            emit(census_out, os.str());
        } else if (*trace_cmd) {
            std::istringstream in(read_file(trace_log));
            const auto log = read_trajectory_csv(in);
            if (log.empty()) throw std::invalid_argument("trajectory log is empty");
            std::ostringstream os;
            write_trace_csv(os, stdp_trace(log, trace_window));
            emit(trace_out, os.str());
        } else if (*compare_cmd) {
            std::vector<RunSummary> runs;
            for (const auto& dir : compare_runs) runs.push_back(load_run_summary(dir));
            emit(compare_out, comparison_report(runs));
        } else if (*replay_cmd) {
            RunConfig cfg;
            if (!replay_config.empty()) cfg = parse_config(read_file(replay_config), cfg);
            cfg.arena.validate();
            Network net = load_network(replay_net);
            const Scenario scenario = scenario_from_string(replay_scenario);
            const auto trial = run_trial(net, cfg.arena, scenario, replay_seed, true);
            std::ostringstream os;
            write_trajectory_csv(os, trial.log);
            emit(replay_out, os.str());
            std::cerr << "fitness " << trial.fitness << ", timesteps " << trial.timesteps << ", solved "
                      << (trial.solved(scenario) ? "yes" : "no") << '\n';
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
