#include "memevo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "memevo/analysis.hpp"
#include "memevo/config.hpp"
#include "memevo/io.hpp"
#include "memevo/network_json.hpp"
#include "memevo/population_json.hpp"
#include "memevo/stats.hpp"

namespace memevo {

RunConfig RunConfig::paper() { return RunConfig{}; }

RunConfig RunConfig::desk() {
    RunConfig cfg;
    cfg.population = 40;
    cfg.generations = 300;
    cfg.snapshot_interval = 20;
    cfg.repeats = 10;
    return cfg;
}

void RunConfig::validate() const {
    if (population < 2) throw std::invalid_argument("population must be at least 2");
    if (generations < 0) throw std::invalid_argument("generations must be non-negative");
    if (snapshot_interval < 1) throw std::invalid_argument("snapshot interval must be at least 1");
    if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    if (initial_hidden < 1) throw std::invalid_argument("initial hidden count must be at least 1");
    snn.validate();
    memristor.validate();
    arena.validate();
}

GenerationSnapshot take_snapshot(const Population& pop, int repeat) {
    GenerationSnapshot s;
    s.repeat = repeat;
    s.generation = pop.generation;
    s.best_fitness = pop.best_fitness();
    s.mean_fitness = pop.mean_fitness();
    s.solved = pop.first_solved >= 0;
    const double n = static_cast<double>(pop.members.size());
    for (const auto& m : pop.members) {
        s.neurons += connected_neurons(m.net);
        s.connectivity += connectivity_percent(m.net);
        s.adaptive.mu += m.net.adaptive.mu;
        s.adaptive.psi += m.net.adaptive.psi;
        s.adaptive.omega += m.net.adaptive.omega;
        s.adaptive.tau += m.net.adaptive.tau;
    }
    if (n > 0) {
        s.neurons /= n;
        s.connectivity /= n;
        s.adaptive.mu /= n;
        s.adaptive.psi /= n;
        s.adaptive.omega /= n;
        s.adaptive.tau /= n;
    }
    return s;
}

std::uint64_t repeat_seed(std::uint64_t master, int repeat) {
    return derive_seed(master, static_cast<std::uint64_t>(repeat));
}

std::uint64_t trial_seed(std::uint64_t rseed, std::uint64_t eval_index) { return derive_seed(rseed, eval_index + 1); }

Evaluator make_evaluator(const RunConfig& cfg, std::uint64_t rseed) {
    const ArenaConfig arena = cfg.arena;
    const Scenario scenario = cfg.scenario;
    return [arena, scenario, rseed](Network& net, std::uint64_t eval_index) {
        net.reset_state();
        const auto trial = run_trial(net, arena, scenario, trial_seed(rseed, eval_index));
        net.reset_state();
        return Evaluation{trial.fitness, trial.solved(scenario)};
    };
}

int performance_metric(const Population& pop, int generations) {
    return pop.first_solved >= 0 ? pop.first_solved : generations + 1;
}

namespace {

void finish_repeat(const RunConfig& cfg, RepeatResult& result) {
    auto& pop = result.population;
    result.performance = performance_metric(pop, cfg.generations);
    result.final_state = take_snapshot(pop, result.repeat);
    Network best = pop.members.at(pop.best_index()).net;
    best.reset_state();
    result.best_trial = run_trial(best, cfg.arena, cfg.scenario, trial_seed(result.seed, pop.evaluations), true);
}

}  // namespace

RepeatResult continue_repeat(const RunConfig& cfg, int repeat, Population pop, int jobs) {
    cfg.validate();
    RepeatResult result;
    result.repeat = repeat;
    result.seed = repeat_seed(cfg.seed, repeat);
    const Evaluator evaluate = make_evaluator(cfg, result.seed);
    while (pop.generation < cfg.generations) {
        ga_cycle(pop, evaluate, jobs);
        if (pop.generation % cfg.snapshot_interval == 0 || pop.generation == cfg.generations)
            result.snapshots.push_back(take_snapshot(pop, repeat));
    }
    result.population = std::move(pop);
    finish_repeat(cfg, result);
    return result;
}

RepeatResult run_repeat(const RunConfig& cfg, int repeat, int jobs) {
    cfg.validate();
    const std::uint64_t rseed = repeat_seed(cfg.seed, repeat);
    Population pop = initialize_population(cfg.system, cfg.population, derive_seed(rseed, 0),
                                           make_evaluator(cfg, rseed), jobs, cfg.initial_hidden, cfg.snn,
                                           cfg.memristor);
    const auto first = take_snapshot(pop, repeat);
    RepeatResult result = continue_repeat(cfg, repeat, std::move(pop), jobs);
    result.snapshots.insert(result.snapshots.begin(), first);
    return result;
}

namespace {

std::ostringstream csv_stream() {
    std::ostringstream os;
    os.precision(17);
    return os;
}

std::string repeat_tag(int repeat) {
    std::ostringstream os;
    os << 'r' << std::setw(2) << std::setfill('0') << repeat;
    return os.str();
}

std::string manifest_text(const RunConfig& cfg, const std::string& status, const std::vector<std::string>& files) {
    std::ostringstream os;
    os << "# schema: " << kManifestSchema << '\n';
    os << "status=" << status << '\n';
    os << "system=" << to_string(cfg.system) << '\n';
    os << "scenario=" << to_string(cfg.scenario) << '\n';
    os << "seed=" << cfg.seed << '\n';
    os << "repeats=" << cfg.repeats << '\n';
    for (const auto& f : files) os << "file=" << f << '\n';
    return os.str();
}

void write_snapshot_row(std::ostream& os, const GenerationSnapshot& s) {
    os << s.repeat << ',' << s.generation << ',' << s.best_fitness << ',' << s.mean_fitness << ',' << s.neurons
       << ',' << s.connectivity << ',' << s.adaptive.mu << ',' << s.adaptive.psi << ',' << s.adaptive.omega << ','
       << s.adaptive.tau << ',' << (s.solved ? 1 : 0) << '\n';
}

}  // namespace

void write_snapshots_csv(std::ostream& out, const std::vector<RepeatResult>& repeats) {
    auto os = csv_stream();
    os << "# schema: " << kSnapshotSchema << '\n';
    os << "repeat,generation,best_f,mean_f,neurons,connectivity_pct,mu,psi,omega,tau,solved\n";
    for (const auto& r : repeats)
        for (const auto& s : r.snapshots) write_snapshot_row(os, s);
    out << os.str();
}

void write_summary_csv(std::ostream& out, const std::vector<RepeatResult>& repeats) {
    auto os = csv_stream();
    os << "# schema: " << kSummarySchema << '\n';
    os << "repeat,seed,performance,high_fitness,mean_fitness,neurons,connectivity_pct,mu,psi,omega,tau,solved\n";
    for (const auto& r : repeats) {
        const auto& s = r.final_state;
        os << r.repeat << ',' << r.seed << ',' << r.performance << ',' << s.best_fitness << ',' << s.mean_fitness
           << ',' << s.neurons << ',' << s.connectivity << ',' << s.adaptive.mu << ',' << s.adaptive.psi << ','
           << s.adaptive.omega << ',' << s.adaptive.tau << ',' << (s.solved ? 1 : 0) << '\n';
    }
    out << os.str();
}

ExperimentResult run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir, int jobs,
                                std::function<void(const std::string&)> progress) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> files{"config.txt"};
    write_file_atomic(out_dir / "manifest.txt", manifest_text(cfg, "partial", files));
    write_file_atomic(out_dir / "config.txt", config_to_text(cfg));

    ExperimentResult result;
    result.repeats.resize(static_cast<std::size_t>(cfg.repeats));
    std::mutex log_mutex;
    try {
        parallel_for(result.repeats.size(), jobs, [&](std::size_t i) {
            const int repeat = static_cast<int>(i);
            RepeatResult r = run_repeat(cfg, repeat, 1);
            const std::string tag = repeat_tag(repeat);
            write_file_atomic(out_dir / ("population_" + tag + ".json"),
                              population_to_json(r.population).dump(1) + '\n');
            const auto& best = r.population.members.at(r.population.best_index()).net;
            write_file_atomic(out_dir / ("best_" + tag + ".json"), network_to_json(best).dump(1) + '\n');
            std::ostringstream traj;
            write_trajectory_csv(traj, r.best_trial.log);
            write_file_atomic(out_dir / ("best_" + tag + "_trajectory.csv"), traj.str());
            std::ostringstream census;
            write_census_csv(census, topology_census(best));
            write_file_atomic(out_dir / ("best_" + tag + "_census.csv"), census.str());
            if (progress) {
                std::lock_guard lock(log_mutex);
                std::ostringstream msg;
                msg << "repeat " << repeat << ": performance " << r.performance << ", best fitness "
                    << r.final_state.best_fitness;
                progress(msg.str());
            }
            result.repeats[i] = std::move(r);
        });
    } catch (...) {
        // Artifacts already written stay in place.
        try {
            write_file_atomic(out_dir / "manifest.txt", manifest_text(cfg, "failed", files));
        } catch (...) {
        }
        throw;
    }

    std::ostringstream snaps;
    write_snapshots_csv(snaps, result.repeats);
    write_file_atomic(out_dir / "snapshots.csv", snaps.str());
    std::ostringstream summary;
    write_summary_csv(summary, result.repeats);
    write_file_atomic(out_dir / "summary.csv", summary.str());

    files.push_back("snapshots.csv");
    files.push_back("summary.csv");
    for (int i = 0; i < cfg.repeats; ++i) {
        const std::string tag = repeat_tag(i);
        files.push_back("population_" + tag + ".json");
        files.push_back("best_" + tag + ".json");
        files.push_back("best_" + tag + "_trajectory.csv");
        files.push_back("best_" + tag + "_census.csv");
    }
    write_file_atomic(out_dir / "manifest.txt", manifest_text(cfg, "complete", files));
    return result;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_number(const std::string& s, const std::filesystem::path& file) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(file.string() + ": bad number '" + s + "'");
    }
}

}  // namespace

RunSummary load_run_summary(const std::filesystem::path& run_dir) {
    const auto manifest_path = run_dir / "manifest.txt";
    const auto summary_path = run_dir / "summary.csv";
    if (!std::filesystem::is_directory(run_dir)) throw std::invalid_argument("not a run directory: " + run_dir.string());
    if (!std::filesystem::exists(manifest_path) || !std::filesystem::exists(summary_path))
        throw std::invalid_argument("run directory lacks manifest.txt or summary.csv: " + run_dir.string());

    RunSummary run;
    run.name = run_dir.filename().string();
    if (run.name.empty()) run.name = run_dir.parent_path().filename().string();

    std::istringstream manifest(read_file(manifest_path));
    std::string line;
    std::string status;
    while (std::getline(manifest, line)) {
        const auto eq = line.find('=');
        if (line.empty() || line.front() == '#' || eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "system") run.system = value;
        if (key == "scenario") run.scenario = value;
        if (key == "status") status = value;
    }
    if (status != "complete") throw std::invalid_argument("run is not complete: " + run_dir.string());

    std::istringstream summary(read_file(summary_path));
    std::map<std::string, std::size_t> column;
    while (std::getline(summary, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto cells = split_csv(line);
        if (column.empty()) {
            for (std::size_t i = 0; i < cells.size(); ++i) column[cells[i]] = i;
            for (const char* name : {"performance", "high_fitness", "neurons", "connectivity_pct"})
                if (!column.count(name))
                    throw std::runtime_error(summary_path.string() + ": missing column " + name);
            continue;
        }
        if (cells.size() != column.size()) throw std::runtime_error(summary_path.string() + ": ragged row");
        run.performance.push_back(parse_number(cells[column["performance"]], summary_path));
        run.high_fitness.push_back(parse_number(cells[column["high_fitness"]], summary_path));
        run.neurons.push_back(parse_number(cells[column["neurons"]], summary_path));
        run.connectivity.push_back(parse_number(cells[column["connectivity_pct"]], summary_path));
    }
    return run;
}

std::string comparison_report(const std::vector<RunSummary>& runs) {
    if (runs.size() < 2) throw std::invalid_argument("comparison needs at least two runs");
    for (const auto& r : runs)
        if (r.scenario != runs.front().scenario)
            throw std::invalid_argument("runs use different scenarios: " + runs.front().scenario + " vs " +
                                        r.scenario);

    using Metric = std::vector<double> RunSummary::*;
    const std::pair<const char*, Metric> metrics[] = {{"Performance", &RunSummary::performance},
                                                      {"High fitness", &RunSummary::high_fitness},
                                                      {"Neurons", &RunSummary::neurons},
                                                      {"Connectivity", &RunSummary::connectivity}};

    std::ostringstream os;
    os << std::fixed;
    os << "Scenario: " << runs.front().scenario << "\n\n";
    os << std::left << std::setw(20) << "Run" << std::setw(8) << "System" << std::setw(6) << "n";
    for (const auto& [name, _] : metrics) os << std::setw(22) << name;
    os << '\n';
    for (const auto& r : runs) {
        os << std::setw(20) << r.name << std::setw(8) << r.system << std::setw(6) << r.performance.size();
        for (const auto& [_, field] : metrics) {
            const auto& v = r.*field;
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(1) << mean(v) << " (" << stddev(v) << ")";
            os << std::setw(22) << cell.str();
        }
        os << '\n';
    }

    os << "\nWelch t-test p-values\n";
    os << std::setw(42) << "Pair";
    for (const auto& [name, _] : metrics) os << std::setw(14) << name;
    os << '\n';
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = i + 1; j < runs.size(); ++j) {
            os << std::setw(42) << (runs[i].name + " vs " + runs[j].name);
            for (const auto& [_, field] : metrics) {
                const auto& a = runs[i].*field;
                const auto& b = runs[j].*field;
                std::ostringstream cell;
                if (a.size() < 2 || b.size() < 2)
                    cell << "n/a";
                else
                    cell << std::setprecision(4) << std::fixed << welch_t_test(a, b).p;
                os << std::setw(14) << cell.str();
            }
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace memevo
