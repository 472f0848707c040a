#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "memevo/config.hpp"
#include "memevo/harness.hpp"
#include "memevo/io.hpp"
#include "memevo/population_json.hpp"

using namespace memevo;
namespace fs = std::filesystem;

namespace {

RunConfig tiny(SystemKind system = SystemKind::HET) {
    RunConfig cfg = RunConfig::desk();
    cfg.system = system;
    cfg.population = 6;
    cfg.generations = 7;
    cfg.snapshot_interval = 3;
    cfg.repeats = 3;
    cfg.seed = 5;
    cfg.arena.max_timesteps = 150;
    return cfg;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("memevo_harness_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("profiles") {
    const auto paper = RunConfig::paper();
    CHECK(paper.population == 100);
    CHECK(paper.generations == 1000);
    CHECK(paper.snapshot_interval == 20);
    CHECK(paper.repeats == 30);
    const auto desk = RunConfig::desk();
    CHECK(desk.population == 40);
    CHECK(desk.generations == 300);
    CHECK(desk.repeats == 10);
    RunConfig bad = desk;
    bad.population = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("seed splitting is documented and stable") {
    CHECK(repeat_seed(1, 0) == derive_seed(1, 0));
    CHECK(repeat_seed(1, 0) != repeat_seed(1, 1));
    CHECK(trial_seed(7, 0) == derive_seed(7, 1));
}

TEST_CASE("zero generations gives one snapshot of the initial population") {
    RunConfig cfg = tiny();
    cfg.generations = 0;
    const auto r = run_repeat(cfg, 0);
    REQUIRE(r.snapshots.size() == 1);
    CHECK(r.snapshots[0].generation == 0);
    CHECK(r.snapshots[0].neurons == 17.0);
    CHECK(r.snapshots[0].connectivity == 100.0);
    CHECK(r.population.evaluations == 6);
}

TEST_CASE("repeat bookkeeping") {
    const RunConfig cfg = tiny();
    const auto r = run_repeat(cfg, 1);
    CHECK(r.population.evaluations == static_cast<std::uint64_t>(cfg.population + 2 * cfg.generations));
    std::vector<int> gens;
    for (const auto& s : r.snapshots) gens.push_back(s.generation);
    CHECK(gens == std::vector<int>{0, 3, 6, 7});
    for (std::size_t i = 1; i < r.snapshots.size(); ++i)
        CHECK(r.snapshots[i].best_fitness >= r.snapshots[i - 1].best_fitness);
    CHECK(r.final_state.generation == 7);
    CHECK(r.best_trial.fitness == doctest::Approx(r.final_state.best_fitness));
    CHECK(r.performance == performance_metric(r.population, cfg.generations));
}

TEST_CASE("performance metric") {
    Population pop;
    pop.first_solved = 0;
    CHECK(performance_metric(pop, 300) == 0);
    pop.first_solved = -1;
    CHECK(performance_metric(pop, 300) == 301);
    pop.first_solved = 42;
    CHECK(performance_metric(pop, 300) == 42);
}

TEST_CASE("resuming a repeat reproduces the uninterrupted run") {
    RunConfig cfg = tiny();
    const auto full = run_repeat(cfg, 2);
    RunConfig half = cfg;
    half.generations = 3;
    const auto first = run_repeat(half, 2);
    const auto restored = population_from_json(nlohmann::json::parse(population_to_json(first.population).dump()));
    const auto resumed = continue_repeat(cfg, 2, restored);
    CHECK(population_to_json(resumed.population) == population_to_json(full.population));
    REQUIRE(resumed.snapshots.size() == 2);
    CHECK(resumed.snapshots.back().best_fitness == full.snapshots.back().best_fitness);
}

TEST_CASE("run directories are complete and independent of the job count") {
    const RunConfig cfg = tiny(SystemKind::PEO);
    const auto a = scratch("a");
    const auto b = scratch("b");
    run_experiment(cfg, a, 1);
    run_experiment(cfg, b, 3);
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        REQUIRE(fs::exists(b / name));
        CHECK_MESSAGE(read_file(entry.path()) == read_file(b / name), name.string());
    }
    const auto manifest = read_file(a / "manifest.txt");
    CHECK(manifest.find("status=complete") != std::string::npos);
    CHECK(manifest.find("file=best_r02_census.csv") != std::string::npos);
    CHECK(read_file(a / "snapshots.csv").rfind("# schema: memevo.snapshots/1\n"
                                               "repeat,generation,best_f,mean_f,neurons,connectivity_pct,mu,psi,"
                                               "omega,tau,solved\n",
                                               0) == 0);
    CHECK(parse_config(read_file(a / "config.txt")).population == cfg.population);
    fs::remove_all(a.parent_path());
}

TEST_CASE("summaries and the comparison report") {
    RunConfig cfg = tiny(SystemKind::GA);
    const auto ga = scratch("ga");
    run_experiment(cfg, ga, 1);
    cfg.system = SystemKind::LIN;
    const auto lin = scratch("lin");
    run_experiment(cfg, lin, 1);

    const auto s = load_run_summary(ga);
    CHECK(s.system == "ga");
    CHECK(s.scenario == "static");
    CHECK(s.performance.size() == 3);
    CHECK(s.neurons.size() == 3);

    const auto self = comparison_report({s, s});
    CHECK(self.find("Performance") != std::string::npos);
    CHECK(self.find("High fitness") != std::string::npos);
    CHECK(self.find("Neurons") != std::string::npos);
    CHECK(self.find("Connectivity") != std::string::npos);
    const auto pline = self.substr(self.find("ga vs ga"));
    CHECK(pline.find("1.0000") != std::string::npos);

    auto other = load_run_summary(lin);
    CHECK_NOTHROW(comparison_report({s, other}));
    other.scenario = "dynamic";
    CHECK_THROWS_AS(comparison_report({s, other}), std::invalid_argument);
    CHECK_THROWS_AS(comparison_report({s}), std::invalid_argument);
    CHECK_THROWS_AS(load_run_summary(ga / "missing"), std::invalid_argument);
    fs::remove_all(ga.parent_path());
}

TEST_CASE("snapshot CSV rows") {
    RepeatResult r;
    GenerationSnapshot s;
    s.repeat = 4;
    s.generation = 20;
    s.best_fitness = 11800;
    s.solved = true;
    r.snapshots.push_back(s);
    std::ostringstream os;
    write_snapshots_csv(os, {r});
    CHECK(os.str().find("\n4,20,11800,0,0,0,0,0,0,0,1\n") != std::string::npos);
}
