#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "memevo/config.hpp"
#include "memevo/io.hpp"

using namespace memevo;
namespace fs = std::filesystem;

TEST_CASE("config text round trip") {
    RunConfig cfg = RunConfig::desk();
    cfg.system = SystemKind::HET;
    cfg.scenario = Scenario::Dynamic;
    cfg.seed = 18446744073709551615ULL;
    cfg.snn.a = 0.1 + 0.2;
    cfg.arena.sensor_bearings[1] = 0.174532925199;
    const auto text = config_to_text(cfg);
    const RunConfig back = parse_config(text);
    CHECK(config_to_text(back) == text);
    CHECK(back.seed == cfg.seed);
    CHECK(back.snn.a == cfg.snn.a);
    CHECK(back.system == SystemKind::HET);
    CHECK(config_keys().size() >= 40);
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config("# comment\n\n  snn.a = 0.25 \nrun.system=PEO\nmem.mem_lifetime=500\n");
    CHECK(cfg.snn.a == 0.25);
    CHECK(cfg.system == SystemKind::PEO);
    CHECK(cfg.memristor.mem_lifetime == 500);
    CHECK(get_setting(cfg, "snn.a") == "0.25");
    CHECK_THROWS_WITH_AS(parse_config("snn.z=1\n"), doctest::Contains("line 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("snn.a=abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("snn.a=1.0x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("run.population=2.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("snn.a\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("snn.a=nan\n"), std::invalid_argument);
}

namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string(MEMEVO_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("command-line exit codes and outputs") {
    const auto dir = fs::temp_directory_path() / ("memevo_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto d = dir.string();

    CHECK(cli("--help") == 0);
    CHECK(cli("") == 2);
    CHECK(cli("run --system foo --out " + d + "/x") == 2);
    CHECK(cli("run --system ga --scenario windy --out " + d + "/x") == 2);
    CHECK(cli("run --system ga --profile huge --out " + d + "/x") == 2);
    CHECK(cli("run --system ga --set snn.nope=1 --out " + d + "/x") == 2);
    CHECK(cli("compare --runs " + d + "/missing " + d) == 2);
    CHECK(cli("census --network " + d + "/missing.json") == 2);

    CHECK(cli("characterize --out " + d + "/device.csv") == 0);
    CHECK(read_file(dir / "device.csv").rfind("# schema: memevo.device/1\n", 0) == 0);

    const std::string small = " --profile desk --repeats 2 --generations 2 --population 4 --set arena.max_timesteps=100 --quiet";
    REQUIRE(cli("run --system het --seed 3 --out " + d + "/het" + small) == 0);
    REQUIRE(cli("run --system ga --seed 3 --out " + d + "/ga --jobs 2" + small) == 0);
    CHECK(cli("compare --runs " + d + "/het " + d + "/ga --out " + d + "/report.txt") == 0);
    CHECK(cli("compare --runs " + d + "/het") == 2);
    CHECK(cli("census --network " + d + "/het/best_r00.json --out " + d + "/census.csv") == 0);
    CHECK(cli("replay --network " + d + "/het/best_r01.json --seed 9 --out " + d + "/replay.csv") == 0);
    CHECK(cli("trace --log " + d + "/replay.csv --out " + d + "/trace.csv") == 0);
    CHECK(read_file(dir / "trace.csv").rfind("# schema: memevo.trace/1\n", 0) == 0);

    ::setenv("MEMEVO_OUT", d.c_str(), 1);
    CHECK(cli("run --system lin --seed 4" + small) == 0);
    CHECK(fs::exists(dir / "lin_static_desk_s4" / "summary.csv"));
    ::unsetenv("MEMEVO_OUT");
    CHECK(cli("run --system lin --seed 4" + small) == 2);
    fs::remove_all(dir);
}
