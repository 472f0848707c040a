#include "memevo/trial.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "memevo/rng.hpp"

namespace memevo {

std::string_view to_string(Scenario scenario) { return scenario == Scenario::Static ? "static" : "dynamic"; }

Scenario scenario_from_string(std::string_view name) {
    if (name == "static") return Scenario::Static;
    if (name == "dynamic") return Scenario::Dynamic;
    throw std::invalid_argument("unknown scenario: " + std::string(name));
}

std::array<double, 3> mean_variable_weights(const Network& net) {
    std::array<double, 3> sum{};
    std::array<int, 3> count{};
    for (const auto& c : net.connections()) {
        if (!c.enabled || !is_variable(c.kind)) continue;
        const auto k = static_cast<std::size_t>(c.kind);
        sum[k] += c.weight;
        ++count[k];
    }
    std::array<double, 3> mean{};
    for (std::size_t k = 0; k < 3; ++k)
        mean[k] = count[k] ? sum[k] / count[k] : std::numeric_limits<double>::quiet_NaN();
    return mean;
}

namespace {

Pose start_pose(const ArenaConfig& arena, Rng& rng) {
    if (arena.start_jitter <= 0.0) return arena.start;
    const double lo = -arena.half_extent + arena.agent_radius;
    for (;;) {
        Pose p = arena.start;
        p.x += rng.uniform(-arena.start_jitter, arena.start_jitter);
        p.y += rng.uniform(-arena.start_jitter, arena.start_jitter);
        if (p.x + p.y < -1.5 && p.x >= lo && p.y >= lo) return p;
    }
}

}  // namespace

TrialResult run_trial(Network& net, const ArenaConfig& arena, Scenario scenario, std::uint64_t seed,
                      bool record_log) {
    net.reset_state();
    Rng rng(seed);
    Rng* noise = scenario == Scenario::Dynamic ? &rng : nullptr;
    Pose pose = start_pose(arena, rng);

    TrialResult result;
    int st = 0;
    int rewards = 0;
    for (int t = 1; t <= arena.max_timesteps; ++t) {
        const Senses senses = sense(pose, arena, noise);
        const Action action = net.run_timestep(senses.values);
        pose = apply_action(pose, action, arena, noise);
        ++st;
        if (bump_flags(pose, arena).any()) {
            const auto bumped = bump_interrupt(pose, st, arena);
            pose = bumped.pose;
            st = bumped.st;
        }
        result.timesteps = t;

        double f = 0.0;
        bool done = false;
        if (scenario == Scenario::Static) {
            const bool goal = pose.x + pose.y >= arena.goal_line;
            f = fitness_step(pose, st, goal, arena);
            result.fitness = std::max(result.fitness, f);
            if (goal) {
                result.goals[0] = true;
                done = true;
            }
        } else {
            if (rewards == 0 && pose.x + pose.y >= arena.goal_line) {
                rewards = 1;
                result.goals[0] = true;
            } else if (rewards == 1 && pose.y - pose.x >= arena.goal_line) {
                rewards = 2;
                result.goals[1] = true;
                done = true;
            }
            f = rewards;
            result.fitness = rewards;
        }
        if (record_log)
            result.log.push_back({t, pose, action, f, net.stdp_counts(), mean_variable_weights(net)});
        if (done) break;
    }
    result.st = st;
    return result;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TimestepRecord>& log) {
    out << "# schema: " << kTrajectorySchema << '\n';
    out << "timestep,x,y,heading,action,f,pos_stdp_hp,neg_stdp_hp,pos_stdp_peo,neg_stdp_peo,"
           "pos_stdp_lin,neg_stdp_lin,mean_w_hp,mean_w_peo,mean_w_lin\n";
    std::ostringstream row;
    row.precision(17);
    for (const auto& r : log) {
        row.str({});
        row << r.timestep << ',' << r.pose.x << ',' << r.pose.y << ',' << r.pose.heading << ','
            << to_string(r.action) << ',' << r.f;
        for (std::size_t k = 0; k < 3; ++k) row << ',' << r.stdp.positive[k] << ',' << r.stdp.negative[k];
        for (double w : r.mean_weight) {
            row << ',';
            if (std::isnan(w))
                row << "nan";
            else
                row << w;
        }
        out << row.str() << '\n';
    }
}

namespace {

Action action_from_string(const std::string& s) {
    if (s == "forward") return Action::Forward;
    if (s == "left") return Action::LeftTurn;
    if (s == "right") return Action::RightTurn;
    throw std::invalid_argument("unknown action: " + s);
}

}  // namespace

std::vector<TimestepRecord> read_trajectory_csv(std::istream& in) {
    std::vector<TimestepRecord> log;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("timestep,", 0) != 0) throw std::invalid_argument("trajectory CSV: missing header");
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 15) throw std::invalid_argument("trajectory CSV: expected 15 columns");
        TimestepRecord r;
        r.timestep = std::stoi(cells[0]);
        r.pose = {std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3])};
        r.action = action_from_string(cells[4]);
        r.f = std::stod(cells[5]);
        for (std::size_t k = 0; k < 3; ++k) {
            r.stdp.positive[k] = std::stoi(cells[6 + 2 * k]);
            r.stdp.negative[k] = std::stoi(cells[7 + 2 * k]);
        }
        for (std::size_t k = 0; k < 3; ++k)
            r.mean_weight[k] = cells[12 + k] == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(cells[12 + k]);
        log.push_back(r);
    }
    return log;
}

}  // namespace memevo
