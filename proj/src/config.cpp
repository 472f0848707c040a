#include "memevo/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <system_error>

namespace memevo {

namespace {

std::string format_value(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("cannot format value");
    return {buf, end};
}

std::string format_value(int v) { return std::to_string(v); }
std::string format_value(std::uint64_t v) { return std::to_string(v); }

template <class T>
T parse_value(std::string_view key, std::string_view text) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || end != last || text.empty())
        throw std::invalid_argument("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value))
            throw std::invalid_argument("non-finite value for " + std::string(key));
    }
    return value;
}

struct Entry {
    std::string key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, std::string_view)> set;
};

template <class T, class Ref>
Entry field(std::string key, Ref ref) {
    Entry e;
    e.key = key;
    e.get = [ref](const RunConfig& c) { return format_value(ref(const_cast<RunConfig&>(c))); };
    e.set = [ref, key](RunConfig& c, std::string_view v) { ref(c) = parse_value<T>(key, v); };
    return e;
}

#define MEMEVO_FIELD(T, key, expr) field<T>(key, [](RunConfig& c) -> T& { return expr; })

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = [] {
        std::vector<Entry> t;
        t.push_back({"run.system", [](const RunConfig& c) { return std::string(to_string(c.system)); },
                     [](RunConfig& c, std::string_view v) { c.system = system_kind_from_string(v); }});
        t.push_back({"run.scenario", [](const RunConfig& c) { return std::string(to_string(c.scenario)); },
                     [](RunConfig& c, std::string_view v) { c.scenario = scenario_from_string(v); }});
        t.push_back(MEMEVO_FIELD(int, "run.population", c.population));
        t.push_back(MEMEVO_FIELD(int, "run.generations", c.generations));
        t.push_back(MEMEVO_FIELD(int, "run.snapshot_interval", c.snapshot_interval));
        t.push_back(MEMEVO_FIELD(int, "run.repeats", c.repeats));
        t.push_back(MEMEVO_FIELD(std::uint64_t, "run.seed", c.seed));
        t.push_back(MEMEVO_FIELD(int, "run.initial_hidden", c.initial_hidden));

        t.push_back(MEMEVO_FIELD(double, "snn.a", c.snn.a));
        t.push_back(MEMEVO_FIELD(double, "snn.b", c.snn.b));
        t.push_back(MEMEVO_FIELD(double, "snn.c", c.snn.c));
        t.push_back(MEMEVO_FIELD(double, "snn.c_ini", c.snn.c_ini));
        t.push_back(MEMEVO_FIELD(double, "snn.y_thresh", c.snn.y_thresh));
        t.push_back(MEMEVO_FIELD(int, "snn.steps_per_timestep", c.snn.steps_per_timestep));
        t.push_back(MEMEVO_FIELD(int, "snn.window_size", c.snn.window_size));
        t.push_back(MEMEVO_FIELD(int, "snn.last_spike_init", c.snn.last_spike_init));
        t.push_back(MEMEVO_FIELD(int, "snn.stdp_threshold", c.snn.stdp_threshold));

        t.push_back(MEMEVO_FIELD(double, "mem.r_on", c.memristor.r_on));
        t.push_back(MEMEVO_FIELD(double, "mem.r_off", c.memristor.r_off));
        t.push_back(MEMEVO_FIELD(double, "mem.beta", c.memristor.beta));
        t.push_back(MEMEVO_FIELD(int, "mem.mem_lifetime", c.memristor.mem_lifetime));

        t.push_back(MEMEVO_FIELD(double, "arena.half_extent", c.arena.half_extent));
        t.push_back(MEMEVO_FIELD(double, "arena.box_half", c.arena.box_half));
        t.push_back(MEMEVO_FIELD(double, "arena.light_x", c.arena.light_x));
        t.push_back(MEMEVO_FIELD(double, "arena.light_y", c.arena.light_y));
        t.push_back(MEMEVO_FIELD(double, "arena.agent_radius", c.arena.agent_radius));
        t.push_back(MEMEVO_FIELD(double, "arena.forward_speed", c.arena.forward_speed));
        t.push_back(MEMEVO_FIELD(double, "arena.start_x", c.arena.start.x));
        t.push_back(MEMEVO_FIELD(double, "arena.start_y", c.arena.start.y));
        t.push_back(MEMEVO_FIELD(double, "arena.start_heading", c.arena.start.heading));
        t.push_back(MEMEVO_FIELD(double, "arena.start_jitter", c.arena.start_jitter));
        t.push_back(MEMEVO_FIELD(double, "arena.bearing_0", c.arena.sensor_bearings[0]));
        t.push_back(MEMEVO_FIELD(double, "arena.bearing_2", c.arena.sensor_bearings[1]));
        t.push_back(MEMEVO_FIELD(double, "arena.bearing_5", c.arena.sensor_bearings[2]));
        t.push_back(MEMEVO_FIELD(double, "arena.ir_range", c.arena.ir_range));
        t.push_back(MEMEVO_FIELD(double, "arena.light_min_distance", c.arena.light_min_distance));
        t.push_back(MEMEVO_FIELD(double, "arena.light_max_intensity", c.arena.light_max_intensity));
        t.push_back(MEMEVO_FIELD(double, "arena.ir_noise", c.arena.ir_noise));
        t.push_back(MEMEVO_FIELD(double, "arena.light_noise", c.arena.light_noise));
        t.push_back(MEMEVO_FIELD(double, "arena.slip_probability", c.arena.slip_probability));
        t.push_back(MEMEVO_FIELD(double, "arena.bump_reverse", c.arena.bump_reverse));
        t.push_back(MEMEVO_FIELD(int, "arena.bump_penalty", c.arena.bump_penalty));
        t.push_back(MEMEVO_FIELD(double, "arena.goal_line", c.arena.goal_line));
        t.push_back(MEMEVO_FIELD(int, "arena.max_timesteps", c.arena.max_timesteps));
        return t;
    }();
    return table;
}

#undef MEMEVO_FIELD

const Entry& find_entry(std::string_view key) {
    for (const auto& e : entries())
        if (e.key == key) return e;
    throw std::invalid_argument("unknown configuration key: " + std::string(key));
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& e : entries()) k.push_back(e.key);
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    find_entry(key).set(cfg, trim(value));
}

std::string get_setting(const RunConfig& cfg, std::string_view key) { return find_entry(key).get(cfg); }

RunConfig parse_config(std::string_view text, RunConfig base) {
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        try {
            apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

std::string config_to_text(const RunConfig& cfg) {
    std::string out;
    for (const auto& e : entries()) out += e.key + '=' + e.get(cfg) + '\n';
    return out;
}

}  // namespace memevo
