#pragma once

#include <array>
#include <numbers>

#include "memevo/network.hpp"
#include "memevo/rng.hpp"

namespace memevo {

/// Agent position in arena units (1 unit = 1 m) and heading in radians, measured
/// counter-clockwise from +x; North (+y) is pi/2.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = std::numbers::pi / 2;
};

struct ArenaConfig {
    double half_extent = 1.0;   // walls at +-half_extent
    double box_half = 0.4;      // central box [-box_half, box_half]^2
    double light_x = 1.0;
    double light_y = 1.0;
    double agent_radius = 0.0275;
    double forward_speed = 0.005;  // units per timestep
    Pose start{-0.8, -0.8, std::numbers::pi / 2};
    /// Uniform start jitter (units) applied per trial, resampled until x + y < -1.5.
    double start_jitter = 0.0;

    /// Sensor bearings relative to heading for positions 0, 2 and 5.
    std::array<double, 3> sensor_bearings{std::numbers::pi / 2, 10.0 * std::numbers::pi / 180.0,
                                          -std::numbers::pi / 2};
    double ir_range = 0.1;
    double light_min_distance = 0.05;
    double light_max_intensity = 400.0;

    double ir_noise = 0.02;
    double light_noise = 0.10;
    double slip_probability = 0.1;

    double bump_reverse = 0.1;
    int bump_penalty = 10;
    double goal_line = 1.6;
    int max_timesteps = 4000;

    void validate() const;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct SensorReading {
    double raw = 0.0;
    double scaled = 0.0;
};

/// Distance from `origin` along `angle` to the nearest wall or box face.
double ray_distance(Vec2 origin, double angle, const ArenaConfig& arena);

/// Position of a body-mounted sensor at `bearing` relative to the heading.
Vec2 sensor_position(const Pose& pose, double bearing, const ArenaConfig& arena);

/// IR proximity: raw = 1023 * max(0, 1 - d / ir_range). `noise` enables +-ir_noise multiplicative noise.
SensorReading ir_reading(const Pose& pose, double bearing, const ArenaConfig& arena, Rng* noise = nullptr);

/// Light: raw from 8 (bright) to 500 (dark); inverse-square, cosine directivity, box shadow.
SensorReading light_reading(const Pose& pose, double bearing, const ArenaConfig& arena, Rng* noise = nullptr);

struct BumpFlags {
    bool left = false;
    bool right = false;
    bool any() const { return left || right; }
};

/// Front-arc contact: an obstacle within contact distance whose direction from the centre
/// lies within [0, 90) degrees left of the heading (left) or (-90, 0] (right).
BumpFlags bump_flags(const Pose& pose, const ArenaConfig& arena);

struct Senses {
    /// light(0), light(2), light(5), ir(0), ir(2), ir(5), all scaled to [0,1].
    SensorVector values{};
    BumpFlags bump;
};

Senses sense(const Pose& pose, const ArenaConfig& arena, Rng* noise = nullptr);

/// Keeps the body inside the walls and outside the box: each offending axis is
/// projected back to the contact position, leaving the tangential motion.
Pose resolve_collisions(const Pose& previous, Pose moved, const ArenaConfig& arena);

/// One timestep of differential-drive motion with wheel base 2r. `noise` enables slippage.
Pose apply_action(const Pose& pose, Action action, const ArenaConfig& arena, Rng* noise = nullptr);

struct BumpOutcome {
    Pose pose;
    int st = 0;
};

/// Reverses bump_reverse units along -heading (collision-resolved) and adds the penalty.
BumpOutcome bump_interrupt(const Pose& pose, int st, const ArenaConfig& arena);

/// 1000 / max(goal_line - (x + y), 0.1) - st, plus 2500 on the goal, floored at 0.
double fitness_step(const Pose& pose, int st, bool goal_reached, const ArenaConfig& arena = {});

inline constexpr double kGoalBonus = 2500.0;

}  // namespace memevo
