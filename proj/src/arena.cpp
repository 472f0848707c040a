#include "memevo/arena.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace memevo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kContactTolerance = 1e-6;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    return a <= -kPi ? a + 2.0 * kPi : a;
}

/// Entry parameter of the ray origin + t*dir into the box, or +inf if it misses.
double box_entry(Vec2 origin, Vec2 dir, double half) {
    double t_near = -std::numeric_limits<double>::infinity();
    double t_far = std::numeric_limits<double>::infinity();
    const double o[2] = {origin.x, origin.y};
    const double d[2] = {dir.x, dir.y};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (o[axis] < -half || o[axis] > half) return std::numeric_limits<double>::infinity();
            continue;
        }
        double t1 = (-half - o[axis]) / d[axis];
        double t2 = (half - o[axis]) / d[axis];
        if (t1 > t2) std::swap(t1, t2);
        t_near = std::max(t_near, t1);
        t_far = std::min(t_far, t2);
    }
    if (t_near > t_far || t_far < 0.0) return std::numeric_limits<double>::infinity();
    return std::max(t_near, 0.0);
}

}  // namespace

void ArenaConfig::validate() const {
    if (!(half_extent > 0 && box_half >= 0 && box_half < half_extent))
        throw std::invalid_argument("arena: need 0 <= box_half < half_extent");
    if (!(agent_radius > 0 && forward_speed > 0 && ir_range > 0))
        throw std::invalid_argument("arena: radius, speed and IR range must be positive");
    if (!(light_min_distance > 0 && light_max_intensity > 0))
        throw std::invalid_argument("arena: light model constants must be positive");
    if (max_timesteps < 1) throw std::invalid_argument("arena: max_timesteps must be >= 1");
    if (start.x + start.y >= -1.5) throw std::invalid_argument("arena: start must satisfy x + y < -1.5");
}

double ray_distance(Vec2 origin, double angle, const ArenaConfig& arena) {
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    const double h = arena.half_extent;
    double best = std::numeric_limits<double>::infinity();
    if (dir.x > 0) best = std::min(best, (h - origin.x) / dir.x);
    if (dir.x < 0) best = std::min(best, (-h - origin.x) / dir.x);
    if (dir.y > 0) best = std::min(best, (h - origin.y) / dir.y);
    if (dir.y < 0) best = std::min(best, (-h - origin.y) / dir.y);
    best = std::min(best, box_entry(origin, dir, arena.box_half));
    return std::max(best, 0.0);
}

Vec2 sensor_position(const Pose& pose, double bearing, const ArenaConfig& arena) {
    const double a = pose.heading + bearing;
    return {pose.x + arena.agent_radius * std::cos(a), pose.y + arena.agent_radius * std::sin(a)};
}

SensorReading ir_reading(const Pose& pose, double bearing, const ArenaConfig& arena, Rng* noise) {
    const double d = ray_distance(sensor_position(pose, bearing, arena), pose.heading + bearing, arena);
    double scaled = std::max(0.0, 1.0 - d / arena.ir_range);
    if (noise) scaled = std::clamp(scaled * noise->uniform(1.0 - arena.ir_noise, 1.0 + arena.ir_noise), 0.0, 1.0);
    return {1023.0 * scaled, scaled};
}

SensorReading light_reading(const Pose& pose, double bearing, const ArenaConfig& arena, Rng* noise) {
    constexpr double kDark = 500.0;
    constexpr double kSpan = 492.0;
    const Vec2 s = sensor_position(pose, bearing, arena);
    const Vec2 to_light{arena.light_x - s.x, arena.light_y - s.y};
    const double d = std::hypot(to_light.x, to_light.y);
    double intensity = 1.0;
    if (d > 0.0) {
        const double a = pose.heading + bearing;
        const double cosine = (std::cos(a) * to_light.x + std::sin(a) * to_light.y) / d;
        const bool shadowed = box_entry(s, to_light, arena.box_half) <= 1.0;
        if (cosine <= 0.0 || shadowed) {
            intensity = 0.0;
        } else {
            const double reach = std::max(d * d, arena.light_min_distance * arena.light_min_distance);
            intensity = std::clamp(cosine / reach, 0.0, arena.light_max_intensity) / arena.light_max_intensity;
        }
    }
    if (noise) intensity = std::clamp(intensity * noise->uniform(1.0 - arena.light_noise, 1.0 + arena.light_noise), 0.0, 1.0);
    return {kDark - kSpan * intensity, intensity};
}

BumpFlags bump_flags(const Pose& pose, const ArenaConfig& arena) {
    BumpFlags flags;
    const double reach = arena.agent_radius + kContactTolerance;
    auto classify = [&](double direction) {
        const double rel = wrap_angle(direction - pose.heading);
        if (rel >= 0.0 && rel < kPi / 2) flags.left = true;
        if (rel <= 0.0 && rel > -kPi / 2) flags.right = true;
    };
    const double h = arena.half_extent;
    if (h - pose.x <= reach) classify(0.0);
    if (pose.x + h <= reach) classify(kPi);
    if (h - pose.y <= reach) classify(kPi / 2);
    if (pose.y + h <= reach) classify(-kPi / 2);
    const double b = arena.box_half;
    const Vec2 nearest{std::clamp(pose.x, -b, b), std::clamp(pose.y, -b, b)};
    const double dx = nearest.x - pose.x;
    const double dy = nearest.y - pose.y;
    if (std::hypot(dx, dy) <= reach && (dx != 0.0 || dy != 0.0)) classify(std::atan2(dy, dx));
    return flags;
}

Senses sense(const Pose& pose, const ArenaConfig& arena, Rng* noise) {
    Senses out;
    for (int i = 0; i < 3; ++i) out.values[i] = light_reading(pose, arena.sensor_bearings[i], arena, noise).scaled;
    for (int i = 0; i < 3; ++i) out.values[3 + i] = ir_reading(pose, arena.sensor_bearings[i], arena, noise).scaled;
    out.bump = bump_flags(pose, arena);
    return out;
}

Pose resolve_collisions(const Pose& previous, Pose moved, const ArenaConfig& arena) {
    const double lo = -arena.half_extent + arena.agent_radius;
    const double hi = arena.half_extent - arena.agent_radius;
    moved.x = std::clamp(moved.x, lo, hi);
    moved.y = std::clamp(moved.y, lo, hi);
    const double d = arena.box_half + arena.agent_radius;
    if (std::abs(moved.x) < d && std::abs(moved.y) < d) {
        const bool was_out_x = std::abs(previous.x) >= d;
        const bool was_out_y = std::abs(previous.y) >= d;
        if (was_out_x && !was_out_y) {
            moved.x = std::copysign(d, previous.x);
        } else if (was_out_y && !was_out_x) {
            moved.y = std::copysign(d, previous.y);
        } else if (d - std::abs(moved.x) < d - std::abs(moved.y)) {
            moved.x = std::copysign(d, moved.x);
        } else {
            moved.y = std::copysign(d, moved.y);
        }
    }
    return moved;
}

Pose apply_action(const Pose& pose, Action action, const ArenaConfig& arena, Rng* noise) {
    const double v = arena.forward_speed;
    double left = v;
    double right = v;
    if (action == Action::LeftTurn) left = v / 2;
    if (action == Action::RightTurn) right = v / 2;
    if (noise && noise->bernoulli(arena.slip_probability)) return pose;

    const double speed = (left + right) / 2;
    const double turn = (right - left) / (2.0 * arena.agent_radius);
    Pose next = pose;
    if (turn == 0.0) {
        next.x += speed * std::cos(pose.heading);
        next.y += speed * std::sin(pose.heading);
    } else {
        const double radius = speed / turn;
        next.heading = pose.heading + turn;
        next.x += radius * (std::sin(next.heading) - std::sin(pose.heading));
        next.y -= radius * (std::cos(next.heading) - std::cos(pose.heading));
    }
    next.heading = wrap_angle(next.heading);
    return resolve_collisions(pose, next, arena);
}

BumpOutcome bump_interrupt(const Pose& pose, int st, const ArenaConfig& arena) {
    Pose back = pose;
    back.x -= arena.bump_reverse * std::cos(pose.heading);
    back.y -= arena.bump_reverse * std::sin(pose.heading);
    return {resolve_collisions(pose, back, arena), st + arena.bump_penalty};
}

double fitness_step(const Pose& pose, int st, bool goal_reached, const ArenaConfig& arena) {
    const double denom = std::max(arena.goal_line - (pose.x + pose.y), 0.1);
    double f = 1000.0 / denom - st + (goal_reached ? kGoalBonus : 0.0);
    return std::max(f, 0.0);
}

}  // namespace memevo
