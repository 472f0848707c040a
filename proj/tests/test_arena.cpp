#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "memevo/arena.hpp"

using namespace memevo;

namespace {

constexpr double kPi = std::numbers::pi;
const ArenaConfig A{};

bool contained(const Pose& p) {
    const double lo = -A.half_extent + A.agent_radius;
    const double hi = A.half_extent - A.agent_radius;
    const double d = A.box_half + A.agent_radius;
    const bool inside_walls = p.x >= lo - 1e-12 && p.x <= hi + 1e-12 && p.y >= lo - 1e-12 && p.y <= hi + 1e-12;
    const bool outside_box = std::abs(p.x) >= d - 1e-12 || std::abs(p.y) >= d - 1e-12;
    return inside_walls && outside_box;
}

}  // namespace

TEST_CASE("fitness anchors") {
    const Pose goal{0.8, 0.8};
    CHECK(fitness_step(goal, 700, true) == 11800.0);
    CHECK(fitness_step(Pose{0.3, 0.3}, 100, false) == doctest::Approx(900.0).epsilon(1e-12));
    CHECK(fitness_step(Pose{-0.8, -0.8}, 100000, false) == 0.0);
}

TEST_CASE("fitness is monotone in x + y below the goal") {
    double last = -1.0;
    for (int i = 0; i <= 300; ++i) {
        const double s = -1.9 + i * 0.01;
        const double f = fitness_step(Pose{s / 2, s / 2}, 50, false);
        REQUIRE(f >= last);
        last = f;
    }
}

TEST_CASE("ray distances") {
    CHECK(ray_distance({0.0, -0.9}, kPi / 2, A) == doctest::Approx(0.5));
    CHECK(ray_distance({0.0, -0.9}, -kPi / 2, A) == doctest::Approx(0.1));
    CHECK(ray_distance({-0.8, -0.8}, 0.0, A) == doctest::Approx(1.8));
    CHECK(ray_distance({-0.8, 0.0}, 0.0, A) == doctest::Approx(0.4));
}

TEST_CASE("IR readings") {
    // Sensor at bearing 0 sits r ahead of the centre.
    Pose far{0.0, -0.7, kPi / 2};
    CHECK(ir_reading(far, 0.0, A).scaled == 0.0);
    Pose touching{0.0, 1.0 - A.agent_radius, kPi / 2};
    const auto full = ir_reading(touching, 0.0, A);
    CHECK(full.scaled == doctest::Approx(1.0));
    CHECK(full.raw == doctest::Approx(1023.0));
    Pose half{0.0, 1.0 - A.agent_radius - 0.05, kPi / 2};
    CHECK(ir_reading(half, 0.0, A).scaled == doctest::Approx(0.5));
}

TEST_CASE("light readings") {
    SUBCASE("occluded by the box") {
        Pose behind{-0.6, -0.6, kPi / 4};
        const auto r = light_reading(behind, 0.0, A);
        CHECK(r.raw == 500.0);
        CHECK(r.scaled == 0.0);
    }
    SUBCASE("at the light, facing it") {
        Pose near{1.0 - A.agent_radius - 0.01, 1.0 - A.agent_radius - 0.01, kPi / 4};
        const auto r = light_reading(near, 0.0, A);
        CHECK(r.raw == doctest::Approx(8.0));
        CHECK(r.scaled == doctest::Approx(1.0));
    }
    SUBCASE("facing away") {
        Pose away{0.8, 0.5, -kPi / 2};
        CHECK(light_reading(away, 0.0, A).scaled == 0.0);
    }
    SUBCASE("non-increasing with distance along a clear line") {
        double last = 2.0;
        for (int i = 0; i < 25; ++i) {
            const double xy = 0.95 - i * 0.02;
            const auto r = light_reading(Pose{xy, xy, kPi / 4}, 0.0, A);
            REQUIRE(r.scaled <= last);
            last = r.scaled;
        }
    }
}

TEST_CASE("sense returns bounded values in the fixed order") {
    Rng rng(1);
    for (int i = 0; i < 2000; ++i) {
        Pose p{rng.uniform(-0.97, 0.97), rng.uniform(-0.97, 0.97), rng.uniform(-kPi, kPi)};
        if (!contained(p)) continue;
        const auto s = sense(p, A, i % 2 ? &rng : nullptr);
        for (double v : s.values) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
        const auto clean = sense(p, A);
        for (int k = 0; k < 3; ++k) {
            REQUIRE(clean.values[k] == light_reading(p, A.sensor_bearings[k], A).scaled);
            REQUIRE(clean.values[3 + k] == ir_reading(p, A.sensor_bearings[k], A).scaled);
        }
    }
    const auto open = sense(Pose{-0.7, 0.0, kPi}, A);
    CHECK(open.values[3] == 0.0);
    CHECK(open.values[4] == 0.0);
    CHECK(open.values[5] == 0.0);
}

TEST_CASE("noise stays within its band") {
    Rng rng(3);
    const Pose p{0.0, 1.0 - A.agent_radius - 0.06, kPi / 2};
    const double clean = ir_reading(p, 0.0, A).scaled;
    for (int i = 0; i < 500; ++i) {
        const double noisy = ir_reading(p, 0.0, A, &rng).scaled;
        REQUIRE(std::abs(noisy / clean - 1.0) <= 0.02 + 1e-12);
    }
    const Pose lit{0.6, 0.6, kPi / 4};
    const double light = light_reading(lit, 0.0, A).scaled;
    REQUIRE(light > 0.0);
    for (int i = 0; i < 500; ++i) {
        const double noisy = light_reading(lit, 0.0, A, &rng).scaled;
        REQUIRE(std::abs(std::min(noisy, 1.0) - std::min(light, 1.0)) <= 0.1 * light + 1e-12);
    }
}

TEST_CASE("bump arcs") {
    Pose wall_left{0.0, 1.0 - A.agent_radius, kPi / 4};  // wall due north, 45 deg left of heading
    auto b = bump_flags(wall_left, A);
    CHECK(b.left);
    CHECK_FALSE(b.right);
    Pose wall_ahead{0.0, 1.0 - A.agent_radius, kPi / 2};
    b = bump_flags(wall_ahead, A);
    CHECK(b.left);
    CHECK(b.right);
    Pose wall_behind{0.0, 1.0 - A.agent_radius, -kPi / 2};
    CHECK_FALSE(bump_flags(wall_behind, A).any());
    Pose open{-0.7, 0.0, 0.0};
    CHECK_FALSE(bump_flags(open, A).any());
    Pose box_right{-0.4 - A.agent_radius, 0.0, kPi / 2};  // box face east, 90 deg right: not in arc
    CHECK_FALSE(bump_flags(box_right, A).any());
    Pose box_front_right{-0.4 - A.agent_radius, 0.0, kPi / 4};
    b = bump_flags(box_front_right, A);
    CHECK(b.right);
    CHECK_FALSE(b.left);
}

TEST_CASE("kinematics") {
    const Pose start{0.0, -0.9, kPi / 2};
    const Pose f = apply_action(start, Action::Forward, A);
    CHECK(f.x == doctest::Approx(0.0));
    CHECK(f.y == doctest::Approx(-0.895));
    const Pose l = apply_action(start, Action::LeftTurn, A);
    CHECK(l.heading - start.heading == doctest::Approx(A.forward_speed / (4 * A.agent_radius)));
    const Pose r = apply_action(start, Action::RightTurn, A);
    CHECK(r.heading - start.heading == doctest::Approx(-A.forward_speed / (4 * A.agent_radius)));
    CHECK(l.x < 0.0);
    CHECK(r.x > 0.0);
}

TEST_CASE("sliding collisions") {
    const Pose east{1.0 - A.agent_radius, 0.5, 0.0};
    const Pose moved = apply_action(east, Action::Forward, A);
    CHECK(moved.x == doctest::Approx(1.0 - A.agent_radius));
    const Pose diagonal{1.0 - A.agent_radius, 0.5, kPi / 4};
    const Pose slid = apply_action(diagonal, Action::Forward, A);
    CHECK(slid.x == doctest::Approx(1.0 - A.agent_radius));
    CHECK(slid.y > 0.5);
}

TEST_CASE("bump interrupt") {
    const Pose p{0.0, -0.7, kPi / 2};
    const auto out = bump_interrupt(p, 100, A);
    CHECK(out.st == 110);
    CHECK(out.pose.y == doctest::Approx(-0.8));
    const Pose near_wall{0.0, -0.9, kPi / 2};
    const auto stopped = bump_interrupt(near_wall, 0, A);
    CHECK(stopped.pose.y == doctest::Approx(-1.0 + A.agent_radius));
}

TEST_CASE("pose containment under random driving") {
    Rng rng(42);
    const Action actions[] = {Action::Forward, Action::LeftTurn, Action::RightTurn};
    for (int run = 0; run < 20; ++run) {
        Pose p = A.start;
        for (int t = 0; t < 3000; ++t) {
            p = apply_action(p, actions[rng.index(3)], A, run % 2 ? &rng : nullptr);
            REQUIRE(contained(p));
            if (bump_flags(p, A).any()) {
                p = bump_interrupt(p, 0, A).pose;
                REQUIRE(contained(p));
            }
        }
    }
}

TEST_CASE("slippage freezes the pose") {
    ArenaConfig always = A;
    always.slip_probability = 1.0;
    Rng rng(1);
    const Pose p{0.0, -0.7, 1.0};
    const Pose q = apply_action(p, Action::Forward, always, &rng);
    CHECK(q.x == p.x);
    CHECK(q.y == p.y);
    CHECK(q.heading == p.heading);
}

TEST_CASE("arena validation") {
    ArenaConfig bad = A;
    bad.start = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = A;
    bad.box_half = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
