#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "forage/behavior.hpp"
#include "forage/engine.hpp"

using namespace forage;

namespace {

RobotPhysState phys_at(Position p, double energy = 100.0, bool carrying = false) {
    RobotPhysState r;
    r.position = p;
    r.energy = energy;
    r.carrying = carrying;
    return r;
}

TaskReceipt claim(std::uint32_t id, Position site) {
    TaskReceipt r;
    r.task_type = TaskType::GoToPick;
    r.task_location = site;
    r.robot_id = RobotId{id};
    r.dist_to_task = 0.5;
    return r;
}

// Nearest unclaimed site by exhaustive scan, independent of select_task.
std::optional<Position> nearest_unclaimed(const std::vector<Position>& sites, const std::vector<Position>& claimed,
                                          Position from) {
    std::optional<Position> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& s : sites) {
        if (std::find(claimed.begin(), claimed.end(), s) != claimed.end()) continue;
        const double d = std::hypot(s.x - from.x, s.y - from.y);
        if (d < best_d) {
            best_d = d;
            best = s;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("select_task") {
    Scenario sc;
    auto brain = make_brain(RobotId{0}, 3);

    SUBCASE("nothing claimed: nearest treasure") {
        const auto out = select_task(brain, phys_at({0.1, -0.4}), sc, 12);
        CHECK(out.current == TaskType::GoToPick);
        CHECK(out.target == Position{0.0, -0.5});
        const auto& own = out.schedule.at(RobotId{0});
        CHECK(own.task_type == TaskType::GoToPick);
        CHECK(own.priority == 1);
        CHECK(own.timestamp == 12);
        CHECK(own.dist_to_task == doctest::Approx(std::hypot(0.1, 0.1)));
    }
    SUBCASE("every treasure claimed: stay idle") {
        sc.treasures = {{-0.8, -0.5}, {0.8, -0.5}};
        brain.schedule.set(claim(1, {-0.8, -0.5}));
        brain.schedule.set(claim(2, {0.8, -0.5}));
        const auto out = select_task(brain, phys_at({0, 0}), sc, 5);
        CHECK(out.current == TaskType::Idle);
        CHECK(out.schedule == brain.schedule);
    }
    SUBCASE("nearer treasure claimed: go to the farther one") {
        sc.treasures = {{-0.8, -0.5}, {0.8, -0.5}};
        brain.schedule.set(claim(1, {0.8, -0.5}));
        const auto out = select_task(brain, phys_at({0.7, -0.4}), sc, 5);
        CHECK(out.target == Position{-0.8, -0.5});
    }
    SUBCASE("not idle") {
        brain.current = TaskType::GoToCollection;
        CHECK_THROWS_AS(select_task(brain, phys_at({0, 0}), sc, 0), ContractViolation);
    }
}

TEST_CASE("property: select_task picks the nearest unclaimed treasure") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> x(-1.6, 1.6), y(-1.0, 1.0);
    Scenario sc;
    for (int trial = 0; trial < 300; ++trial) {
        auto brain = make_brain(RobotId{0}, 5);
        std::vector<Position> claimed;
        for (std::uint32_t peer = 1; peer < 5; ++peer) {
            if (rng() % 2) continue;
            const auto site = sc.treasures[rng() % sc.treasures.size()];
            brain.schedule.set(claim(peer, site));
            claimed.push_back(site);
        }
        const Position from{x(rng), y(rng)};
        const auto expected = nearest_unclaimed(sc.treasures, claimed, from);
        const auto out = select_task(brain, phys_at(from), sc, 1);
        REQUIRE(expected.has_value());
        REQUIRE(out.target == expected);
    }
}

TEST_CASE("on_arrival") {
    Scenario sc;
    StationOccupancy stations(sc.rechargers.size());

    SUBCASE("pick arrival") {
        auto brain = select_task(make_brain(RobotId{1}, 2), phys_at({0, -0.45}), sc, 3);
        const auto out = on_arrival(brain, phys_at({0, -0.45}), sc, stations, 4);
        CHECK(out.picked);
        CHECK_FALSE(out.completed);
        CHECK(out.phys.carrying);
        CHECK(out.brain.current == TaskType::GoToCollection);
        CHECK(out.brain.target == sc.collection_point);
        CHECK(out.brain.prev_target == Position{0.0, -0.5});
        const auto& own = out.brain.schedule.at(RobotId{1});
        CHECK(own.task_type == TaskType::GoToCollection);
        CHECK(own.prev_task_location == Position{0.0, -0.5});
        CHECK(own.timestamp == 4);
    }
    SUBCASE("collection arrival") {
        auto brain = make_brain(RobotId{0}, 1);
        brain.current = TaskType::GoToCollection;
        brain.target = sc.collection_point;
        brain.prev_target = sc.treasures[0];
        const auto out = on_arrival(brain, phys_at({-1.35, -0.8}, 80, true), sc, stations, 9);
        CHECK(out.completed);
        CHECK_FALSE(out.picked);
        CHECK_FALSE(out.phys.carrying);
        CHECK(out.brain.current == TaskType::Idle);
        CHECK(out.brain.schedule.at(RobotId{0}).task_type == TaskType::Idle);
    }
    SUBCASE("recharger arrival: granted, then busy") {
        auto a = make_brain(RobotId{0}, 2);
        a.current = TaskType::GoToRecharge;
        a.target = sc.rechargers[1];
        auto b = make_brain(RobotId{1}, 2);
        b.current = TaskType::GoToRecharge;
        b.target = sc.rechargers[1];
        CHECK(on_arrival(a, phys_at({1.35, 0.8}, 20), sc, stations, 1).brain.current == TaskType::Recharging);
        CHECK(on_arrival(b, phys_at({1.4, 0.75}, 20), sc, stations, 1).brain.current ==
              TaskType::WaitForRecharging);
        CHECK(stations.occupant(1) == RobotId{0});
        CHECK(stations.queue(1).front() == RobotId{1});
    }
    SUBCASE("arrival while idle or dead") {
        auto brain = make_brain(RobotId{0}, 1);
        CHECK_THROWS_AS(on_arrival(brain, phys_at({0, 0}), sc, stations, 0), ContractViolation);
        brain.current = TaskType::Dead;
        CHECK_THROWS_AS(on_arrival(brain, phys_at({0, 0}), sc, stations, 0), ContractViolation);
    }
}

TEST_CASE("maybe_go_recharge") {
    Scenario sc;
    auto brain = select_task(make_brain(RobotId{0}, 1), phys_at({1.0, 0.0}), sc, 0);
    SUBCASE("below the trigger") {
        const auto out = maybe_go_recharge(brain, phys_at({1.0, 0.0}, 29), sc, 7);
        CHECK(out.current == TaskType::GoToRecharge);
        CHECK(out.target == sc.rechargers[1]);
        CHECK(out.schedule.at(RobotId{0}).task_type == TaskType::GoToRecharge);
        CHECK(out.schedule.at(RobotId{0}).timestamp == 7);
    }
    SUBCASE("above the trigger") {
        CHECK(maybe_go_recharge(brain, phys_at({1.0, 0.0}, 31), sc, 7).current == TaskType::GoToPick);
    }
    SUBCASE("already bound to a recharger") {
        brain.current = TaskType::WaitForRecharging;
        CHECK(maybe_go_recharge(brain, phys_at({1.0, 0.0}, 5), sc, 7).current == TaskType::WaitForRecharging);
    }
}

TEST_CASE("recharge_tick") {
    Scenario sc;
    auto brain = make_brain(RobotId{0}, 1);
    brain.current = TaskType::Recharging;
    brain.target = sc.rechargers[0];
    SUBCASE("full battery releases to idle") {
        const auto out = recharge_tick(brain, phys_at(sc.rechargers[0], 100), sc, 3);
        CHECK(out.release);
        CHECK(out.brain.current == TaskType::Idle);
        CHECK_FALSE(out.brain.target.has_value());
    }
    SUBCASE("still charging") {
        const auto out = recharge_tick(brain, phys_at(sc.rechargers[0], 80), sc, 3);
        CHECK_FALSE(out.release);
        CHECK(out.brain.current == TaskType::Recharging);
    }
    SUBCASE("full battery while carrying resumes the delivery") {
        const auto out = recharge_tick(brain, phys_at(sc.rechargers[0], 100, true), sc, 3);
        CHECK(out.release);
        CHECK(out.brain.current == TaskType::GoToCollection);
        CHECK(out.brain.target == sc.collection_point);
    }
    SUBCASE("not recharging") {
        brain.current = TaskType::Idle;
        CHECK_THROWS_AS(recharge_tick(brain, phys_at({}, 100), sc, 3), ContractViolation);
    }
}

TEST_CASE("author_receipt") {
    auto brain = make_brain(RobotId{2}, 3);
    brain.current = TaskType::GoToPick;
    brain.target = Position{0.3, 0.4};
    const auto r = author_receipt(brain, phys_at({0, 0}), 55);
    CHECK(r.dist_to_task == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.priority == 1);
    CHECK(r.timestamp == 55);
    CHECK(r.task_location == Position{0.3, 0.4});
    CHECK_FALSE(r.prev_task_location.has_value());

    brain.current = TaskType::Dead;
    brain.target.reset();
    const auto dead = author_receipt(brain, phys_at({1, 1}, 0), 56);
    CHECK(dead.task_type == TaskType::Dead);
    CHECK(dead.priority == 1);
    CHECK(dead.task_location == Position{});
    CHECK(dead.dist_to_task == 0.0);
}

TEST_CASE("a robot that lost a pick conflict accepts the demotion") {
    Scenario sc;
    auto brain = select_task(make_brain(RobotId{0}, 2), phys_at({0, 0}), sc, 1);
    REQUIRE(brain.current == TaskType::GoToPick);
    CHECK(reconcile_with_schedule(brain).current == TaskType::GoToPick);
    brain.schedule.set(make_idle_receipt(RobotId{0}, 1, 1));
    const auto out = reconcile_with_schedule(brain);
    CHECK(out.current == TaskType::Idle);
    CHECK_FALSE(out.target.has_value());
}

TEST_CASE("trace: low battery while carrying detours to recharge, then resumes the delivery") {
    // One robot already holding a treasure, just above the trigger, far from the
    // collection point.
    Scenario sc;
    sc.n_robots = 1;
    sc.iterations = 3000;
    auto state = init(sc);
    state.robots[0].position = {1.2, -0.5};
    state.robots[0].carrying = true;
    state.robots[0].energy = 30.05;
    state.brains[0].current = TaskType::GoToCollection;
    state.brains[0].target = sc.collection_point;
    state.brains[0].prev_target = Position{1.28, -0.5};

    std::vector<TaskType> states;
    while (state.now < sc.iterations) {
        step(state);
        const auto t = state.brains[0].current;
        if (states.empty() || states.back() != t) states.push_back(t);
        if (states.size() >= 2 && t == TaskType::Idle) break;
    }
    const std::vector<TaskType> expected{TaskType::GoToCollection, TaskType::GoToRecharge, TaskType::Recharging,
                                         TaskType::GoToCollection, TaskType::Idle};
    CHECK(states == expected);
    CHECK(state.ledger.robots()[0].treasures_completed == 1);
}
