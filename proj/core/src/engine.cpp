#include "forage/engine.hpp"

#include <ostream>

#include <fmt/format.h>

namespace forage {

namespace {

void act_for_robot(SimState& state, std::size_t i) {
    const auto& sc = state.scenario;
    auto& phys = state.robots[i];
    auto& brain = state.brains[i];
    auto& ev = state.events[i];
    auto& tally = state.tallies[i];
    const Iteration now = state.now;

    ev = RobotStepEvent{};
    ev.alive = phys.alive;
    if (!phys.alive) return;

    // Decide.
    brain = reconcile_with_schedule(brain);
    if (brain.current == TaskType::WaitForRecharging) {
        const auto station = state.stations.station_of(brain.id);
        if (station && state.stations.occupant(*station) == brain.id) brain.current = TaskType::Recharging;
    }
    brain = maybe_go_recharge(brain, phys, sc, now);
    if (brain.current == TaskType::Idle) brain = select_task(brain, phys, sc, now);
    ev.activity = brain.current;

    if (brain.current == TaskType::Recharging) {
        phys = recharge_energy(phys, sc.energy.delta, sc.energy_capacity, state.options.clamp);
        ++tally.recharge_steps;
        auto outcome = recharge_tick(brain, phys, sc, now);
        brain = std::move(outcome.brain);
        if (outcome.release) state.stations.release(brain.id);
    } else {
        bool picked = false;
        const bool travelling = brain.current == TaskType::GoToPick || brain.current == TaskType::GoToCollection ||
                                brain.current == TaskType::GoToRecharge;
        if (travelling && brain.target) {
            auto motion = step_motion(phys, *brain.target, sc.step_length, sc.clearance);
            phys = motion.robot;
            ev.moved = motion.moved;
            if (motion.arrived) {
                auto arrival = on_arrival(brain, phys, sc, state.stations, now);
                brain = std::move(arrival.brain);
                phys = arrival.phys;
                picked = arrival.picked;
                ev.completed = arrival.completed;
            }
        }
        phys = consume_energy(phys, ev.moved, picked, sc.energy, state.options.clamp);
        ++tally.drain_steps;
        if (picked) ++tally.pickups;
        if (!phys.alive) {
            brain.current = TaskType::Dead;
            brain.target.reset();
            state.stations.release(brain.id);
        }
    }

    brain.schedule.set(author_receipt(brain, phys, now));
    if (state.options.trace) *state.options.trace << format_receipt_line(now, brain.schedule.at(brain.id)) << '\n';
}

}  // namespace

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SimState init(const Scenario& scenario, SimOptions options) {
    validate_scenario(scenario);
    SimState state;
    state.scenario = scenario;
    state.options = options;
    state.rng.seed(scenario.rng_seed);
    state.stations = StationOccupancy(scenario.rechargers.size());
    state.ledger = MetricsLedger(scenario.n_robots);
    state.tallies.assign(scenario.n_robots, EnergyTally{});
    state.events.assign(scenario.n_robots, RobotStepEvent{});
    state.reachable.assign(scenario.n_robots, true);

    const auto& ws = scenario.workspace;
    for (std::uint32_t i = 0; i < scenario.n_robots; ++i) {
        RobotPhysState phys;
        phys.id = RobotId{i};
        const double ux = uniform_unit(state.rng);
        const double uy = uniform_unit(state.rng);
        phys.position = Position{ws.x_min + ux * ws.width(), ws.y_min + uy * ws.height()};
        phys.energy = scenario.energy_capacity;
        state.robots.push_back(phys);
        state.brains.push_back(make_brain(RobotId{i}, scenario.n_robots));
    }
    return state;
}

void act_phase(SimState& state) {
    for (std::size_t i = 0; i < state.robots.size(); ++i) act_for_robot(state, i);
    // A robot that died this iteration still broadcasts its DEAD receipt once.
    for (std::size_t i = 0; i < state.robots.size(); ++i) {
        state.reachable[i] = state.events[i].alive;
    }
}

void sync_phase(SimState& state) {
    std::vector<RobotPosition> positions;
    for (std::size_t i = 0; i < state.robots.size(); ++i) {
        if (state.reachable[i]) positions.push_back({state.robots[i].id, state.robots[i].position});
    }
    state.graph = check_connectivity(positions, state.scenario.sensing_range);
    for (const auto& [a, b] : state.graph.edges) {
        auto& sa = state.brains[a.value].schedule;
        auto& sb = state.brains[b.value].schedule;
        auto [ra, rb] = check_validation(sa, sb, state.now);
        sa = std::move(ra);
        sb = std::move(rb);
        if (state.options.trace) *state.options.trace << fmt::format("t={} sync {} {}\n", state.now, a.value, b.value);
    }
}

void expire_phase(SimState& state) {
    const auto& sc = state.scenario;
    for (auto& brain : state.brains) {
        brain.schedule =
            check_expiration(brain.schedule, brain.id, state.now, sc.expiration_threshold, sc.expiration_enabled);
    }
}

void finish_phase(SimState& state) {
    state.ledger.record(state.events);
    ++state.now;
}

void step(SimState& state) {
    if (state.now >= state.scenario.iterations) {
        throw ContractViolation(
            fmt::format("simulation already ran its {} iterations", state.scenario.iterations));
    }
    act_phase(state);
    sync_phase(state);
    expire_phase(state);
    finish_phase(state);
}

MetricsReport report(const SimState& state) {
    return MetricsReport{state.scenario.name, state.scenario.rng_seed, state.ledger.fleet_totals()};
}

MetricsReport run(const Scenario& scenario, SimOptions options) {
    auto state = init(scenario, options);
    while (state.now < scenario.iterations) step(state);
    return report(state);
}

}  // namespace forage
