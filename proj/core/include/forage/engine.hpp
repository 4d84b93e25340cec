#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "forage/behavior.hpp"
#include "forage/metrics.hpp"
#include "forage/protocol.hpp"
#include "forage/world.hpp"

namespace forage {

struct SimOptions {
    EnergyClamp clamp = EnergyClamp::On;
    // Receipt and sync lines are written here when set.
    std::ostream* trace = nullptr;
};

/// Per-robot counts of every term of the energy model, so the final battery
/// level can be recomputed in closed form.
struct EnergyTally {
    std::int64_t drain_steps = 0;     // iterations charged the static cost
    std::int64_t pickups = 0;
    std::int64_t recharge_steps = 0;  // iterations credited a recharge
};

/// The full state of one trial.
///
/// Trajectories are a pure function of (scenario, rng_seed): the generator
/// is std::mt19937_64 and initial coordinates are built from its raw 64-bit
/// output, so no implementation-defined distribution is involved.
struct SimState {
    Scenario scenario;
    SimOptions options;
    std::vector<RobotPhysState> robots;
    StationOccupancy stations;
    std::vector<RobotBrain> brains;
    Iteration now = 0;
    std::mt19937_64 rng;
    MetricsLedger ledger;
    std::vector<EnergyTally> tallies;
    // Populated by the act phase and consumed by record_metrics.
    std::vector<RobotStepEvent> events;
    // Robots that take part in this iteration's sync: alive, or died this iteration.
    std::vector<bool> reachable;
    ConnectivityGraph graph;
};

/// Uniform sample in [0, 1) from the top 53 bits of one generator draw.
double uniform_unit(std::mt19937_64& rng);

/// Validates the scenario and places robots uniformly at random in the workspace.
SimState init(const Scenario& scenario, SimOptions options = {});

// The phases of one iteration, in the order step() runs them. Exposed so tests
// can observe the state between phases.

/// Decide, move, account energy and author own receipts, robot by robot in id order.
void act_phase(SimState& state);
/// Builds the connectivity graph and validates every edge in ascending order.
void sync_phase(SimState& state);
/// Applies expiration to every robot's schedule.
void expire_phase(SimState& state);
/// Records metrics and advances the clock.
void finish_phase(SimState& state);

/// One full iteration. Requires now < scenario.iterations.
void step(SimState& state);

MetricsReport report(const SimState& state);

/// init, then step until the iteration budget is spent.
MetricsReport run(const Scenario& scenario, SimOptions options = {});

}  // namespace forage
