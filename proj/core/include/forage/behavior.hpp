#pragma once

#include <optional>

#include "forage/types.hpp"
#include "forage/world.hpp"

namespace forage {

/// One robot's decision state plus its replica of the fleet's task schedule.
///
/// `current` mirrors the robot's own schedule entry once the robot has
/// authored its receipt for the iteration. Between the sync phase and the
/// robot's next decision a pick-conflict demotion may make them disagree;
/// reconcile_with_schedule() accepts the demotion.
struct RobotBrain {
    RobotId id{};
    TaskSchedule schedule;
    TaskType current = TaskType::Idle;
    std::optional<Position> target;
    // Treasure the robot is carrying from; set on pickup.
    std::optional<Position> prev_target;
};

RobotBrain make_brain(RobotId id, std::size_t n_robots);

/// True for the three states in which the robot is bound to a recharger.
bool is_recharge_state(TaskType type);

/// Drops a GO_TO_PICK claim that validation rewrote to IDLE in the robot's
/// own schedule entry.
RobotBrain reconcile_with_schedule(const RobotBrain& brain);

/// Nearest treasure not claimed by any GO_TO_PICK receipt in the local
/// schedule. Stays IDLE when every treasure looks claimed.
RobotBrain select_task(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario, Iteration now);

/// Switches to GO_TO_RECHARGE toward the nearest recharger when energy drops
/// below the trigger fraction of capacity. Carried treasure stays in hand.
RobotBrain maybe_go_recharge(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario,
                             Iteration now);

struct ArrivalOutcome {
    RobotBrain brain;
    RobotPhysState phys;
    bool picked = false;
    bool completed = false;
};

/// Handles arriving at the current target. Recharger arrivals register with
/// `stations` and end up RECHARGING or WAIT_FOR_RECHARGING.
///
/// Throws ContractViolation for IDLE, DEAD, RECHARGING and WAIT_FOR_RECHARGING.
ArrivalOutcome on_arrival(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario,
                          StationOccupancy& stations, Iteration now);

struct RechargeOutcome {
    RobotBrain brain;
    bool release = false;
};

/// Ends a recharge once the battery is full: back to GO_TO_COLLECTION when
/// carrying, else IDLE. The caller frees the station when release is set.
RechargeOutcome recharge_tick(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario,
                              Iteration now);

/// Own receipt for this iteration: priority 1, timestamp now, distance from
/// the current position to the target.
TaskReceipt author_receipt(const RobotBrain& brain, const RobotPhysState& phys, Iteration now);

/// Index of the recharger nearest to `from` (lowest index on ties).
std::size_t nearest_recharger(const Scenario& scenario, const Position& from);

}  // namespace forage
