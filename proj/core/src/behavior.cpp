#include "forage/behavior.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

namespace forage {

namespace {

std::optional<std::size_t> recharger_index(const Scenario& scenario, const Position& site) {
    for (std::size_t i = 0; i < scenario.rechargers.size(); ++i) {
        if (scenario.rechargers[i] == site) return i;
    }
    return std::nullopt;
}

bool claimed_by_peer(const TaskSchedule& schedule, RobotId self, const Position& site) {
    return std::any_of(schedule.entries().begin(), schedule.entries().end(), [&](const TaskReceipt& r) {
        return r.robot_id != self && r.task_type == TaskType::GoToPick && r.task_location == site;
    });
}

RobotBrain with_own_receipt(RobotBrain brain, const RobotPhysState& phys, Iteration now) {
    brain.schedule.set(author_receipt(brain, phys, now));
    return brain;
}

}  // namespace

RobotBrain make_brain(RobotId id, std::size_t n_robots) {
    RobotBrain brain;
    brain.id = id;
    brain.schedule = TaskSchedule::initial(n_robots);
    return brain;
}

bool is_recharge_state(TaskType type) {
    return type == TaskType::GoToRecharge || type == TaskType::Recharging || type == TaskType::WaitForRecharging;
}

std::size_t nearest_recharger(const Scenario& scenario, const Position& from) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scenario.rechargers.size(); ++i) {
        const double d = distance(from, scenario.rechargers[i]);
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }
    return best;
}

RobotBrain reconcile_with_schedule(const RobotBrain& brain) {
    if (brain.current != TaskType::GoToPick) return brain;
    if (brain.schedule.at(brain.id).task_type != TaskType::Idle) return brain;
    RobotBrain out = brain;
    out.current = TaskType::Idle;
    out.target.reset();
    return out;
}

RobotBrain select_task(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario, Iteration now) {
    if (brain.current != TaskType::Idle) {
        throw ContractViolation(
            fmt::format("robot {} cannot select a task while {}", brain.id.value, to_string(brain.current)));
    }
    std::optional<Position> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& site : scenario.treasures) {
        if (claimed_by_peer(brain.schedule, brain.id, site)) continue;
        const double d = distance(phys.position, site);
        if (d < best_dist) {
            best = site;
            best_dist = d;
        }
    }
    if (!best) return brain;

    RobotBrain out = brain;
    out.current = TaskType::GoToPick;
    out.target = *best;
    return with_own_receipt(std::move(out), phys, now);
}

RobotBrain maybe_go_recharge(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario,
                             Iteration now) {
    if (is_recharge_state(brain.current) || brain.current == TaskType::Dead) return brain;
    if (!(phys.energy < scenario.recharge_trigger_fraction * scenario.energy_capacity)) return brain;

    RobotBrain out = brain;
    out.current = TaskType::GoToRecharge;
    out.target = scenario.rechargers[nearest_recharger(scenario, phys.position)];
    return with_own_receipt(std::move(out), phys, now);
}

ArrivalOutcome on_arrival(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario,
                          StationOccupancy& stations, Iteration now) {
    ArrivalOutcome out{brain, phys, false, false};
    switch (brain.current) {
        case TaskType::GoToPick:
            if (!phys.carrying) {
                out.phys.carrying = true;
                out.picked = true;
            }
            out.brain.prev_target = brain.target;
            out.brain.current = TaskType::GoToCollection;
            out.brain.target = scenario.collection_point;
            break;
        case TaskType::GoToCollection:
            if (phys.carrying) {
                out.phys.carrying = false;
                out.completed = true;
            }
            out.brain.current = TaskType::Idle;
            out.brain.target.reset();
            out.brain.prev_target.reset();
            break;
        case TaskType::GoToRecharge: {
            const auto station = brain.target ? recharger_index(scenario, *brain.target) : std::nullopt;
            if (!station) {
                throw ContractViolation(fmt::format("robot {} is heading to a recharger that does not exist",
                                                    brain.id.value));
            }
            const bool granted = stations.request(*station, brain.id);
            out.brain.current = granted ? TaskType::Recharging : TaskType::WaitForRecharging;
            break;
        }
        default:
            throw ContractViolation(
                fmt::format("robot {} cannot arrive while {}", brain.id.value, to_string(brain.current)));
    }
    out.brain = with_own_receipt(std::move(out.brain), out.phys, now);
    return out;
}

RechargeOutcome recharge_tick(const RobotBrain& brain, const RobotPhysState& phys, const Scenario& scenario,
                              Iteration now) {
    if (brain.current != TaskType::Recharging) {
        throw ContractViolation(
            fmt::format("robot {} is not recharging ({})", brain.id.value, to_string(brain.current)));
    }
    if (phys.energy < scenario.energy_capacity) return {brain, false};

    RobotBrain out = brain;
    if (phys.carrying) {
        out.current = TaskType::GoToCollection;
        out.target = scenario.collection_point;
    } else {
        out.current = TaskType::Idle;
        out.target.reset();
    }
    return {with_own_receipt(std::move(out), phys, now), true};
}

TaskReceipt author_receipt(const RobotBrain& brain, const RobotPhysState& phys, Iteration now) {
    if (brain.current == TaskType::Idle || brain.current == TaskType::Dead || !brain.target) {
        TaskReceipt r = make_idle_receipt(brain.id, now, 1);
        r.task_type = brain.current;
        return r;
    }
    TaskReceipt r;
    r.task_type = brain.current;
    r.task_location = *brain.target;
    r.robot_id = brain.id;
    if (brain.current == TaskType::GoToCollection) r.prev_task_location = brain.prev_target;
    r.timestamp = now;
    r.priority = 1;
    r.dist_to_task = distance(phys.position, *brain.target);
    return r;
}

}  // namespace forage
