#include "forage/world.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace forage {

std::vector<std::string> scenario_errors(const Scenario& s) {
    std::vector<std::string> errors;
    auto finite = [](double v) { return std::isfinite(v); };

    const auto& w = s.workspace;
    if (!(finite(w.x_min) && finite(w.x_max) && finite(w.y_min) && finite(w.y_max)) || !(w.x_min < w.x_max) ||
        !(w.y_min < w.y_max)) {
        errors.push_back("workspace: must be a finite rectangle with min < max on both axes");
    }
    auto check_site = [&](const std::string& field, const Position& p) {
        if (!finite(p.x) || !finite(p.y) || !w.contains(p)) {
            errors.push_back(fmt::format("{}: ({}, {}) lies outside the workspace", field, p.x, p.y));
        }
    };
    if (s.treasures.empty()) errors.push_back("treasures: at least one treasure is required");
    for (std::size_t i = 0; i < s.treasures.size(); ++i) check_site(fmt::format("treasures[{}]", i), s.treasures[i]);
    if (s.rechargers.empty()) errors.push_back("rechargers: at least one recharger is required");
    for (std::size_t i = 0; i < s.rechargers.size(); ++i) {
        check_site(fmt::format("rechargers[{}]", i), s.rechargers[i]);
    }
    check_site("collection_point", s.collection_point);

    if (s.n_robots < 1) errors.push_back("n_robots: must be >= 1");
    if (!(s.sensing_range > 0.0) || !finite(s.sensing_range)) {
        errors.push_back(fmt::format("sensing_range: must be > 0, got {}", s.sensing_range));
    }
    if (s.expiration_threshold < 0) {
        errors.push_back(fmt::format("expiration_threshold: must be >= 0, got {}", s.expiration_threshold));
    }
    if (s.iterations < 0) errors.push_back(fmt::format("iterations: must be >= 0, got {}", s.iterations));
    if (!(s.clearance > 0.0) || !finite(s.clearance)) {
        errors.push_back(fmt::format("clearance: must be > 0, got {}", s.clearance));
    }
    if (!(s.step_length > 0.0) || !finite(s.step_length)) {
        errors.push_back(fmt::format("step_length: must be > 0, got {}", s.step_length));
    }
    const auto& e = s.energy;
    for (auto [name, v] : {std::pair{"alpha", e.alpha}, {"beta", e.beta}, {"gamma", e.gamma}, {"delta", e.delta}}) {
        if (!(v >= 0.0) || !finite(v)) errors.push_back(fmt::format("energy.{}: must be >= 0, got {}", name, v));
    }
    if (!(s.energy_capacity > 0.0) || !finite(s.energy_capacity)) {
        errors.push_back(fmt::format("energy_capacity: must be > 0, got {}", s.energy_capacity));
    }
    if (!(s.recharge_trigger_fraction > 0.0 && s.recharge_trigger_fraction < 1.0)) {
        errors.push_back(
            fmt::format("recharge_trigger_fraction: must lie in (0, 1), got {}", s.recharge_trigger_fraction));
    }
    return errors;
}

void validate_scenario(const Scenario& scenario) {
    const auto errors = scenario_errors(scenario);
    if (errors.empty()) return;
    throw ValidationError(fmt::format("invalid scenario '{}': {}", scenario.name, fmt::join(errors, "; ")));
}

MotionResult step_motion(const RobotPhysState& robot, const Position& target, double step_length, double clearance) {
    MotionResult result{robot, false, 0.0};
    const double remaining = distance(robot.position, target);
    if (remaining < clearance) {
        result.arrived = true;
        return result;
    }
    if (remaining <= step_length) {
        result.robot.position = target;
        result.moved = remaining;
    } else {
        const double scale = step_length / remaining;
        result.robot.position.x += (target.x - robot.position.x) * scale;
        result.robot.position.y += (target.y - robot.position.y) * scale;
        result.moved = step_length;
    }
    result.robot.distance_traveled += result.moved;
    result.arrived = distance(result.robot.position, target) < clearance;
    return result;
}

RobotPhysState consume_energy(const RobotPhysState& robot, double moved, bool picked_this_step,
                              const EnergyParams& params, EnergyClamp clamp) {
    RobotPhysState out = robot;
    out.energy -= params.alpha * 1.0 + params.beta * moved + params.gamma * (picked_this_step ? 1.0 : 0.0);
    if (out.energy <= 0.0) {
        out.alive = false;
        if (clamp == EnergyClamp::On) out.energy = 0.0;
    }
    return out;
}

RobotPhysState recharge_energy(const RobotPhysState& robot, double delta, double capacity, EnergyClamp clamp) {
    if (!robot.alive) throw ContractViolation(fmt::format("robot {} is dead and cannot recharge", robot.id.value));
    RobotPhysState out = robot;
    out.energy += delta * 1.0;
    if (clamp == EnergyClamp::On) out.energy = std::min(capacity, out.energy);
    return out;
}

void StationOccupancy::check_station(std::size_t station) const {
    if (station >= stations_.size()) {
        throw ContractViolation(fmt::format("station {} does not exist ({} stations)", station, stations_.size()));
    }
}

bool StationOccupancy::request(std::size_t station, RobotId robot) {
    check_station(station);
    if (station_of(robot)) {
        throw ContractViolation(fmt::format("robot {} already holds a recharger slot", robot.value));
    }
    auto& slot = stations_[station];
    if (!slot.occupant) {
        slot.occupant = robot;
        return true;
    }
    slot.queue.push_back(robot);
    return false;
}

std::optional<RobotId> StationOccupancy::release(RobotId robot) {
    for (auto& slot : stations_) {
        if (slot.occupant == robot) {
            slot.occupant.reset();
            if (!slot.queue.empty()) {
                slot.occupant = slot.queue.front();
                slot.queue.pop_front();
            }
            return slot.occupant;
        }
        auto it = std::find(slot.queue.begin(), slot.queue.end(), robot);
        if (it != slot.queue.end()) {
            slot.queue.erase(it);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<RobotId> StationOccupancy::occupant(std::size_t station) const {
    check_station(station);
    return stations_[station].occupant;
}

const std::deque<RobotId>& StationOccupancy::queue(std::size_t station) const {
    check_station(station);
    return stations_[station].queue;
}

std::optional<std::size_t> StationOccupancy::station_of(RobotId robot) const {
    for (std::size_t i = 0; i < stations_.size(); ++i) {
        const auto& slot = stations_[i];
        if (slot.occupant == robot) return i;
        if (std::find(slot.queue.begin(), slot.queue.end(), robot) != slot.queue.end()) return i;
    }
    return std::nullopt;
}

StationRequestResult station_request(const StationOccupancy& occ, std::size_t station, RobotId robot) {
    StationRequestResult result{occ, false};
    result.granted = result.occupancy.request(station, robot);
    return result;
}

}  // namespace forage
