#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "forage/types.hpp"

namespace forage {

struct Rect {
    double x_min = -1.6;
    double x_max = 1.6;
    double y_min = -1.0;
    double y_max = 1.0;

    bool contains(const Position& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct EnergyParams {
    double alpha = 0.01;  // static drain per iteration
    double beta = 0.1;    // per meter moved
    double gamma = 0.02;  // per treasure pickup
    double delta = 0.1;   // recharge per iteration at a station

    friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

/// Everything that defines one experiment configuration. Defaults reproduce
/// the five-treasure, sensing-range-0.5, expiration-enabled case.
struct Scenario {
    std::string name = "default";
    Rect workspace{};
    std::vector<Position> treasures{
        {-1.28, -0.5}, {-0.64, -0.5}, {0.0, -0.5}, {0.64, -0.5}, {1.28, -0.5},
    };
    std::vector<Position> rechargers{{-1.4, 0.8}, {1.4, 0.8}};
    Position collection_point{-1.4, -0.8};
    std::uint32_t n_robots = 5;
    double sensing_range = 0.5;
    Iteration expiration_threshold = 400;
    bool expiration_enabled = true;
    Iteration iterations = 10000;
    double clearance = 0.1;
    double step_length = 0.0066;
    EnergyParams energy{};
    double energy_capacity = 100.0;
    double recharge_trigger_fraction = 0.3;
    std::uint64_t rng_seed = 0;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Every violated constraint, one message per offending field, each message
/// starting with the field name. Empty when the scenario is valid.
std::vector<std::string> scenario_errors(const Scenario& scenario);

/// Throws ValidationError listing every entry of scenario_errors.
void validate_scenario(const Scenario& scenario);

struct RobotPhysState {
    RobotId id{};
    Position position{};
    double energy = 0.0;
    bool carrying = false;
    bool alive = true;
    double distance_traveled = 0.0;
};

/// Whether energy updates clamp to [0, capacity]. Unclamped mode exists so the
/// energy ledger can be checked in closed form; a robot still dies at <= 0.
enum class EnergyClamp { On, Off };

struct MotionResult {
    RobotPhysState robot;
    bool arrived = false;
    double moved = 0.0;
};

/// Straight-line move toward target by at most step_length. A robot already
/// within clearance does not move.
MotionResult step_motion(const RobotPhysState& robot, const Position& target, double step_length, double clearance);

RobotPhysState consume_energy(const RobotPhysState& robot, double moved, bool picked_this_step,
                              const EnergyParams& params, EnergyClamp clamp = EnergyClamp::On);

RobotPhysState recharge_energy(const RobotPhysState& robot, double delta, double capacity,
                               EnergyClamp clamp = EnergyClamp::On);

/// Exclusive recharger slots with FIFO wait queues.
class StationOccupancy {
public:
    StationOccupancy() = default;
    explicit StationOccupancy(std::size_t n_stations) : stations_(n_stations) {}

    std::size_t size() const { return stations_.size(); }

    /// Occupy the station if free, else join its queue. Returns true when granted.
    /// Throws ContractViolation if the robot already holds a slot anywhere.
    bool request(std::size_t station, RobotId robot);

    /// Drops the robot from whatever slot it holds; if it was an occupant the
    /// queue head is promoted. Returns the promoted robot, if any.
    std::optional<RobotId> release(RobotId robot);

    std::optional<RobotId> occupant(std::size_t station) const;
    const std::deque<RobotId>& queue(std::size_t station) const;

    /// Station index where the robot occupies or waits, if any.
    std::optional<std::size_t> station_of(RobotId robot) const;

private:
    struct Slot {
        std::optional<RobotId> occupant;
        std::deque<RobotId> queue;
    };

    void check_station(std::size_t station) const;

    std::vector<Slot> stations_;
};

struct StationRequestResult {
    StationOccupancy occupancy;
    bool granted = false;
};

StationRequestResult station_request(const StationOccupancy& occ, std::size_t station, RobotId robot);

}  // namespace forage
