#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forage {

/// Global simulation step counter. Receipts are stamped with it; there is no wall clock.
using Iteration = std::int64_t;

/// Raised when a caller hands an operation inputs that violate its precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when user-supplied data (scenario files, CLI input) fails validation.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TaskType : std::uint8_t {
    Idle,
    GoToPick,
    GoToCollection,
    GoToRecharge,
    Recharging,
    WaitForRecharging,
    Dead,
};

inline constexpr std::array<TaskType, 7> kAllTaskTypes = {
    TaskType::Idle,         TaskType::GoToPick,   TaskType::GoToCollection,    TaskType::GoToRecharge,
    TaskType::Recharging,   TaskType::WaitForRecharging, TaskType::Dead,
};

/// Upper-snake name used in traces and serialized receipts, e.g. "GO_TO_PICK".
std::string_view to_string(TaskType type);

/// Inverse of to_string; nullopt for anything that is not one of the seven names.
std::optional<TaskType> parse_task_type(std::string_view name);

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

struct RobotId {
    std::uint32_t value = 0;

    friend auto operator<=>(const RobotId&, const RobotId&) = default;
};

struct TaskReceipt {
    TaskType task_type = TaskType::Idle;
    // Ignored for IDLE and DEAD receipts, which carry the origin.
    Position task_location{};
    RobotId robot_id{};
    // Only read while the owner is in GO_TO_COLLECTION.
    std::optional<Position> prev_task_location{};
    Iteration timestamp = 0;
    // 1: authored by robot_id itself. 0: synthesized by a peer after expiration.
    int priority = 1;
    double dist_to_task = 0.0;

    friend bool operator==(const TaskReceipt&, const TaskReceipt&) = default;
};

/// IDLE receipt with neutral location/distance.
TaskReceipt make_idle_receipt(RobotId robot_id, Iteration timestamp, int priority);

/// Throws ContractViolation if priority is outside {0,1} or dist_to_task is negative.
void validate_receipt(const TaskReceipt& receipt);

/// One robot's replica of every robot's latest known receipt.
///
/// Always holds exactly one receipt per robot id in [0, size()), stored densely
/// by id, and each slot's robot_id matches its index.
class TaskSchedule {
public:
    TaskSchedule() = default;

    /// All-IDLE schedule, priority 1, timestamp 0; the state every robot starts from.
    static TaskSchedule initial(std::size_t n_robots);

    /// Rejects maps with gaps, extra ids, or entries whose robot_id disagrees with the key.
    static TaskSchedule from_map(const std::map<RobotId, TaskReceipt>& entries);

    /// Same as from_map for a dense vector already ordered by id.
    static TaskSchedule from_entries(std::vector<TaskReceipt> entries);

    std::size_t size() const { return entries_.size(); }

    const TaskReceipt& at(RobotId id) const;

    /// Replaces the receipt for receipt.robot_id.
    void set(const TaskReceipt& receipt);

    const std::vector<TaskReceipt>& entries() const { return entries_; }

    friend bool operator==(const TaskSchedule&, const TaskSchedule&) = default;

private:
    explicit TaskSchedule(std::vector<TaskReceipt> entries) : entries_(std::move(entries)) {}

    std::vector<TaskReceipt> entries_;
};

/// `t=<iter> robot=<id> type=<TASKTYPE> loc=(<x>,<y>) prio=<p> dist=<d>`
///
/// `iter` is the iteration the line is emitted at, not the receipt timestamp.
/// Coordinates and distances use the shortest representation that reads back exactly.
std::string format_receipt_line(Iteration now, const TaskReceipt& receipt);

}  // namespace forage
