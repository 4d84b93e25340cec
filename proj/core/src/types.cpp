#include "forage/types.hpp"

#include <cmath>

#include <fmt/format.h>

namespace forage {

namespace {

constexpr std::array<std::string_view, 7> kTaskTypeNames = {
    "IDLE",       "GO_TO_PICK",           "GO_TO_COLLECTION", "GO_TO_RECHARGE",
    "RECHARGING", "WAIT_FOR_RECHARGING", "DEAD",
};

}  // namespace

std::string_view to_string(TaskType type) {
    return kTaskTypeNames[static_cast<std::size_t>(type)];
}

std::optional<TaskType> parse_task_type(std::string_view name) {
    for (std::size_t i = 0; i < kTaskTypeNames.size(); ++i) {
        if (kTaskTypeNames[i] == name) return kAllTaskTypes[i];
    }
    return std::nullopt;
}

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

TaskReceipt make_idle_receipt(RobotId robot_id, Iteration timestamp, int priority) {
    TaskReceipt r;
    r.task_type = TaskType::Idle;
    r.task_location = Position{};
    r.robot_id = robot_id;
    r.timestamp = timestamp;
    r.priority = priority;
    r.dist_to_task = 0.0;
    return r;
}

void validate_receipt(const TaskReceipt& receipt) {
    if (receipt.priority != 0 && receipt.priority != 1) {
        throw ContractViolation(fmt::format("receipt for robot {} has priority {}, expected 0 or 1",
                                            receipt.robot_id.value, receipt.priority));
    }
    if (!(receipt.dist_to_task >= 0.0)) {
        throw ContractViolation(fmt::format("receipt for robot {} has negative dist_to_task {}",
                                            receipt.robot_id.value, receipt.dist_to_task));
    }
}

TaskSchedule TaskSchedule::initial(std::size_t n_robots) {
    std::vector<TaskReceipt> entries;
    entries.reserve(n_robots);
    for (std::size_t i = 0; i < n_robots; ++i) {
        entries.push_back(make_idle_receipt(RobotId{static_cast<std::uint32_t>(i)}, 0, 1));
    }
    return TaskSchedule(std::move(entries));
}

TaskSchedule TaskSchedule::from_map(const std::map<RobotId, TaskReceipt>& entries) {
    std::vector<TaskReceipt> dense;
    dense.reserve(entries.size());
    std::uint32_t expected = 0;
    for (const auto& [id, receipt] : entries) {
        if (id.value != expected) {
            throw ContractViolation(fmt::format("task schedule is missing robot {}", expected));
        }
        dense.push_back(receipt);
        ++expected;
    }
    return from_entries(std::move(dense));
}

TaskSchedule TaskSchedule::from_entries(std::vector<TaskReceipt> entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].robot_id.value != i) {
            throw ContractViolation(fmt::format("task schedule slot {} holds a receipt for robot {}", i,
                                                entries[i].robot_id.value));
        }
        validate_receipt(entries[i]);
    }
    return TaskSchedule(std::move(entries));
}

const TaskReceipt& TaskSchedule::at(RobotId id) const {
    if (id.value >= entries_.size()) {
        throw ContractViolation(fmt::format("robot {} is not in a schedule of {} robots", id.value,
                                            entries_.size()));
    }
    return entries_[id.value];
}

void TaskSchedule::set(const TaskReceipt& receipt) {
    if (receipt.robot_id.value >= entries_.size()) {
        throw ContractViolation(fmt::format("robot {} is not in a schedule of {} robots",
                                            receipt.robot_id.value, entries_.size()));
    }
    entries_[receipt.robot_id.value] = receipt;
}

std::string format_receipt_line(Iteration now, const TaskReceipt& receipt) {
    return fmt::format("t={} robot={} type={} loc=({},{}) prio={} dist={}", now, receipt.robot_id.value,
                       to_string(receipt.task_type), receipt.task_location.x, receipt.task_location.y,
                       receipt.priority, receipt.dist_to_task);
}

}  // namespace forage
