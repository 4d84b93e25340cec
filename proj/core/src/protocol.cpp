#include "forage/protocol.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace forage {

bool ConnectivityGraph::connected(RobotId a, RobotId b) const {
    const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
    return std::binary_search(edges.begin(), edges.end(), key);
}

ConnectivityGraph check_connectivity(std::span<const RobotPosition> positions, double sensing_range) {
    if (!(sensing_range > 0.0)) {
        throw ValidationError(fmt::format("sensing_range must be > 0, got {}", sensing_range));
    }
    std::set<RobotId> seen;
    for (const auto& rp : positions) {
        if (!seen.insert(rp.id).second) {
            throw ValidationError(fmt::format("duplicate robot id {} in connectivity input", rp.id.value));
        }
    }

    ConnectivityGraph graph;
    graph.sensing_range = sensing_range;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            if (distance(positions[i].position, positions[j].position) < sensing_range) {
                auto a = positions[i].id;
                auto b = positions[j].id;
                graph.edges.emplace_back(std::min(a, b), std::max(a, b));
            }
        }
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

TaskSchedule check_expiration(const TaskSchedule& schedule, RobotId self_id, Iteration now,
                              Iteration expiration_threshold, bool enabled) {
    if (!enabled) return schedule;
    TaskSchedule out = schedule;
    for (const auto& receipt : schedule.entries()) {
        if (now - receipt.timestamp > expiration_threshold && receipt.priority > 0 && receipt.robot_id != self_id) {
            out.set(make_idle_receipt(receipt.robot_id, now, 0));
        }
    }
    return out;
}

const TaskReceipt& merge_receipt_pair(const TaskReceipt& a, const TaskReceipt& b) {
    if (a.robot_id != b.robot_id) {
        throw ContractViolation(
            fmt::format("cannot merge receipts of robots {} and {}", a.robot_id.value, b.robot_id.value));
    }
    if (a.priority != b.priority) return a.priority > b.priority ? a : b;
    if (a.timestamp < b.timestamp) return b;
    return a;
}

TaskSchedule resolve_pick_conflicts(const TaskSchedule& schedule, Iteration now) {
    const auto& entries = schedule.entries();
    std::vector<std::size_t> claims;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].task_type == TaskType::GoToPick) claims.push_back(i);
    }
    if (claims.size() < 2) return schedule;

    TaskSchedule out = schedule;
    std::vector<bool> done(claims.size(), false);
    for (std::size_t c = 0; c < claims.size(); ++c) {
        if (done[c]) continue;
        const Position site = entries[claims[c]].task_location;
        std::size_t winner = claims[c];
        std::vector<std::size_t> group;
        for (std::size_t d = c; d < claims.size(); ++d) {
            const auto& r = entries[claims[d]];
            if (done[d] || r.task_location != site) continue;
            done[d] = true;
            group.push_back(claims[d]);
            const auto& best = entries[winner];
            if (r.dist_to_task < best.dist_to_task ||
                (r.dist_to_task == best.dist_to_task && r.robot_id < best.robot_id)) {
                winner = claims[d];
            }
        }
        for (auto idx : group) {
            if (idx == winner) continue;
            out.set(make_idle_receipt(entries[idx].robot_id, now, entries[idx].priority));
        }
    }
    return out;
}

std::pair<TaskSchedule, TaskSchedule> check_validation(const TaskSchedule& sched_a, const TaskSchedule& sched_b,
                                                       Iteration now) {
    if (sched_a.size() != sched_b.size()) {
        throw ContractViolation(fmt::format("cannot validate schedules over {} and {} robots", sched_a.size(),
                                            sched_b.size()));
    }
    std::vector<TaskReceipt> merged;
    merged.reserve(sched_a.size());
    for (std::size_t i = 0; i < sched_a.size(); ++i) {
        merged.push_back(merge_receipt_pair(sched_a.entries()[i], sched_b.entries()[i]));
    }
    // Both sides hold the same merged schedule, so one resolution serves both.
    auto resolved = resolve_pick_conflicts(TaskSchedule::from_entries(std::move(merged)), now);
    return {resolved, resolved};
}

}  // namespace forage
