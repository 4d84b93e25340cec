#pragma once

#include <span>
#include <utility>
#include <vector>

#include "forage/types.hpp"

namespace forage {

/// Undirected communication graph under a disk model.
///
/// Robots i and j are linked iff their distance is strictly below the sensing
/// range. Edges are stored as (lo, hi) pairs with lo < hi, sorted ascending,
/// which is also the order the engine synchronizes them in.
struct ConnectivityGraph {
    std::vector<std::pair<RobotId, RobotId>> edges;
    double sensing_range = 0.0;

    bool connected(RobotId a, RobotId b) const;
};

struct RobotPosition {
    RobotId id;
    Position position;
};

/// Pairwise distance check over every robot pair.
///
/// Throws ValidationError on duplicate ids or a non-positive range.
ConnectivityGraph check_connectivity(std::span<const RobotPosition> positions, double sensing_range);

/// Replaces stale peer receipts with synthesized IDLE receipts.
///
/// A receipt is stale when now - timestamp exceeds the threshold. Only
/// owner-authored (priority 1) receipts of other robots are replaced; the
/// replacement has priority 0 and timestamp `now`. Identity when disabled.
TaskSchedule check_expiration(const TaskSchedule& schedule, RobotId self_id, Iteration now,
                              Iteration expiration_threshold, bool enabled);

/// Winner of two receipts for the same robot: higher priority, then later
/// timestamp, then `a` (the local copy) on a full tie.
const TaskReceipt& merge_receipt_pair(const TaskReceipt& a, const TaskReceipt& b);

/// At most one GO_TO_PICK claim per treasure location survives: the one
/// closest to the treasure, lower robot id on equal distance. Losers become
/// IDLE at `now`, keeping their priority.
TaskSchedule resolve_pick_conflicts(const TaskSchedule& schedule, Iteration now);

/// Pairwise validation when two robots are in contact. Both returned schedules
/// are identical.
std::pair<TaskSchedule, TaskSchedule> check_validation(const TaskSchedule& sched_a, const TaskSchedule& sched_b,
                                                       Iteration now);

}  // namespace forage
