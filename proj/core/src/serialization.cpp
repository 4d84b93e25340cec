#include "forage/serialization.hpp"

#include <json.hpp>

namespace forage {

namespace {

using nlohmann::json;

json position_to_json(const Position& p) { return json::array({p.x, p.y}); }

Position position_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("position must be a [x, y] array");
    return Position{j.at(0).get<double>(), j.at(1).get<double>()};
}

json receipt_to_json(const TaskReceipt& r) {
    json j;
    j["task_type"] = std::string(to_string(r.task_type));
    j["task_location"] = position_to_json(r.task_location);
    j["robot_id"] = r.robot_id.value;
    j["prev_task_location"] = r.prev_task_location ? position_to_json(*r.prev_task_location) : json(nullptr);
    j["timestamp"] = r.timestamp;
    j["priority"] = r.priority;
    j["dist_to_task"] = r.dist_to_task;
    return j;
}

TaskReceipt receipt_from_json(const json& j) {
    try {
        TaskReceipt r;
        const auto type = parse_task_type(j.at("task_type").get<std::string>());
        if (!type) throw ValidationError("unknown task_type " + j.at("task_type").dump());
        r.task_type = *type;
        r.task_location = position_from_json(j.at("task_location"));
        r.robot_id = RobotId{j.at("robot_id").get<std::uint32_t>()};
        if (j.contains("prev_task_location") && !j.at("prev_task_location").is_null()) {
            r.prev_task_location = position_from_json(j.at("prev_task_location"));
        }
        r.timestamp = j.at("timestamp").get<Iteration>();
        r.priority = j.at("priority").get<int>();
        r.dist_to_task = j.at("dist_to_task").get<double>();
        validate_receipt(r);
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed task receipt: ") + e.what());
    }
}

}  // namespace

std::string encode_receipt(const TaskReceipt& receipt) { return receipt_to_json(receipt).dump(); }

TaskReceipt decode_receipt(const std::string& text) {
    try {
        return receipt_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed task receipt: ") + e.what());
    }
}

std::string encode_schedule(const TaskSchedule& schedule) {
    json arr = json::array();
    for (const auto& r : schedule.entries()) arr.push_back(receipt_to_json(r));
    return arr.dump();
}

TaskSchedule decode_schedule(const std::string& text) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed task schedule: ") + e.what());
    }
    if (!arr.is_array()) throw ValidationError("task schedule must be a JSON array");
    std::map<RobotId, TaskReceipt> entries;
    for (const auto& j : arr) {
        auto r = receipt_from_json(j);
        if (!entries.emplace(r.robot_id, r).second) {
            throw ValidationError("task schedule lists robot " + std::to_string(r.robot_id.value) + " twice");
        }
    }
    try {
        return TaskSchedule::from_map(entries);
    } catch (const ContractViolation& e) {
        throw ValidationError(e.what());
    }
}

}  // namespace forage
