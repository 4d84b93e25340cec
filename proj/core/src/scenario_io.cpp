#include "forage/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "scenario_json.hpp"

namespace forage {

namespace {

using nlohmann::json;

Position read_position(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError(fmt::format("{}: expected [x, y] array of numbers", field));
    }
    return Position{j[0].get<double>(), j[1].get<double>()};
}

std::vector<Position> read_positions(const json& j, const std::string& field) {
    if (!j.is_array()) throw ValidationError(fmt::format("{}: expected an array of [x, y] pairs", field));
    std::vector<Position> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_position(j[i], fmt::format("{}[{}]", field, i)));
    return out;
}

json write_position(const Position& p) { return json::array({p.x, p.y}); }

json write_positions(const std::vector<Position>& ps) {
    json arr = json::array();
    for (const auto& p : ps) arr.push_back(write_position(p));
    return arr;
}

const std::set<std::string> kScenarioKeys = {
    "name",          "workspace",    "treasures",      "rechargers",      "collection_point",
    "n_robots",      "sensing_range", "expiration_threshold", "expiration_enabled", "iterations",
    "clearance",     "step_length",  "energy",          "energy_capacity", "recharge_trigger_fraction",
    "rng_seed",
};

}  // namespace

namespace detail {

Scenario apply_scenario_json(const json& doc, const Scenario& base) {
    if (!doc.is_object()) throw ValidationError("scenario: expected a JSON object");
    Scenario s = base;
    std::vector<std::string> errors;

    for (const auto& [key, value] : doc.items()) {
        if (!kScenarioKeys.count(key)) errors.push_back(fmt::format("{}: unknown field", key));
    }

    auto field = [&](const char* key, auto&& assign) {
        if (!doc.contains(key)) return;
        try {
            assign(doc.at(key));
        } catch (const ValidationError& e) {
            errors.push_back(e.what());
        } catch (const json::exception&) {
            errors.push_back(fmt::format("{}: wrong type ({})", key, doc.at(key).dump()));
        }
    };
    auto number = [](const json& j) {
        if (!j.is_number()) throw json::type_error::create(302, "expected number", nullptr);
        return j.get<double>();
    };
    auto integer = [](const json& j) {
        if (!j.is_number_integer()) throw json::type_error::create(302, "expected integer", nullptr);
        return j.get<std::int64_t>();
    };

    field("name", [&](const json& j) { s.name = j.get<std::string>(); });
    field("workspace", [&](const json& j) {
        if (!j.is_object()) throw ValidationError("workspace: expected object with x_min, x_max, y_min, y_max");
        for (const auto& [k, v] : j.items()) {
            if (k == "x_min") s.workspace.x_min = number(v);
            else if (k == "x_max") s.workspace.x_max = number(v);
            else if (k == "y_min") s.workspace.y_min = number(v);
            else if (k == "y_max") s.workspace.y_max = number(v);
            else throw ValidationError(fmt::format("workspace.{}: unknown field", k));
        }
    });
    field("treasures", [&](const json& j) { s.treasures = read_positions(j, "treasures"); });
    field("rechargers", [&](const json& j) { s.rechargers = read_positions(j, "rechargers"); });
    field("collection_point", [&](const json& j) { s.collection_point = read_position(j, "collection_point"); });
    field("n_robots", [&](const json& j) {
        const auto n = integer(j);
        if (n < 1) throw ValidationError(fmt::format("n_robots: must be >= 1, got {}", n));
        s.n_robots = static_cast<std::uint32_t>(n);
    });
    field("sensing_range", [&](const json& j) { s.sensing_range = number(j); });
    field("expiration_threshold", [&](const json& j) { s.expiration_threshold = integer(j); });
    field("expiration_enabled", [&](const json& j) { s.expiration_enabled = j.get<bool>(); });
    field("iterations", [&](const json& j) { s.iterations = integer(j); });
    field("clearance", [&](const json& j) { s.clearance = number(j); });
    field("step_length", [&](const json& j) { s.step_length = number(j); });
    field("energy", [&](const json& j) {
        if (!j.is_object()) throw ValidationError("energy: expected object with alpha, beta, gamma, delta");
        for (const auto& [k, v] : j.items()) {
            if (k == "alpha") s.energy.alpha = number(v);
            else if (k == "beta") s.energy.beta = number(v);
            else if (k == "gamma") s.energy.gamma = number(v);
            else if (k == "delta") s.energy.delta = number(v);
            else throw ValidationError(fmt::format("energy.{}: unknown field", k));
        }
    });
    field("energy_capacity", [&](const json& j) { s.energy_capacity = number(j); });
    field("recharge_trigger_fraction", [&](const json& j) { s.recharge_trigger_fraction = number(j); });
    field("rng_seed", [&](const json& j) {
        if (!j.is_number_unsigned()) throw ValidationError("rng_seed: must be a non-negative integer");
        s.rng_seed = j.get<std::uint64_t>();
    });

    if (errors.empty()) {
        errors = scenario_errors(s);
    }
    if (!errors.empty()) {
        throw ValidationError(fmt::format("invalid scenario '{}': {}", s.name, fmt::join(errors, "; ")));
    }
    return s;
}

}  // namespace detail

Scenario parse_scenario(const std::string& json_text, const Scenario& base) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(fmt::format("scenario is not valid JSON: {}", e.what()));
    }
    return detail::apply_scenario_json(doc, base);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot read scenario file '{}'", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    Scenario base;
    base.name = path.stem().string();
    return parse_scenario(buf.str(), base);
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["workspace"] = {{"x_min", s.workspace.x_min},
                      {"x_max", s.workspace.x_max},
                      {"y_min", s.workspace.y_min},
                      {"y_max", s.workspace.y_max}};
    j["treasures"] = write_positions(s.treasures);
    j["rechargers"] = write_positions(s.rechargers);
    j["collection_point"] = write_position(s.collection_point);
    j["n_robots"] = s.n_robots;
    j["sensing_range"] = s.sensing_range;
    j["expiration_threshold"] = s.expiration_threshold;
    j["expiration_enabled"] = s.expiration_enabled;
    j["iterations"] = s.iterations;
    j["clearance"] = s.clearance;
    j["step_length"] = s.step_length;
    j["energy"] = {{"alpha", s.energy.alpha},
                   {"beta", s.energy.beta},
                   {"gamma", s.energy.gamma},
                   {"delta", s.energy.delta}};
    j["energy_capacity"] = s.energy_capacity;
    j["recharge_trigger_fraction"] = s.recharge_trigger_fraction;
    j["rng_seed"] = s.rng_seed;
    return j.dump(2);
}

}  // namespace forage
