#include "mvr/sim/scenario.hpp"

#include <fstream>
#include <sstream>

#include "mvr/codec.hpp"
#include "mvr/errors.hpp"

namespace mvr::sim {

using nlohmann::json;

json step_to_json(const Step& step) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SetStep>) {
                json j{{"op", "set"}, {"replica", s.replica.id}};
                j["value"] = s.value.has_value() ? *s.value : json(nullptr);
                return j;
            } else if constexpr (std::is_same_v<T, UndoStep>) {
                return json{{"op", "undo"}, {"replica", s.replica.id}};
            } else if constexpr (std::is_same_v<T, RedoStep>) {
                return json{{"op", "redo"}, {"replica", s.replica.id}};
            } else if constexpr (std::is_same_v<T, SyncStep>) {
                return json{
                    {"op", "sync"}, {"from", s.from.id}, {"to", s.to.id}};
            } else if constexpr (std::is_same_v<T, SyncAllStep>) {
                return json{{"op", "syncAll"}};
            } else if constexpr (std::is_same_v<T, CheckStep>) {
                return json{{"op", "check"},
                            {"replica", s.replica.id},
                            {"values", s.expected}};
            } else {
                static_assert(std::is_same_v<T, CheckStacksStep>);
                json undo = json::array();
                for (const OpId& id : s.undo) undo.push_back(opid_to_json(id));
                json redo = json::array();
                for (const OpId& id : s.redo) redo.push_back(opid_to_json(id));
                return json{{"op", "checkStacks"},
                            {"replica", s.replica.id},
                            {"undo", std::move(undo)},
                            {"redo", std::move(redo)}};
            }
        },
        step);
}

namespace {

const json& require(const json& j, const char* field, const std::string& where) {
    auto it = j.find(field);
    if (it == j.end()) {
        throw ParseError(where + ": missing field '" + field + "'");
    }
    return *it;
}

ReplicaId replica_field(const json& j, const char* field,
                        const std::string& where) {
    const json& v = require(j, field, where);
    if (!v.is_string() || v.get<std::string>().empty()) {
        throw ParseError(where + "." + field + ": must be a non-empty string");
    }
    return ReplicaId{v.get<std::string>()};
}

std::vector<OpId> opid_list(const json& j, const char* field,
                            const std::string& where) {
    const json& v = require(j, field, where);
    if (!v.is_array()) {
        throw ParseError(where + "." + field + ": must be an array");
    }
    std::vector<OpId> ids;
    ids.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ids.push_back(opid_from_json(
            v[i], where + "." + field + "[" + std::to_string(i) + "]"));
    }
    return ids;
}

Step step_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ParseError(where + ": expected a JSON object");
    }
    const json& op = require(j, "op", where);
    if (!op.is_string()) {
        throw ParseError(where + ".op: must be a string");
    }
    std::string kind = op.get<std::string>();
    if (kind == "set") {
        SetStep s{replica_field(j, "replica", where), std::nullopt};
        if (auto it = j.find("value"); it != j.end() && !it->is_null()) {
            s.value = *it;
        }
        return s;
    }
    if (kind == "undo") return UndoStep{replica_field(j, "replica", where)};
    if (kind == "redo") return RedoStep{replica_field(j, "replica", where)};
    if (kind == "sync") {
        return SyncStep{replica_field(j, "from", where),
                        replica_field(j, "to", where)};
    }
    if (kind == "syncAll") return SyncAllStep{};
    if (kind == "check") {
        const json& values = require(j, "values", where);
        if (!values.is_array()) {
            throw ParseError(where + ".values: must be an array");
        }
        return CheckStep{replica_field(j, "replica", where),
                         std::vector<Value>(values.begin(), values.end())};
    }
    if (kind == "checkStacks") {
        return CheckStacksStep{replica_field(j, "replica", where),
                               opid_list(j, "undo", where),
                               opid_list(j, "redo", where)};
    }
    throw ParseError(where + ".op: unknown step kind '" + kind + "'");
}

}  // namespace

json scenario_to_json(const Scenario& scenario) {
    json steps = json::array();
    for (const Step& step : scenario.steps) {
        steps.push_back(step_to_json(step));
    }
    json replicas = json::array();
    for (const ReplicaId& r : scenario.replicas) replicas.push_back(r.id);
    json j{{"replicas", std::move(replicas)}, {"steps", std::move(steps)}};
    if (!scenario.name.empty()) j["name"] = scenario.name;
    if (!scenario.description.empty()) j["description"] = scenario.description;
    return j;
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("scenario: expected a JSON object");
    }
    Scenario scenario;
    if (auto it = j.find("name"); it != j.end() && it->is_string()) {
        scenario.name = it->get<std::string>();
    }
    if (auto it = j.find("description"); it != j.end() && it->is_string()) {
        scenario.description = it->get<std::string>();
    }
    const json& replicas = require(j, "replicas", "scenario");
    if (!replicas.is_array() || replicas.empty()) {
        throw ParseError("scenario.replicas: must be a non-empty array");
    }
    for (std::size_t i = 0; i < replicas.size(); ++i) {
        const json& r = replicas[i];
        if (!r.is_string() || r.get<std::string>().empty()) {
            throw ParseError("scenario.replicas[" + std::to_string(i) +
                             "]: must be a non-empty string");
        }
        scenario.replicas.push_back(ReplicaId{r.get<std::string>()});
    }
    const json& steps = require(j, "steps", "scenario");
    if (!steps.is_array()) {
        throw ParseError("scenario.steps: must be an array");
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        scenario.steps.push_back(step_from_json(
            steps[i], "scenario.steps[" + std::to_string(i) + "]"));
    }
    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Turn the parser's byte offset into a line number.
        std::size_t offset = std::min(e.byte, text.size());
        std::size_t line =
            1 + static_cast<std::size_t>(
                    std::count(text.begin(), text.begin() + offset, '\n'));
        throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
    }
    return scenario_from_json(doc);
}

}  // namespace mvr::sim
