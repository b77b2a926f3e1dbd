#include "mvr/codec.hpp"

#include "mvr/errors.hpp"

namespace mvr {

using nlohmann::json;

json opid_to_json(const OpId& id) {
    return json::array({id.counter, id.replica.id});
}

namespace {

bool is_counter(const json& j) {
    return j.is_number_unsigned() ||
           (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

}  // namespace

OpId opid_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError(where + ": expected [counter, replica] pair");
    }
    if (!is_counter(j[0])) {
        throw ParseError(where + ": counter must be a non-negative integer");
    }
    if (!j[1].is_string()) {
        throw ParseError(where + ": replica must be a string");
    }
    std::string replica = j[1].get<std::string>();
    if (replica.empty()) {
        throw ParseError(where + ": replica must be non-empty");
    }
    return OpId{j[0].get<std::uint64_t>(), ReplicaId{std::move(replica)}};
}

json operation_to_json(const Operation& op) {
    json preds = json::array();
    for (const OpId& pred : op.predecessors) {
        preds.push_back(opid_to_json(pred));
    }
    json j{{"ctr", op.id.counter},
           {"rep", op.id.replica.id},
           {"preds", std::move(preds)}};
    if (op.is_set()) {
        j["type"] = "set";
        j["value"] = op.as_set().value.has_value() ? *op.as_set().value
                                                   : json(nullptr);
    } else {
        j["type"] = "restore";
        j["anchor"] = opid_to_json(op.as_restore().anchor);
    }
    return j;
}

Operation operation_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("operation: expected a JSON object");
    }
    auto require = [&](const char* field) -> const json& {
        auto it = j.find(field);
        if (it == j.end()) {
            throw ParseError(std::string("operation: missing field '") +
                             field + "'");
        }
        return *it;
    };
    const json& ctr = require("ctr");
    if (!is_counter(ctr)) {
        throw ParseError("operation.ctr: must be a non-negative integer");
    }
    const json& rep = require("rep");
    if (!rep.is_string() || rep.get<std::string>().empty()) {
        throw ParseError("operation.rep: must be a non-empty string");
    }
    OpId id{ctr.get<std::uint64_t>(), ReplicaId{rep.get<std::string>()}};

    const json& preds_json = require("preds");
    if (!preds_json.is_array()) {
        throw ParseError("operation.preds: must be an array");
    }
    std::vector<OpId> preds;
    preds.reserve(preds_json.size());
    for (std::size_t i = 0; i < preds_json.size(); ++i) {
        preds.push_back(opid_from_json(
            preds_json[i], "operation.preds[" + std::to_string(i) + "]"));
    }

    const json& type = require("type");
    if (type == "set") {
        if (j.contains("anchor")) {
            throw ParseError("operation.anchor: not allowed for type 'set'");
        }
        const json& value = require("value");
        std::optional<Value> payload;
        if (!value.is_null()) payload = value;
        return Operation::make_set(std::move(id), std::move(preds),
                                   std::move(payload));
    }
    if (type == "restore") {
        if (j.contains("value")) {
            throw ParseError(
                "operation.value: not allowed for type 'restore'");
        }
        OpId anchor = opid_from_json(require("anchor"), "operation.anchor");
        return Operation::make_restore(std::move(id), std::move(preds),
                                       std::move(anchor));
    }
    throw ParseError("operation.type: must be 'set' or 'restore'");
}

}  // namespace mvr
