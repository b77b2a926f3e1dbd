/// @file codec.hpp
/// @brief JSON wire encoding of operations.
///
/// One JSON object per operation:
///   {"ctr": <int>, "rep": "<string>", "preds": [[<ctr>, "<rep>"], ...],
///    "type": "set" | "restore", "value": <any or null>, "anchor": [<ctr>, "<rep>"]}
/// `value` is present only for "set" (null encodes a deletion); `anchor` is
/// present only for "restore". OpIds encode as [counter, replica] pairs and
/// `preds` is emitted in ascending order.

#pragma once

#include <json.hpp>

#include "mvr/op.hpp"

namespace mvr {

nlohmann::json opid_to_json(const OpId& id);

/// Decodes an OpId pair. `where` names the field in diagnostics.
OpId opid_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json operation_to_json(const Operation& op);

/// Decodes and validates an operation object; throws ParseError naming the
/// offending field on any schema violation.
Operation operation_from_json(const nlohmann::json& j);

}  // namespace mvr
