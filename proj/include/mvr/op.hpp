/// @file op.hpp
/// @brief Operation records stored in the history DAG.

#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mvr/opid.hpp"

namespace mvr {

/// The application datum held by the register. Scenario files, the wire
/// encoding and the test harness all speak JSON, so the payload is an
/// arbitrary JSON value with well-defined equality.
using Value = nlohmann::json;

/// Assigns a value to the register. An absent value denotes a deletion: the
/// operation still overwrites its predecessors but contributes no sibling.
struct SetOp {
    std::optional<Value> value;

    bool operator==(const SetOp&) const = default;
};

/// Restores the register to the state prior to the anchor operation, an
/// ancestor in the history. Both undo and redo emit RestoreOps; a redo's
/// anchor is the RestoreOp of the undo it reverts.
struct RestoreOp {
    OpId anchor;

    bool operator==(const RestoreOp&) const = default;
};

/// A node of the operation history DAG.
///
/// `predecessors` are the OpIds of the operations whose values this operation
/// overwrites; it is empty only for roots. Kept sorted ascending and unique,
/// so operations compare and serialize canonically.
struct Operation {
    OpId id;
    std::vector<OpId> predecessors;
    std::variant<SetOp, RestoreOp> kind;

    static Operation make_set(OpId id, std::vector<OpId> preds,
                              std::optional<Value> value) {
        return Operation{std::move(id), canonical(std::move(preds)),
                         SetOp{std::move(value)}};
    }

    static Operation make_restore(OpId id, std::vector<OpId> preds,
                                  OpId anchor) {
        return Operation{std::move(id), canonical(std::move(preds)),
                         RestoreOp{std::move(anchor)}};
    }

    bool is_set() const { return std::holds_alternative<SetOp>(kind); }
    bool is_restore() const { return std::holds_alternative<RestoreOp>(kind); }

    const SetOp& as_set() const { return std::get<SetOp>(kind); }
    const RestoreOp& as_restore() const { return std::get<RestoreOp>(kind); }

    bool operator==(const Operation&) const = default;

  private:
    static std::vector<OpId> canonical(std::vector<OpId> preds) {
        std::sort(preds.begin(), preds.end());
        preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
        return preds;
    }
};

}  // namespace mvr
