/// @file scenario.hpp
/// @brief Scenario scripts: replicas plus an ordered list of steps.
///
/// Scenario JSON:
///   {"name": "...", "description": "...",            // both optional
///    "replicas": ["A", "B"],
///    "steps": [
///      {"op": "set", "replica": "A", "value": 1},    // value null/absent = deletion
///      {"op": "undo", "replica": "A"},
///      {"op": "redo", "replica": "B"},
///      {"op": "sync", "from": "A", "to": "B"},
///      {"op": "syncAll"},
///      {"op": "check", "replica": "A", "values": [3, 4, 2]},
///      {"op": "checkStacks", "replica": "B",
///       "undo": [[2, "B"]], "redo": [[5, "B"]]}      // bottom-to-top
///    ]}

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mvr/op.hpp"
#include "mvr/opid.hpp"

namespace mvr::sim {

struct SetStep {
    ReplicaId replica;
    std::optional<Value> value;  // absent = deletion
};

struct UndoStep {
    ReplicaId replica;
};

struct RedoStep {
    ReplicaId replica;
};

struct SyncStep {
    ReplicaId from;
    ReplicaId to;
};

struct SyncAllStep {};

/// Compares values() exactly, order included.
struct CheckStep {
    ReplicaId replica;
    std::vector<Value> expected;
};

/// Compares undo/redo stack contents exactly, bottom-to-top.
struct CheckStacksStep {
    ReplicaId replica;
    std::vector<OpId> undo;
    std::vector<OpId> redo;
};

using Step = std::variant<SetStep, UndoStep, RedoStep, SyncStep, SyncAllStep,
                          CheckStep, CheckStacksStep>;

struct Scenario {
    std::string name;
    std::string description;
    std::vector<ReplicaId> replicas;
    std::vector<Step> steps;
};

/// Network misbehavior applied when a sync ships operations. The same seed
/// always produces a bit-identical simulation.
struct DeliverySchedule {
    std::uint64_t seed = 0;
    double duplication_rate = 0.0;   ///< Per-op probability of a duplicate.
    std::size_t reorder_window = 0;  ///< Max forward displacement per op.
};

nlohmann::json step_to_json(const Step& step);

nlohmann::json scenario_to_json(const Scenario& scenario);

/// Parses and validates a scenario document; ParseError diagnostics name the
/// offending step and field.
Scenario scenario_from_json(const nlohmann::json& j);

/// Loads a scenario file. Syntax errors are reported with a line number.
Scenario load_scenario_file(const std::string& path);

}  // namespace mvr::sim
