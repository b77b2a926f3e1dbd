#include "mvr/sim/simulation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mvr/codec.hpp"
#include "mvr/errors.hpp"
#include "mvr/resolver.hpp"

namespace mvr::sim {

using nlohmann::json;

namespace {

json opid_list_json(const std::vector<OpId>& ids) {
    json out = json::array();
    for (const OpId& id : ids) out.push_back(opid_to_json(id));
    return out;
}

json snapshot_json(const ReplicaSnapshot& snap) {
    return json{{"values", snap.values},
                {"undo", opid_list_json(snap.undo)},
                {"redo", opid_list_json(snap.redo)}};
}

}  // namespace

std::vector<json> ScenarioReport::to_json_lines() const {
    std::vector<json> lines;
    json replica_names = json::array();
    for (const ReplicaId& r : replicas) replica_names.push_back(r.id);
    lines.push_back(json{{"type", "header"},
                         {"version", 1},
                         {"name", name},
                         {"replicas", std::move(replica_names)},
                         {"seed", schedule.seed},
                         {"dupRate", schedule.duplication_rate},
                         {"reorderWindow", schedule.reorder_window},
                         {"cache", cache}});
    for (const StepRecord& step : steps) {
        json j{{"type", "step"}, {"index", step.index}, {"action", step.action}};
        if (step.emitted_op) j["op"] = *step.emitted_op;
        if (step.pass.has_value()) {
            j["pass"] = *step.pass;
            j["expected"] = step.expected;
            j["actual"] = step.actual;
        }
        json state = json::object();
        for (const auto& [id, snap] : step.state) {
            state[id] = snapshot_json(snap);
        }
        j["state"] = std::move(state);
        lines.push_back(std::move(j));
    }
    lines.push_back(json{{"type", "summary"},
                         {"checks", checks},
                         {"failures", failures},
                         {"pass", failures == 0}});
    return lines;
}

Simulation::Simulation(const Scenario& scenario, DeliverySchedule schedule,
                       bool use_cache)
    : scenario_(scenario),
      rng_(schedule.seed),
      schedule_(schedule),
      use_cache_(use_cache) {
    if (scenario_.replicas.empty()) {
        throw ParseError("scenario declares no replicas");
    }
    for (const ReplicaId& id : scenario_.replicas) {
        if (replicas_.contains(id)) {
            throw ParseError("duplicate replica '" + id.id + "'");
        }
        replicas_.emplace(id, Replica(id));
        ids_.push_back(id);
    }
    report_.name = scenario_.name;
    report_.replicas = ids_;
    report_.schedule = schedule_;
    report_.cache = use_cache_;
}

Replica& Simulation::replica(const ReplicaId& id) {
    auto it = replicas_.find(id);
    if (it == replicas_.end()) {
        throw UnknownReplica("unknown replica '" + id.id + "'");
    }
    return it->second;
}

std::vector<Value> Simulation::observed_values(const Replica& replica) const {
    return use_cache_ ? replica.values() : replica.values_uncached();
}

ReplicaSnapshot Simulation::snapshot(const Replica& replica) const {
    return ReplicaSnapshot{
        observed_values(replica),
        {replica.undo_stack().begin(), replica.undo_stack().end()},
        {replica.redo_stack().begin(), replica.redo_stack().end()}};
}

void Simulation::sync(const ReplicaId& from, const ReplicaId& to) {
    Replica& source = replica(from);
    Replica& target = replica(to);
    std::vector<Operation> batch;
    for (const auto& [id, op] : source.history().ops()) {
        if (!target.history().contains(id)) batch.push_back(op);
    }
    // Duplication first: each op may be repeated adjacently...
    if (schedule_.duplication_rate > 0.0) {
        std::vector<Operation> expanded;
        expanded.reserve(batch.size() * 2);
        for (const Operation& op : batch) {
            expanded.push_back(op);
            if (rng_.chance(schedule_.duplication_rate)) {
                expanded.push_back(op);
            }
        }
        batch = std::move(expanded);
    }
    // ...then a bounded forward shuffle within the batch. The batch is
    // self-contained (the source history is causally closed), so buffering
    // drains fully by the end of the sync regardless of the permutation.
    if (schedule_.reorder_window > 0 && batch.size() > 1) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            std::size_t span =
                std::min(schedule_.reorder_window + 1, batch.size() - i);
            std::size_t j = i + rng_.next_below(span);
            std::swap(batch[i], batch[j]);
        }
    }
    for (const Operation& op : batch) {
        target.apply_remote(op);
    }
}

void Simulation::sync_all() {
    for (const ReplicaId& from : ids_) {
        for (const ReplicaId& to : ids_) {
            if (!(from == to)) sync(from, to);
        }
    }
}

const StepRecord& Simulation::execute(const Step& step) {
    StepRecord record;
    record.index = next_step_++;
    record.action = step_to_json(step);

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SetStep>) {
                Operation op = replica(s.replica).set(s.value);
                record.emitted_op = operation_to_json(op);
            } else if constexpr (std::is_same_v<T, UndoStep>) {
                if (auto op = replica(s.replica).undo()) {
                    record.emitted_op = operation_to_json(*op);
                }
            } else if constexpr (std::is_same_v<T, RedoStep>) {
                if (auto op = replica(s.replica).redo()) {
                    record.emitted_op = operation_to_json(*op);
                }
            } else if constexpr (std::is_same_v<T, SyncStep>) {
                sync(s.from, s.to);
            } else if constexpr (std::is_same_v<T, SyncAllStep>) {
                sync_all();
            } else if constexpr (std::is_same_v<T, CheckStep>) {
                std::vector<Value> actual = observed_values(replica(s.replica));
                bool pass = actual == s.expected;
                record.pass = pass;
                record.expected = json(s.expected);
                record.actual = json(actual);
                ++report_.checks;
                if (!pass) ++report_.failures;
            } else {
                static_assert(std::is_same_v<T, CheckStacksStep>);
                Replica& r = replica(s.replica);
                std::vector<OpId> undo(r.undo_stack().begin(),
                                       r.undo_stack().end());
                std::vector<OpId> redo(r.redo_stack().begin(),
                                       r.redo_stack().end());
                bool pass = undo == s.undo && redo == s.redo;
                record.pass = pass;
                record.expected = json{{"undo", opid_list_json(s.undo)},
                                       {"redo", opid_list_json(s.redo)}};
                record.actual = json{{"undo", opid_list_json(undo)},
                                     {"redo", opid_list_json(redo)}};
                ++report_.checks;
                if (!pass) ++report_.failures;
            }
        },
        step);

    for (const ReplicaId& id : ids_) {
        record.state.emplace(id.id, snapshot(replica(id)));
    }
    report_.steps.push_back(std::move(record));
    return report_.steps.back();
}

ScenarioReport Simulation::run() {
    for (const Step& step : scenario_.steps) {
        execute(step);
    }
    return report_;
}

ScenarioReport run_scenario(const Scenario& scenario,
                            const DeliverySchedule& schedule, bool use_cache) {
    Simulation sim(scenario, schedule, use_cache);
    return sim.run();
}

Scenario random_scenario(std::uint64_t seed, std::size_t n_replicas,
                         std::size_t n_steps) {
    if (n_replicas < 1 || n_replicas > 4) {
        throw std::invalid_argument("random_scenario: 1 <= n_replicas <= 4");
    }
    if (n_steps < 1 || n_steps > 40) {
        throw std::invalid_argument("random_scenario: 1 <= n_steps <= 40");
    }
    static const char* kNames[] = {"A", "B", "C", "D"};
    Scenario scenario;
    scenario.name = "random-" + std::to_string(seed);
    for (std::size_t i = 0; i < n_replicas; ++i) {
        scenario.replicas.push_back(ReplicaId{kNames[i]});
    }
    Rng rng(seed);
    auto pick_replica = [&] {
        return scenario.replicas[rng.next_below(n_replicas)];
    };
    for (std::size_t i = 0; i + 1 < n_steps; ++i) {
        std::uint64_t roll = rng.next_below(100);
        if (roll < 45) {
            std::optional<Value> value;
            if (!rng.chance(0.1)) {
                value = Value(rng.next_below(10));
            }
            scenario.steps.push_back(SetStep{pick_replica(), std::move(value)});
        } else if (roll < 65) {
            scenario.steps.push_back(UndoStep{pick_replica()});
        } else if (roll < 80) {
            scenario.steps.push_back(RedoStep{pick_replica()});
        } else if (roll < 95 && n_replicas > 1) {
            ReplicaId from = pick_replica();
            ReplicaId to = pick_replica();
            while (to == from) to = pick_replica();
            scenario.steps.push_back(SyncStep{from, to});
        } else {
            scenario.steps.push_back(SyncAllStep{});
        }
    }
    scenario.steps.push_back(SyncAllStep{});
    return scenario;
}

bool permutation_oracle(const std::vector<Operation>& ops,
                        std::size_t max_ops) {
    if (ops.size() > max_ops) {
        throw TooManyOps("permutation oracle limited to " +
                         std::to_string(max_ops) + " operations, got " +
                         std::to_string(ops.size()));
    }
    std::vector<std::size_t> order(ops.size());
    std::iota(order.begin(), order.end(), 0);

    std::optional<std::vector<Value>> first_values;
    std::optional<std::set<OpId>> first_heads;
    do {
        History history;
        for (std::size_t idx : order) {
            history.insert(ops[idx]);
        }
        if (history.pending_count() != 0) {
            throw DanglingReference(
                "permutation oracle requires a causally closed operation set");
        }
        std::vector<Value> values = register_values(history);
        if (!first_values) {
            first_values = std::move(values);
            first_heads = history.heads();
        } else if (values != *first_values || history.heads() != *first_heads) {
            return false;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return true;
}

}  // namespace mvr::sim
