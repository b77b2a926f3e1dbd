// Shared test fixtures and independent oracles.
//
// The oracles deliberately take different routes than the library: value
// resolution is recomputed by plain recursion plus std::vector ordering
// (instead of the iterative worklist and explicit zip comparison), heads are
// recomputed from scratch, and single-replica behavior is mirrored by a
// cursor-based editor model.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mvr/history.hpp"
#include "mvr/op.hpp"
#include "mvr/replica.hpp"
#include "mvr/resolver.hpp"

namespace mvrtest {

inline mvr::OpId oid(std::uint64_t counter, const std::string& replica) {
    return mvr::OpId{counter, mvr::ReplicaId{replica}};
}

inline mvr::Operation setop(std::uint64_t counter, const std::string& replica,
                            std::vector<mvr::OpId> preds,
                            std::optional<mvr::Value> value) {
    return mvr::Operation::make_set(oid(counter, replica), std::move(preds),
                                    std::move(value));
}

inline mvr::Operation restoreop(std::uint64_t counter,
                                const std::string& replica,
                                std::vector<mvr::OpId> preds,
                                mvr::OpId anchor) {
    return mvr::Operation::make_restore(oid(counter, replica),
                                        std::move(preds), std::move(anchor));
}

// The worked-example history: two replicas A and B interleaving sets, undos
// and redos. Returned in ascending OpId order (a causal linear extension).
// Indices:        0      1      2      3      4      5        6        7
//   ops:        (1,A)  (2,B)  (3,A)  (3,B)  (4,B)  (5,A)    (5,B)    (6,B)
//   kind:       set 1  set 2  set 4  set 3  set 5  undo3A   undo4B   undo3B
// Indices:        8      9      10       11       12
//   ops:        (7,A)  (7,B)  (8,B)    (9,B)    (10,B)
//   kind:       set 6  undo2B redo(7B) redo(6B) redo(5B)
inline std::vector<mvr::Operation> example_ops() {
    using mvr::Value;
    std::vector<mvr::Operation> ops;
    ops.push_back(setop(1, "A", {}, Value(1)));
    ops.push_back(setop(2, "B", {oid(1, "A")}, Value(2)));
    ops.push_back(setop(3, "A", {oid(2, "B")}, Value(4)));
    ops.push_back(setop(3, "B", {oid(2, "B")}, Value(3)));
    ops.push_back(setop(4, "B", {oid(3, "A"), oid(3, "B")}, Value(5)));
    ops.push_back(restoreop(5, "A", {oid(4, "B")}, oid(3, "A")));
    ops.push_back(restoreop(5, "B", {oid(4, "B")}, oid(4, "B")));
    ops.push_back(restoreop(6, "B", {oid(5, "A"), oid(5, "B")}, oid(3, "B")));
    ops.push_back(setop(7, "A", {oid(6, "B")}, Value(6)));
    ops.push_back(restoreop(7, "B", {oid(6, "B")}, oid(2, "B")));
    ops.push_back(restoreop(8, "B", {oid(7, "A"), oid(7, "B")}, oid(7, "B")));
    ops.push_back(restoreop(9, "B", {oid(8, "B")}, oid(6, "B")));
    ops.push_back(restoreop(10, "B", {oid(9, "B")}, oid(5, "B")));
    return ops;
}

// History holding the first `count` example ops (count <= 13).
inline mvr::History example_history(std::size_t count) {
    mvr::History history;
    std::vector<mvr::Operation> ops = example_ops();
    for (std::size_t i = 0; i < count && i < ops.size(); ++i) {
        history.insert(ops[i]);
    }
    return history;
}

// Oracle: recursive terminal-head resolution.
inline void oracle_resolve(const mvr::History& history, const mvr::OpId& id,
                           std::vector<mvr::OpId> prefix,
                           std::vector<mvr::TerminalHead>& out) {
    const mvr::Operation& op = history.at(id);
    prefix.push_back(id);
    if (op.is_set()) {
        out.push_back(mvr::TerminalHead{id, std::move(prefix)});
        return;
    }
    const mvr::Operation& anchor = history.at(op.as_restore().anchor);
    for (const mvr::OpId& pred : anchor.predecessors) {
        oracle_resolve(history, pred, prefix, out);
    }
}

// Oracle: the register's values via recursion and lexicographic-descending
// vector ordering (traces never prefix each other, so this coincides with
// first-divergence comparison).
inline std::vector<mvr::Value> oracle_values(const mvr::History& history) {
    std::vector<mvr::TerminalHead> term_heads;
    for (const mvr::OpId& head : history.heads()) {
        oracle_resolve(history, head, {}, term_heads);
    }
    std::sort(term_heads.begin(), term_heads.end(),
              [](const mvr::TerminalHead& a, const mvr::TerminalHead& b) {
                  return a.trace > b.trace;
              });
    std::vector<mvr::Value> values;
    for (const mvr::TerminalHead& head : term_heads) {
        const auto& value = history.at(head.set_op).as_set().value;
        if (value.has_value()) values.push_back(*value);
    }
    return values;
}

// Oracle: heads recomputed from scratch.
inline std::set<mvr::OpId> naive_heads(const mvr::History& history) {
    std::set<mvr::OpId> heads;
    for (const auto& [id, op] : history.ops()) {
        heads.insert(id);
    }
    for (const auto& [id, op] : history.ops()) {
        for (const mvr::OpId& pred : op.predecessors) {
            heads.erase(pred);
        }
    }
    return heads;
}

// Oracle: a single-user editor over one register. States are the register
// contents after each live set (index 0 = unset); the cursor moves back on
// undo, forward on redo, and a set truncates everything past the cursor.
class EditorModel {
  public:
    void set(std::optional<mvr::Value> value) {
        states_.resize(cursor_ + 1);
        states_.push_back(std::move(value));
        ++cursor_;
    }
    void undo() {
        if (cursor_ > 0) --cursor_;
    }
    void redo() {
        if (cursor_ + 1 < states_.size()) ++cursor_;
    }
    bool can_undo() const { return cursor_ > 0; }
    bool can_redo() const { return cursor_ + 1 < states_.size(); }
    std::vector<mvr::Value> values() const {
        if (cursor_ == 0 || !states_[cursor_].has_value()) return {};
        return {*states_[cursor_]};
    }

  private:
    std::vector<std::optional<mvr::Value>> states_{std::nullopt};
    std::size_t cursor_ = 0;
};

}  // namespace mvrtest
