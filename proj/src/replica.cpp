#include "mvr/replica.hpp"

#include <algorithm>
#include <cassert>

#include "mvr/errors.hpp"

namespace mvr {

Replica::Replica(ReplicaId id, std::optional<std::size_t> stack_limit)
    : id_(std::move(id)), stack_limit_(stack_limit) {
    if (id_.id.empty()) {
        throw EmptyReplicaId("replica id must be non-empty");
    }
}

OpId Replica::next_op_id() {
    // One plus the greatest counter of any operation known to this replica.
    return OpId{++counter_, id_};
}

std::vector<OpId> Replica::current_heads() const {
    const std::set<OpId>& heads = history_.heads();
    return {heads.begin(), heads.end()};
}

void Replica::apply_local(const Operation& op) {
    InsertOutcome outcome = history_.insert(op);
    assert(outcome == InsertOutcome::applied);
    (void)outcome;
}

Operation Replica::set(std::optional<Value> value) {
    Operation op =
        Operation::make_set(next_op_id(), current_heads(), std::move(value));
    apply_local(op);
    undo_stack_.push_back(op.id);
    if (stack_limit_ && undo_stack_.size() > *stack_limit_) {
        undo_stack_.erase(undo_stack_.begin());
    }
    redo_stack_.clear();
    return op;
}

std::optional<Operation> Replica::undo() {
    if (undo_stack_.empty()) return std::nullopt;
    OpId anchor = undo_stack_.back();
    undo_stack_.pop_back();
    Operation op =
        Operation::make_restore(next_op_id(), current_heads(), anchor);
    apply_local(op);
    redo_stack_.push_back(op.id);
    return op;
}

std::optional<Operation> Replica::redo() {
    if (redo_stack_.empty()) return std::nullopt;
    OpId anchor = redo_stack_.back();
    redo_stack_.pop_back();
    Operation op =
        Operation::make_restore(next_op_id(), current_heads(), anchor);
    apply_local(op);
    // The popped RestoreOp came from an undo, so its own anchor is the SetOp
    // to make undoable again.
    const Operation& undone = history_.at(anchor);
    const OpId& set_id = undone.as_restore().anchor;
    if (!history_.at(set_id).is_set()) {
        throw CorruptStack("redo stack entry " + to_string(anchor) +
                           " does not anchor a SetOp");
    }
    undo_stack_.push_back(set_id);
    return op;
}

InsertOutcome Replica::apply_remote(const Operation& op) {
    if (op.id.replica == id_ && !history_.contains(op.id)) {
        throw OwnOperationEcho("replica " + id_.id +
                               " received unknown own operation " +
                               to_string(op.id));
    }
    InsertOutcome outcome = history_.insert(op);
    counter_ = std::max(counter_, op.id.counter);
    return outcome;
}

std::vector<Value> Replica::values() const {
    return register_values(history_, cache_);
}

std::vector<Value> Replica::values_uncached() const {
    return register_values(history_);
}

}  // namespace mvr
