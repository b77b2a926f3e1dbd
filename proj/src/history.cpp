#include "mvr/history.hpp"

#include "mvr/errors.hpp"

namespace mvr {

void History::validate(const Operation& op) {
    if (op.id.replica.id.empty()) {
        throw MalformedOperation("operation " + to_string(op.id) +
                                 " has an empty replica id");
    }
    for (const OpId& pred : op.predecessors) {
        if (pred == op.id) {
            throw MalformedOperation("operation " + to_string(op.id) +
                                     " lists itself as a predecessor");
        }
        if (op.id.counter <= pred.counter) {
            throw MalformedOperation(
                "operation " + to_string(op.id) +
                " does not dominate predecessor " + to_string(pred));
        }
    }
    if (op.is_restore()) {
        const OpId& anchor = op.as_restore().anchor;
        if (anchor == op.id) {
            throw MalformedOperation("operation " + to_string(op.id) +
                                     " anchors itself");
        }
        if (op.id.counter <= anchor.counter) {
            throw MalformedOperation("operation " + to_string(op.id) +
                                     " does not dominate anchor " +
                                     to_string(anchor));
        }
    }
}

InsertOutcome History::insert(const Operation& op) {
    validate(op);
    if (ops_.contains(op.id) || pending_.contains(op.id)) {
        return InsertOutcome::duplicate;
    }
    if (!is_causally_ready(op)) {
        pending_.emplace(op.id, op);
        return InsertOutcome::buffered;
    }
    apply(op);
    drain_pending();
    return InsertOutcome::applied;
}

bool History::is_causally_ready(const Operation& op) const {
    for (const OpId& pred : op.predecessors) {
        if (!ops_.contains(pred)) return false;
    }
    return true;
}

const Operation& History::at(const OpId& id) const {
    auto it = ops_.find(id);
    if (it == ops_.end()) {
        throw DanglingReference("operation " + to_string(id) +
                                " is not in the history");
    }
    return it->second;
}

std::size_t History::successor_count(const OpId& id) const {
    auto it = successors_.find(id);
    return it == successors_.end() ? 0 : it->second;
}

void History::apply(const Operation& op) {
    ops_.emplace(op.id, op);
    successors_.emplace(op.id, 0);
    for (const OpId& pred : op.predecessors) {
        ++successors_[pred];
        heads_.erase(pred);
    }
    heads_.insert(op.id);
}

void History::drain_pending() {
    // Cascade in ascending OpId order: repeatedly apply the smallest buffered
    // operation that has become causally ready.
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (auto it = pending_.begin(); it != pending_.end(); ++it) {
            if (is_causally_ready(it->second)) {
                Operation op = std::move(it->second);
                pending_.erase(it);
                apply(op);
                progressed = true;
                break;
            }
        }
    }
}

}  // namespace mvr
