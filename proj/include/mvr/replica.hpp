/// @file replica.hpp
/// @brief The user-facing register replica with undo/redo stacks.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvr/history.hpp"
#include "mvr/op.hpp"
#include "mvr/resolver.hpp"

namespace mvr {

/// One replica of the multi-value register.
///
/// Local edits generate operations that are applied to the replica's own
/// history and returned for broadcast; remote operations are buffered until
/// causally ready. The undo stack holds only local SetOp ids and the redo
/// stack only local RestoreOp ids; remote operations never touch either
/// stack. A replica is a single-threaded value: it may be moved or copied
/// across threads but not shared mutably.
class Replica {
  public:
    /// Creates an empty replica. Throws EmptyReplicaId on an empty id. An
    /// optional stack limit bounds undo depth; the oldest entry is dropped
    /// when a local SetOp would exceed it.
    explicit Replica(ReplicaId id,
                     std::optional<std::size_t> stack_limit = std::nullopt);

    const ReplicaId& id() const { return id_; }
    const History& history() const { return history_; }
    std::uint64_t counter() const { return counter_; }

    /// Generates and applies a local SetOp overwriting the current heads.
    /// Pushes it onto the undo stack and clears the redo stack — also for
    /// deletions (absent value), so deleting stays undoable. Returns the
    /// operation for broadcast.
    Operation set(std::optional<Value> value);

    /// Undoes the most recent not-yet-undone local SetOp: generates a
    /// RestoreOp anchored at the undo stack's top, pops it, and pushes the
    /// RestoreOp onto the redo stack. With an empty undo stack this is a
    /// benign no-op returning nothing.
    std::optional<Operation> undo();

    /// Reverts the most recent undo: generates a RestoreOp anchored at the
    /// redo stack's top RestoreOp and pops it; that RestoreOp's own anchor
    /// (one indirection, always a SetOp) goes back onto the undo stack.
    /// Returns nothing when there is nothing to redo.
    std::optional<Operation> redo();

    /// Delivers a remote operation into the history (buffering until causally
    /// ready, cascading what becomes ready). Advances the Lamport counter to
    /// cover the operation. Stacks are unchanged. Throws OwnOperationEcho if
    /// the operation claims this replica's id but was never generated here.
    InsertOutcome apply_remote(const Operation& op);

    /// The register's current siblings, in convergent order. Uses the
    /// replica-owned restore cache; equal to values_uncached().
    std::vector<Value> values() const;

    /// Same values computed without consulting or filling the cache.
    std::vector<Value> values_uncached() const;

    bool can_undo() const { return !undo_stack_.empty(); }
    bool can_redo() const { return !redo_stack_.empty(); }

    /// Stack contents bottom-to-top (top = next to pop).
    std::span<const OpId> undo_stack() const { return undo_stack_; }
    std::span<const OpId> redo_stack() const { return redo_stack_; }

    const RestoreCache& cache() const { return cache_; }

  private:
    OpId next_op_id();
    std::vector<OpId> current_heads() const;
    void apply_local(const Operation& op);

    ReplicaId id_;
    History history_;
    std::uint64_t counter_ = 0;
    std::vector<OpId> undo_stack_;
    std::vector<OpId> redo_stack_;
    std::optional<std::size_t> stack_limit_;
    // Derived state only; values() is logically const.
    mutable RestoreCache cache_;
};

}  // namespace mvr
