/// @file history.hpp
/// @brief The append-only operation-history DAG with causal-delivery buffering.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "mvr/op.hpp"

namespace mvr {

/// Result of offering an operation to a history.
enum class InsertOutcome {
    applied,    ///< Delivered (possibly cascading buffered operations).
    buffered,   ///< Some predecessor is missing; parked until causally ready.
    duplicate,  ///< Already applied or already buffered; no state change.
};

/// An operation history: a DAG of operations keyed by OpId.
///
/// Operations may arrive in any order and multiple times. An operation is
/// applied once it is causally ready (all predecessors applied); until then it
/// sits in the pending buffer. Applied operations are never removed, so every
/// traversal works over an immutable prefix of the DAG. The head set (applied
/// operations without applied successors) is maintained incrementally with a
/// successor count per operation.
class History {
  public:
    /// Offers an operation. Malformed operations (self-reference, or a counter
    /// that does not strictly exceed every predecessor's and the anchor's) are
    /// rejected eagerly with MalformedOperation rather than buffered forever.
    /// Buffered operations that become ready cascade in ascending OpId order.
    InsertOutcome insert(const Operation& op);

    /// True iff every predecessor of `op` has been applied. Ancestor coverage
    /// follows inductively, so a RestoreOp's anchor is applied whenever this
    /// holds for a well-formed operation.
    bool is_causally_ready(const Operation& op) const;

    /// Applied operations with no applied successor: the DAG's frontier.
    const std::set<OpId>& heads() const { return heads_; }

    bool contains(const OpId& id) const { return ops_.contains(id); }

    /// Looks up an applied operation; throws DanglingReference if absent.
    const Operation& at(const OpId& id) const;

    /// All applied operations, keyed by OpId (ascending iteration order).
    const std::map<OpId, Operation>& ops() const { return ops_; }

    std::size_t applied_count() const { return ops_.size(); }
    std::size_t pending_count() const { return pending_.size(); }

    /// Number of applied successors of an applied operation.
    std::size_t successor_count(const OpId& id) const;

    bool operator==(const History&) const = default;

  private:
    void apply(const Operation& op);
    void drain_pending();
    static void validate(const Operation& op);

    std::map<OpId, Operation> ops_;
    std::set<OpId> heads_;
    std::map<OpId, Operation> pending_;
    std::map<OpId, std::size_t> successors_;
};

}  // namespace mvr
