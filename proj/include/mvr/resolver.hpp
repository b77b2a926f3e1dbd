/// @file resolver.hpp
/// @brief Resolves history heads to the register's ordered value list.
///
/// A head that is a SetOp is its own terminal head. A head that is a
/// RestoreOp is expanded by walking to its anchor's predecessors, repeatedly,
/// until SetOps are reached; the OpIds visited along each path form the
/// OpIdTrace. Values are then ordered by comparing traces, so siblings
/// contributed by a RestoreOp sort by the OpIds of the undo/redo operations
/// that restored them rather than by the original SetOps.

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "mvr/history.hpp"
#include "mvr/op.hpp"

namespace mvr {

/// The OpIds visited from a head down to a terminal SetOp. The last element
/// is always a SetOp's id; every preceding element is a RestoreOp's id.
using OpIdTrace = std::vector<OpId>;

/// A SetOp reached from a head, paired with the trace that reached it.
struct TerminalHead {
    OpId set_op;      ///< Id of the terminal SetOp (trace's last element).
    OpIdTrace trace;  ///< Path of OpIds from the head to the SetOp.

    bool operator==(const TerminalHead&) const = default;
};

/// Worklist discipline for the traversal. FIFO is the default; output is
/// order-independent because terminal heads are sorted, and tests exercise
/// the alternative to prove it.
enum class WorkOrder { fifo, lifo };

/// Traversal instrumentation, filled when a non-null pointer is supplied.
struct ResolveStats {
    std::size_t visited = 0;     ///< Operations taken off the worklist.
    std::size_t cache_hits = 0;  ///< RestoreOps answered from the cache.
};

/// Memo of resolved RestoreOps: for each RestoreOp OpId, the terminal SetOp
/// ids it produces, already in the order the uncached traversal would yield.
/// Anchors and predecessor sets never change once an operation is applied, so
/// entries stay valid as the history grows. The cache is derived state owned
/// by a single replica; it is never shipped and correctness never depends on
/// it.
class RestoreCache {
  public:
    bool contains(const OpId& restore_id) const {
        return entries_.contains(restore_id);
    }
    const std::vector<OpId>* find(const OpId& restore_id) const {
        auto it = entries_.find(restore_id);
        return it == entries_.end() ? nullptr : &it->second;
    }
    void put(OpId restore_id, std::vector<OpId> set_ops) {
        entries_.emplace(std::move(restore_id), std::move(set_ops));
    }
    std::size_t size() const { return entries_.size(); }
    void clear() { entries_.clear(); }

  private:
    std::map<OpId, std::vector<OpId>> entries_;
};

/// Resolves heads to terminal heads. `heads` is normally heads(history), but
/// any subset of applied OpIds is accepted. A RestoreOp whose anchor has no
/// predecessors contributes no terminal heads (a restore past the root yields
/// the unset state). Throws DanglingReference if a visited OpId or anchor is
/// absent from the history.
std::vector<TerminalHead> resolve_heads(const History& history,
                                        std::span<const OpId> heads,
                                        ResolveStats* stats = nullptr,
                                        WorkOrder order = WorkOrder::fifo);

/// Orders two traces by their first unequal OpId, zipping to the shorter
/// length. Traces from one resolution always diverge before either ends;
/// if the loop completes undecided, IndistinguishableTraces is thrown.
std::strong_ordering compare_traces(const OpIdTrace& a, const OpIdTrace& b);

/// Sorts terminal heads by trace, descending, and maps them to values.
/// Deletions (SetOps with no value) are skipped.
std::vector<Value> get_values(const History& history,
                              std::vector<TerminalHead> term_heads);

/// Cached traversal: like resolve_heads, but a path stops at the first cached
/// RestoreOp, which expands to its memoized SetOp list. Entries sort by the
/// truncated trace with a stable sort, so a cached sublist keeps its internal
/// order. Every RestoreOp resolved without a cache hit is memoized before
/// returning. Returns terminal SetOp ids in final (sorted) order, identical
/// to the uncached resolve + sort.
std::vector<OpId> resolve_heads_cached(const History& history,
                                       std::span<const OpId> heads,
                                       RestoreCache& cache,
                                       ResolveStats* stats = nullptr,
                                       WorkOrder order = WorkOrder::fifo);

/// The register's ordered values: get_values over resolve_heads on the
/// history's own heads. Empty history yields the empty list.
std::vector<Value> register_values(const History& history);

/// Cached variant; returns exactly the same list as the uncached overload.
std::vector<Value> register_values(const History& history, RestoreCache& cache,
                                   ResolveStats* stats = nullptr);

}  // namespace mvr
