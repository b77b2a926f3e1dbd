#include "mvr/resolver.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "mvr/errors.hpp"

namespace mvr {

namespace {

struct WorkItem {
    OpId id;
    OpIdTrace trace;  // OpIds visited so far, excluding `id`.
};

class WorkList {
  public:
    explicit WorkList(WorkOrder order) : order_(order) {}

    void push(WorkItem item) { items_.push_back(std::move(item)); }

    bool empty() const { return items_.empty(); }

    WorkItem take() {
        WorkItem item = order_ == WorkOrder::fifo ? std::move(items_.front())
                                                  : std::move(items_.back());
        if (order_ == WorkOrder::fifo) {
            items_.pop_front();
        } else {
            items_.pop_back();
        }
        return item;
    }

  private:
    WorkOrder order_;
    std::deque<WorkItem> items_;
};

// Descending-trace comparator for sorting. Traces within one resolution are
// pairwise distinct and never prefixes of each other; identical traces (only
// ever an element compared against itself) count as equivalent.
bool trace_greater(const OpIdTrace& a, const OpIdTrace& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    if (a.size() != b.size()) {
        throw IndistinguishableTraces(
            "one OpIdTrace is a prefix of another; trace invariant violated");
    }
    return false;
}

bool starts_with(const OpIdTrace& trace, const OpIdTrace& prefix) {
    return trace.size() >= prefix.size() &&
           std::equal(prefix.begin(), prefix.end(), trace.begin());
}

}  // namespace

std::vector<TerminalHead> resolve_heads(const History& history,
                                        std::span<const OpId> heads,
                                        ResolveStats* stats, WorkOrder order) {
    WorkList todo(order);
    for (const OpId& head : heads) {
        todo.push(WorkItem{head, {}});
    }
    std::vector<TerminalHead> term_heads;
    while (!todo.empty()) {
        WorkItem item = todo.take();
        if (stats) ++stats->visited;
        const Operation& op = history.at(item.id);
        OpIdTrace trace = std::move(item.trace);
        trace.push_back(op.id);
        if (op.is_set()) {
            term_heads.push_back(TerminalHead{op.id, std::move(trace)});
        } else {
            const Operation& anchor = history.at(op.as_restore().anchor);
            for (const OpId& pred : anchor.predecessors) {
                todo.push(WorkItem{pred, trace});
            }
        }
    }
    return term_heads;
}

std::strong_ordering compare_traces(const OpIdTrace& a, const OpIdTrace& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto cmp = a[i] <=> b[i];
        if (cmp != std::strong_ordering::equal) return cmp;
    }
    throw IndistinguishableTraces(
        "OpIdTraces did not diverge within their common length");
}

std::vector<Value> get_values(const History& history,
                              std::vector<TerminalHead> term_heads) {
    std::stable_sort(term_heads.begin(), term_heads.end(),
                     [](const TerminalHead& a, const TerminalHead& b) {
                         return trace_greater(a.trace, b.trace);
                     });
    std::vector<Value> values;
    values.reserve(term_heads.size());
    for (const TerminalHead& head : term_heads) {
        const std::optional<Value>& value = history.at(head.set_op).as_set().value;
        if (value.has_value()) {
            values.push_back(*value);
        }
    }
    return values;
}

std::vector<OpId> resolve_heads_cached(const History& history,
                                       std::span<const OpId> heads,
                                       RestoreCache& cache,
                                       ResolveStats* stats, WorkOrder order) {
    // One entry per resolved path: either a single terminal SetOp or a cached
    // RestoreOp expanded to its memoized SetOp list. The trace is truncated at
    // the entry's last element (the SetOp or the cache hit).
    struct Entry {
        OpIdTrace trace;
        std::vector<OpId> set_ops;
    };

    WorkList todo(order);
    for (const OpId& head : heads) {
        todo.push(WorkItem{head, {}});
    }
    std::vector<Entry> entries;
    // RestoreOps resolved without a cache hit this traversal, with the
    // truncated trace that reached them; memoized below, after sorting.
    std::vector<std::pair<OpId, OpIdTrace>> freshly_resolved;

    while (!todo.empty()) {
        WorkItem item = todo.take();
        if (stats) ++stats->visited;
        const Operation& op = history.at(item.id);
        OpIdTrace trace = std::move(item.trace);
        trace.push_back(op.id);
        if (op.is_set()) {
            entries.push_back(Entry{std::move(trace), {op.id}});
        } else if (const std::vector<OpId>* hit = cache.find(op.id)) {
            if (stats) ++stats->cache_hits;
            entries.push_back(Entry{std::move(trace), *hit});
        } else {
            freshly_resolved.emplace_back(op.id, trace);
            const Operation& anchor = history.at(op.as_restore().anchor);
            for (const OpId& pred : anchor.predecessors) {
                todo.push(WorkItem{pred, trace});
            }
        }
    }

    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) {
                         return trace_greater(a.trace, b.trace);
                     });

    std::vector<OpId> ordered;
    for (const Entry& entry : entries) {
        ordered.insert(ordered.end(), entry.set_ops.begin(),
                       entry.set_ops.end());
    }

    // Write-through: every RestoreOp visited uncached now gets an entry. Its
    // result is the sorted SetOps of all entries beneath it, i.e. those whose
    // truncated trace extends the prefix that reached it. The shared prefix
    // does not affect relative order, so the sublist equals what an uncached
    // traversal rooted at that RestoreOp would produce.
    for (const auto& [restore_id, prefix] : freshly_resolved) {
        if (cache.contains(restore_id)) continue;
        std::vector<OpId> result;
        for (const Entry& entry : entries) {
            if (starts_with(entry.trace, prefix)) {
                result.insert(result.end(), entry.set_ops.begin(),
                              entry.set_ops.end());
            }
        }
        cache.put(restore_id, std::move(result));
    }
    return ordered;
}

std::vector<Value> register_values(const History& history) {
    const std::set<OpId>& head_set = history.heads();
    std::vector<OpId> heads(head_set.begin(), head_set.end());
    return get_values(history, resolve_heads(history, heads));
}

std::vector<Value> register_values(const History& history, RestoreCache& cache,
                                   ResolveStats* stats) {
    const std::set<OpId>& head_set = history.heads();
    std::vector<OpId> heads(head_set.begin(), head_set.end());
    std::vector<OpId> set_ops =
        resolve_heads_cached(history, heads, cache, stats);
    std::vector<Value> values;
    values.reserve(set_ops.size());
    for (const OpId& id : set_ops) {
        const std::optional<Value>& value = history.at(id).as_set().value;
        if (value.has_value()) {
            values.push_back(*value);
        }
    }
    return values;
}

}  // namespace mvr
