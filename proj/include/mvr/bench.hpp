/// @file bench.hpp
/// @brief Head-resolution benchmark over alternating undo-redo histories.
///
/// A length n builds a linear single-replica history of one SetOp followed by
/// n undo-redo pairs (one pair counts as one). Per mode, the head to resolve
/// is the final undo (undo-head) or the final redo (redo-head, with or
/// without the restore cache). Only the resolution is timed; history
/// construction and cache warming are excluded.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mvr/replica.hpp"

namespace mvr::bench {

enum class Mode {
    undo_head,           ///< Head is the nth undo; no cache.
    redo_head_uncached,  ///< Head is the nth redo; no cache.
    redo_head_cached,    ///< Head is the nth redo; warm restore cache.
};

std::string to_string(Mode mode);

struct BenchConfig {
    std::vector<std::size_t> lengths{200, 400, 600, 800};
    std::size_t runs = 1024;  ///< Samples per (length, mode); median reported.
    std::vector<Mode> modes{Mode::undo_head, Mode::redo_head_uncached,
                            Mode::redo_head_cached};
    /// Resolutions per timed sample; the sample records time / batch.
    std::size_t batch = 16;
};

struct BenchResult {
    Mode mode;
    std::size_t length = 0;
    std::size_t runs = 0;
    double median_ms = 0.0;
    double mean_ms = 0.0;
    /// Worklist pops for a single resolution (deterministic, measured once).
    std::size_t steps = 0;
};

/// Builds the alternating history: set(0), then `pairs` undo-redo pairs. With
/// `end_with_redo` false the final redo is omitted, so the head is an undo.
/// With `warm_cache` the register is resolved after every operation, which
/// write-through-fills the replica's restore cache as an editor would.
Replica build_alternating_history(std::size_t pairs, bool end_with_redo,
                                  bool warm_cache);

std::vector<BenchResult> run_bench(const BenchConfig& config);

}  // namespace mvr::bench
