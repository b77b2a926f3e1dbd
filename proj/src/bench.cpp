#include "mvr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "mvr/resolver.hpp"

namespace mvr::bench {

using Clock = std::chrono::steady_clock;

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::undo_head: return "undo-head";
        case Mode::redo_head_uncached: return "redo-head-uncached";
        case Mode::redo_head_cached: return "redo-head-cached";
    }
    return "unknown";
}

Replica build_alternating_history(std::size_t pairs, bool end_with_redo,
                                  bool warm_cache) {
    Replica replica(ReplicaId{"A"});
    auto touch = [&] {
        if (warm_cache) (void)replica.values();
    };
    replica.set(Value(0));
    touch();
    for (std::size_t i = 0; i < pairs; ++i) {
        replica.undo();
        touch();
        if (i + 1 < pairs || end_with_redo) {
            replica.redo();
            touch();
        }
    }
    return replica;
}

namespace {

double median(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    std::size_t n = samples.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? samples[n / 2]
                      : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

BenchResult measure(Mode mode, std::size_t length, std::size_t runs,
                    std::size_t batch) {
    bool cached = mode == Mode::redo_head_cached;
    Replica replica = build_alternating_history(
        length, mode != Mode::undo_head, cached);

    RestoreCache scratch;
    RestoreCache* cache = nullptr;
    if (cached) {
        scratch = replica.cache();
        cache = &scratch;
    }
    const History& history = replica.history();
    std::vector<OpId> heads(history.heads().begin(), history.heads().end());

    auto resolve_once = [&](ResolveStats* stats) {
        if (cache) {
            (void)resolve_heads_cached(history, heads, *cache, stats);
        } else {
            (void)get_values(history, resolve_heads(history, heads, stats));
        }
    };

    BenchResult result;
    result.mode = mode;
    result.length = length;
    result.runs = runs;
    ResolveStats stats;
    resolve_once(&stats);  // also warms the head's own cache entry
    result.steps = stats.visited;

    std::vector<double> samples;
    samples.reserve(runs);
    double total = 0.0;
    for (std::size_t run = 0; run < runs; ++run) {
        auto start = Clock::now();
        for (std::size_t i = 0; i < batch; ++i) {
            resolve_once(nullptr);
        }
        auto stop = Clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start)
                        .count() /
                    static_cast<double>(batch);
        samples.push_back(ms);
        total += ms;
    }
    result.median_ms = median(std::move(samples));
    result.mean_ms = total / static_cast<double>(runs);
    return result;
}

}  // namespace

std::vector<BenchResult> run_bench(const BenchConfig& config) {
    if (config.runs == 0 || config.batch == 0) {
        throw std::invalid_argument("bench: runs and batch must be positive");
    }
    for (std::size_t length : config.lengths) {
        if (length == 0) {
            throw std::invalid_argument("bench: lengths must be positive");
        }
    }
    std::vector<BenchResult> results;
    for (Mode mode : config.modes) {
        for (std::size_t length : config.lengths) {
            results.push_back(measure(mode, length, config.runs, config.batch));
        }
    }
    return results;
}

}  // namespace mvr::bench
