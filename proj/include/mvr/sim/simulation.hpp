/// @file simulation.hpp
/// @brief Deterministic multi-replica simulation of scenario scripts.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvr/replica.hpp"
#include "mvr/sim/rng.hpp"
#include "mvr/sim/scenario.hpp"

namespace mvr::sim {

struct ReplicaSnapshot {
    std::vector<Value> values;
    std::vector<OpId> undo;
    std::vector<OpId> redo;
};

struct StepRecord {
    std::size_t index = 0;
    nlohmann::json action;                      ///< Echo of the step.
    std::optional<nlohmann::json> emitted_op;   ///< Wire encoding, for local edits.
    std::optional<bool> pass;                   ///< Set for check steps.
    nlohmann::json expected;                    ///< Check expectation, if any.
    nlohmann::json actual;                      ///< Observed counterpart.
    std::map<std::string, ReplicaSnapshot> state;  ///< Post-step, per replica.
};

struct ScenarioReport {
    std::string name;
    std::vector<ReplicaId> replicas;
    DeliverySchedule schedule;
    bool cache = true;
    std::vector<StepRecord> steps;
    std::size_t checks = 0;
    std::size_t failures = 0;

    bool ok() const { return failures == 0; }

    /// Machine-readable report: one JSON object per record (header, one per
    /// step, summary). Byte-stable for equal inputs. Schema version 1.
    std::vector<nlohmann::json> to_json_lines() const;
};

/// Steps a set of replicas through a scenario. Replicas run sequentially and
/// all randomness comes from the schedule's seed, so identical inputs yield
/// identical reports. Sync ships the operations the receiver lacks, subject
/// to the schedule's duplication and bounded reordering; checks are recorded
/// in the report, never thrown.
class Simulation {
  public:
    explicit Simulation(const Scenario& scenario,
                        DeliverySchedule schedule = {}, bool use_cache = true);

    /// Executes all remaining steps and returns the full report.
    ScenarioReport run();

    /// Executes one step and records it.
    const StepRecord& execute(const Step& step);

    Replica& replica(const ReplicaId& id);
    const std::vector<ReplicaId>& replica_ids() const { return ids_; }

    /// Ships every operation applied at `from` and unknown to `to`, under
    /// the delivery schedule.
    void sync(const ReplicaId& from, const ReplicaId& to);
    void sync_all();

    const ScenarioReport& report() const { return report_; }

  private:
    ReplicaSnapshot snapshot(const Replica& replica) const;
    std::vector<Value> observed_values(const Replica& replica) const;

    Scenario scenario_;
    std::map<ReplicaId, Replica> replicas_;
    std::vector<ReplicaId> ids_;
    Rng rng_;
    DeliverySchedule schedule_;
    bool use_cache_;
    ScenarioReport report_;
    std::size_t next_step_ = 0;
};

ScenarioReport run_scenario(const Scenario& scenario,
                            const DeliverySchedule& schedule = {},
                            bool use_cache = true);

/// Deterministically generates a scenario of `n_steps` steps over
/// `n_replicas` replicas (named A..D): a seed-driven mix of sets (including
/// occasional deletions), undos, redos and syncs, always ending in a syncAll.
/// Bounds: 1 <= n_replicas <= 4, 1 <= n_steps <= 40.
Scenario random_scenario(std::uint64_t seed, std::size_t n_replicas,
                         std::size_t n_steps);

/// Applies a causally closed operation set to a fresh history in every
/// possible order (buffering absorbs non-causal deliveries) and reports
/// whether all orders produce identical values and heads. Throws TooManyOps
/// above `max_ops` (factorial blow-up guard).
bool permutation_oracle(const std::vector<Operation>& ops,
                        std::size_t max_ops = 7);

}  // namespace mvr::sim
