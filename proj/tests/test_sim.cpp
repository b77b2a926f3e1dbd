#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "mvr/errors.hpp"
#include "mvr/sim/simulation.hpp"

using namespace mvr;
using namespace mvr::sim;
using namespace mvrtest;
using nlohmann::json;

namespace {

std::string report_dump(const ScenarioReport& report) {
    std::string out;
    for (const json& line : report.to_json_lines()) {
        out += line.dump();
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("scenario documents parse into steps") {
    json doc = json::parse(R"({
        "replicas": ["A", "B"],
        "steps": [
            {"op": "set", "replica": "A", "value": 1},
            {"op": "set", "replica": "A"},
            {"op": "undo", "replica": "A"},
            {"op": "redo", "replica": "B"},
            {"op": "sync", "from": "A", "to": "B"},
            {"op": "syncAll"},
            {"op": "check", "replica": "A", "values": [3, 4, 2]},
            {"op": "checkStacks", "replica": "B", "undo": [[2, "B"]], "redo": []}
        ]})");
    Scenario scenario = scenario_from_json(doc);
    CHECK(scenario.replicas.size() == 2);
    REQUIRE(scenario.steps.size() == 8);
    CHECK(std::holds_alternative<SetStep>(scenario.steps[0]));
    CHECK(std::get<SetStep>(scenario.steps[0]).value == Value(1));
    CHECK_FALSE(std::get<SetStep>(scenario.steps[1]).value.has_value());
    CHECK(std::holds_alternative<SyncAllStep>(scenario.steps[5]));
    CHECK(std::get<CheckStacksStep>(scenario.steps[7]).undo ==
          std::vector<OpId>{oid(2, "B")});

    // Round trip through JSON preserves the script.
    CHECK(scenario_to_json(scenario_from_json(scenario_to_json(scenario))) ==
          scenario_to_json(scenario));
}

TEST_CASE("scenario schema errors name the offending step") {
    auto message_of = [](const char* text) -> std::string {
        try {
            scenario_from_json(json::parse(text));
        } catch (const ParseError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message_of(R"({"steps": []})").find("replicas") != std::string::npos);
    CHECK(message_of(R"({"replicas": ["A"], "steps": [{"op": "warp"}]})")
              .find("steps[0]") != std::string::npos);
    CHECK(message_of(R"({"replicas": ["A"], "steps": [{"op": "set"}]})")
              .find("replica") != std::string::npos);
    CHECK(message_of(R"({"replicas": [""], "steps": []})")
              .find("replicas[0]") != std::string::npos);
}

TEST_CASE("an empty scenario yields an empty report") {
    Scenario scenario;
    scenario.replicas.push_back(ReplicaId{"A"});
    ScenarioReport report = run_scenario(scenario);
    CHECK(report.steps.empty());
    CHECK(report.checks == 0);
    CHECK(report.ok());
}

TEST_CASE("steps referencing undeclared replicas are rejected") {
    Scenario scenario;
    scenario.replicas.push_back(ReplicaId{"A"});
    scenario.steps.push_back(SetStep{ReplicaId{"Z"}, Value(1)});
    Simulation sim(scenario);
    CHECK_THROWS_AS(sim.run(), UnknownReplica);
}

TEST_CASE("sync ships one direction only") {
    Scenario scenario;
    scenario.replicas = {ReplicaId{"A"}, ReplicaId{"B"}};
    scenario.steps = {SetStep{ReplicaId{"A"}, Value(1)},
                      SetStep{ReplicaId{"B"}, Value(2)},
                      SyncStep{ReplicaId{"A"}, ReplicaId{"B"}}};
    Simulation sim(scenario);
    sim.run();
    CHECK(sim.replica(ReplicaId{"A"}).history().applied_count() == 1);
    CHECK(sim.replica(ReplicaId{"B"}).history().applied_count() == 2);
}

TEST_CASE("checks are recorded, not thrown") {
    Scenario scenario;
    scenario.replicas = {ReplicaId{"A"}};
    scenario.steps = {SetStep{ReplicaId{"A"}, Value(1)},
                      CheckStep{ReplicaId{"A"}, {Value(1)}},
                      CheckStep{ReplicaId{"A"}, {Value(9)}}};
    ScenarioReport report = run_scenario(scenario);
    CHECK(report.checks == 2);
    CHECK(report.failures == 1);
    CHECK_FALSE(report.ok());
    CHECK(report.steps[1].pass == true);
    CHECK(report.steps[2].pass == false);
}

TEST_CASE("random scenarios are deterministic per seed") {
    Scenario first = random_scenario(1, 2, 10);
    Scenario second = random_scenario(1, 2, 10);
    CHECK(scenario_to_json(first) == scenario_to_json(second));
    CHECK(scenario_to_json(first) != scenario_to_json(random_scenario(2, 2, 10)));
    CHECK(std::holds_alternative<SyncAllStep>(first.steps.back()));
    CHECK(first.steps.size() == 10);

    ScenarioReport r1 = run_scenario(first, DeliverySchedule{3, 0.25, 2});
    ScenarioReport r2 = run_scenario(first, DeliverySchedule{3, 0.25, 2});
    CHECK(report_dump(r1) == report_dump(r2));
}

TEST_CASE("random scenario bounds are enforced") {
    CHECK_THROWS_AS(random_scenario(1, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(random_scenario(1, 5, 10), std::invalid_argument);
    CHECK_THROWS_AS(random_scenario(1, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(random_scenario(1, 2, 41), std::invalid_argument);
}

TEST_CASE("duplication and reordering do not change outcomes") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Scenario scenario = random_scenario(seed, 1 + seed % 3 + 1, 30);
        Simulation clean(scenario, DeliverySchedule{11, 0.0, 0});
        Simulation noisy(scenario, DeliverySchedule{11, 0.4, 5});
        clean.run();
        noisy.run();
        for (const ReplicaId& id : clean.replica_ids()) {
            CHECK(clean.replica(id).values() == noisy.replica(id).values());
            CHECK(clean.replica(id).history() == noisy.replica(id).history());
        }
    }
}

TEST_CASE("a single-replica scenario behaves as a linear editor") {
    // Mirror every step in the cursor-model oracle and compare throughout.
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Scenario scenario = random_scenario(seed, 1, 30);
        Simulation sim(scenario);
        EditorModel model;
        for (const Step& step : scenario.steps) {
            sim.execute(step);
            if (const auto* set = std::get_if<SetStep>(&step)) {
                model.set(set->value);
            } else if (std::holds_alternative<UndoStep>(step)) {
                model.undo();
            } else if (std::holds_alternative<RedoStep>(step)) {
                model.redo();
            }
            Replica& replica = sim.replica(scenario.replicas[0]);
            REQUIRE(replica.values() == model.values());
            REQUIRE(replica.can_undo() == model.can_undo());
            REQUIRE(replica.can_redo() == model.can_redo());
        }
    }
}

TEST_CASE("permutation oracle accepts the example prefix") {
    std::vector<Operation> ops = example_ops();
    ops.resize(5);
    CHECK(permutation_oracle(ops));
}

TEST_CASE("permutation oracle accepts any single op") {
    CHECK(permutation_oracle({setop(1, "A", {}, Value(1))}));
}

TEST_CASE("permutation oracle guards against factorial blow-up") {
    std::vector<Operation> ops = example_ops();
    ops.resize(8);
    CHECK_THROWS_AS(permutation_oracle(ops), TooManyOps);
    CHECK(permutation_oracle(ops, 8));
}

TEST_CASE("permutation oracle rejects causally open sets") {
    std::vector<Operation> ops = {setop(2, "B", {oid(1, "A")}, Value(2))};
    CHECK_THROWS_AS(permutation_oracle(ops), DanglingReference);
}

TEST_CASE("report lines carry the emitted operations in wire format") {
    Scenario scenario;
    scenario.replicas = {ReplicaId{"A"}};
    scenario.steps = {SetStep{ReplicaId{"A"}, Value(1)},
                      UndoStep{ReplicaId{"A"}}};
    ScenarioReport report = run_scenario(scenario);
    REQUIRE(report.steps.size() == 2);
    REQUIRE(report.steps[0].emitted_op.has_value());
    CHECK(report.steps[0].emitted_op->at("type") == "set");
    REQUIRE(report.steps[1].emitted_op.has_value());
    CHECK(report.steps[1].emitted_op->at("type") == "restore");
    CHECK(report.steps[1].emitted_op->at("anchor") == json::parse(R"([1,"A"])"));
}
