#include <doctest.h>

#include <string>

#include "mvr/errors.hpp"
#include "mvr/sim/simulation.hpp"

using namespace mvr::sim;

namespace {

std::string fixture(const char* name) {
    return std::string(MVR_FIXTURES_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("every bundled fixture passes its own checks") {
    const char* files[] = {
        "table1.json",          "fig1_case_a.json",
        "fig1_case_b_upper.json", "fig1_case_b_lower.json",
        "fig1_case_c.json",     "fig1_case_d.json",
        "fig1_case_e_variant.json", "fig3.json",
    };
    for (const char* file : files) {
        CAPTURE(file);
        Scenario scenario = load_scenario_file(fixture(file));
        ScenarioReport report = run_scenario(scenario);
        REQUIRE(report.checks > 0);
        CHECK(report.failures == 0);
    }
}

TEST_CASE("the worked-example fixture checks every time step") {
    Scenario scenario = load_scenario_file(fixture("table1.json"));
    ScenarioReport report = run_scenario(scenario);
    // Eight time steps, each with a value check and a stack check per replica.
    CHECK(report.checks == 32);
    CHECK(report.ok());
}

TEST_CASE("fixture runs are byte-stable") {
    Scenario scenario = load_scenario_file(fixture("fig3.json"));
    auto lines_a = run_scenario(scenario).to_json_lines();
    auto lines_b = run_scenario(scenario).to_json_lines();
    REQUIRE(lines_a.size() == lines_b.size());
    for (std::size_t i = 0; i < lines_a.size(); ++i) {
        CHECK(lines_a[i].dump() == lines_b[i].dump());
    }
}

TEST_CASE("loading a malformed scenario reports the line") {
    CHECK_THROWS_AS(load_scenario_file(fixture("does_not_exist.json")),
                    mvr::ParseError);
}
