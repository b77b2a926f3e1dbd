// mvr-undo: scenario replay and benchmarking for the replicated register.
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 parse/usage error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvr/bench.hpp"
#include "mvr/errors.hpp"
#include "mvr/sim/simulation.hpp"

namespace {

using mvr::sim::ScenarioReport;
using mvr::sim::StepRecord;

std::string opids_short(const std::vector<mvr::OpId>& ids) {
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += mvr::to_string(ids[i]);
    }
    return out + "]";
}

std::string action_summary(const nlohmann::json& action) {
    std::string kind = action.at("op").get<std::string>();
    std::ostringstream out;
    out << kind;
    if (action.contains("replica")) {
        out << " " << action["replica"].get<std::string>();
    }
    if (kind == "set") {
        out << " value=" << action["value"].dump();
    } else if (kind == "sync") {
        out << " " << action["from"].get<std::string>() << "->"
            << action["to"].get<std::string>();
    } else if (kind == "check") {
        out << " expect=" << action["values"].dump();
    }
    return out.str();
}

void print_report_table(const ScenarioReport& report, std::ostream& out) {
    if (!report.name.empty()) {
        out << "scenario: " << report.name << "\n";
    }
    for (const StepRecord& step : report.steps) {
        std::ostringstream line;
        line << "[" << step.index << "] " << action_summary(step.action);
        if (step.pass.has_value()) {
            line << (*step.pass ? "  PASS" : "  FAIL");
            if (!*step.pass) {
                line << "  expected=" << step.expected.dump()
                     << " actual=" << step.actual.dump();
            }
        }
        out << line.str() << "\n";
        for (const auto& [id, snap] : step.state) {
            out << "      " << id << ": values=" << nlohmann::json(snap.values).dump()
                << " undo=" << opids_short(snap.undo)
                << " redo=" << opids_short(snap.redo) << "\n";
        }
    }
    out << "checks: " << report.checks << "  failures: " << report.failures
        << "  => " << (report.ok() ? "PASS" : "FAIL") << "\n";
}

void print_report_json(const ScenarioReport& report, std::ostream& out) {
    for (const nlohmann::json& line : report.to_json_lines()) {
        out << line.dump() << "\n";
    }
}

std::uint64_t seed_or_env(const CLI::Option* seed_opt, std::uint64_t seed) {
    if (seed_opt->count() > 0) return seed;
    if (const char* env = std::getenv("MVR_UNDO_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return seed;
}

int cmd_run(const std::string& path, const mvr::sim::DeliverySchedule& schedule,
            bool use_cache, bool as_json) {
    mvr::sim::Scenario scenario = mvr::sim::load_scenario_file(path);
    ScenarioReport report = mvr::sim::run_scenario(scenario, schedule, use_cache);
    if (as_json) {
        print_report_json(report, std::cout);
    } else {
        print_report_table(report, std::cout);
    }
    return report.ok() ? 0 : 1;
}

int cmd_bench(const mvr::bench::BenchConfig& config, bool as_json) {
    std::vector<mvr::bench::BenchResult> results = mvr::bench::run_bench(config);
    if (as_json) {
        nlohmann::json modes = nlohmann::json::array();
        for (mvr::bench::Mode m : config.modes) {
            modes.push_back(mvr::bench::to_string(m));
        }
        nlohmann::json lengths(config.lengths);
        // The timer covers head resolution only; building the history and
        // warming the cache happen outside the measured region.
        std::cout << nlohmann::json{{"type", "bench-header"},
                                    {"version", 1},
                                    {"runs", config.runs},
                                    {"batch", config.batch},
                                    {"measures", "head-resolution-only"},
                                    {"constructionIncluded", false},
                                    {"lengths", lengths},
                                    {"modes", modes}}
                         .dump()
                  << "\n";
        for (const auto& r : results) {
            std::cout << nlohmann::json{{"type", "bench"},
                                        {"mode", mvr::bench::to_string(r.mode)},
                                        {"n", r.length},
                                        {"runs", r.runs},
                                        {"medianMs", r.median_ms},
                                        {"meanMs", r.mean_ms},
                                        {"steps", r.steps}}
                             .dump()
                      << "\n";
        }
    } else {
        std::cout << "mode                  n      median-ms    mean-ms      steps\n";
        for (const auto& r : results) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%-20s %6zu %12.6f %10.6f %10zu",
                          mvr::bench::to_string(r.mode).c_str(), r.length,
                          r.median_ms, r.mean_ms, r.steps);
            std::cout << buf << "\n";
        }
        std::cout << "(medians over " << config.runs
                  << " runs; resolution only, construction excluded)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Replicated multi-value register with undo/redo"};
    app.require_subcommand(1);

    // run
    std::string scenario_path;
    std::uint64_t seed = 0;
    double dup_rate = 0.0;
    std::size_t reorder = 0;
    bool no_cache = false;
    bool as_json = false;
    CLI::App* run = app.add_subcommand("run", "Replay a scenario file");
    run->add_option("scenario", scenario_path, "Scenario JSON file")
        ->required();
    CLI::Option* seed_opt =
        run->add_option("--seed", seed, "Delivery schedule seed (fallback: MVR_UNDO_SEED)");
    run->add_option("--dup-rate", dup_rate, "Duplicate delivery probability [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    run->add_option("--reorder", reorder, "Reorder window for sync batches");
    run->add_flag("--no-cache", no_cache, "Resolve values without the restore cache");
    run->add_flag("--json", as_json, "Emit JSON lines instead of a table");

    // bench
    std::vector<std::size_t> lengths{200, 400, 600, 800};
    std::size_t runs = 1024;
    bool bench_no_cache = false;
    bool bench_json = false;
    CLI::App* bench =
        app.add_subcommand("bench", "Alternating undo-redo resolution benchmark");
    bench->add_option("--lengths", lengths, "Undo-redo pair counts")
        ->delimiter(',');
    bench->add_option("--runs", runs, "Samples per length and mode")
        ->check(CLI::PositiveNumber);
    bench->add_flag("--no-cache", bench_no_cache, "Skip the cached redo mode");
    bench->add_flag("--json", bench_json, "Emit JSON lines instead of a table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            mvr::sim::DeliverySchedule schedule;
            schedule.seed = seed_or_env(seed_opt, seed);
            schedule.duplication_rate = dup_rate;
            schedule.reorder_window = reorder;
            return cmd_run(scenario_path, schedule, !no_cache, as_json);
        }
        mvr::bench::BenchConfig config;
        config.lengths = lengths;
        config.runs = runs;
        if (bench_no_cache) {
            config.modes = {mvr::bench::Mode::undo_head,
                            mvr::bench::Mode::redo_head_uncached};
        }
        return cmd_bench(config, bench_json);
    } catch (const mvr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mvr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
