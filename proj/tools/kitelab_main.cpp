// Command-line harness: run or validate scenario files.
//
// Exit codes: 0 success, 2 configuration error, 3 simulation crash,
// 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kitelab/errors.hpp"
#include "kitelab/experiments.hpp"
#include "kitelab/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"kitelab: tethered-wing crosswind simulation laboratory"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = ".";
    int threads = 1;
    std::optional<std::uint64_t> seed_override;

    CLI::App* run = app.add_subcommand("run", "execute a scenario and write its CSV outputs");
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--out-dir", out_dir, "output directory (created if missing)");
    run->add_option("--threads", threads, "worker threads for batch studies")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed-override", seed_override,
                    "replace the scenario's base random seed");

    CLI::App* validate = app.add_subcommand("validate", "parse and check a scenario file");
    validate->add_option("scenario", scenario_path, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const kitelab::Scenario scenario = kitelab::load_scenario(scenario_path);
        if (app.got_subcommand(validate)) {
            std::cout << "ok: " << scenario_path << "\n";
            return 0;
        }
        const auto files = kitelab::run_scenario(scenario, out_dir, threads, seed_override);
        for (const auto& f : files) std::cout << f.string() << "\n";
        return 0;
    } catch (const kitelab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kitelab::SimulationCrash& e) {
        std::cerr << "crash: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
