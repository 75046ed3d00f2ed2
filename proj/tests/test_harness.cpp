// End-to-end scenario execution: CSV products, schema lines, row counts,
// determinism across reruns and thread counts, and golden-output
// stability of the quasi-static sweep.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kitelab/errors.hpp"
#include "kitelab/experiments.hpp"
#include "kitelab/scenario.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScenarioDir = KITELAB_SCENARIO_DIR;
const fs::path kGoldenDir = KITELAB_GOLDEN_DIR;

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "missing file: " << p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> cells_of(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

// Data rows = all lines minus the "# schema:" comment and the header.
int data_rows(const std::string& text) {
    return static_cast<int>(lines_of(text).size()) - 2;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("kitelab_harness_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("center sweep scenario: schema, row count, and byte-stable reruns") {
    const kitelab::Scenario s = kitelab::load_scenario(kScenarioDir / "center_sweep.ini");
    const auto files_a = kitelab::run_scenario(s, fresh_dir("sweep_a"), 1, std::nullopt);
    const auto files_b = kitelab::run_scenario(s, fresh_dir("sweep_b"), 2, std::nullopt);
    REQUIRE(files_a.size() == 1);
    REQUIRE(files_b.size() == 1);
    CHECK(files_a[0].filename() == fs::path("center_sweep_sweep.csv"));

    const std::string text = read_file(files_a[0]);
    const auto lines = lines_of(text);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "# schema: sweep.v1");
    CHECK(lines[1] == "phi_c,f_bar,delta_f,f_bar_norm");
    CHECK(data_rows(text) == 21);

    // The normalised column peaks at exactly 1 somewhere on the grid.
    bool saw_unit_peak = false;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto cells = cells_of(lines[i]);
        REQUIRE(cells.size() == 4);
        const double norm = std::stod(cells[3]);
        CHECK(norm > 0.0);
        CHECK(norm <= 1.0);
        if (norm == 1.0) saw_unit_peak = true;
    }
    CHECK(saw_unit_peak);

    // The thread count must never change the bytes.
    CHECK(read_file(files_b[0]) == text);
}

TEST_CASE("sweep output matches the checked-in golden file byte for byte") {
    const kitelab::Scenario s = kitelab::load_scenario(kScenarioDir / "center_sweep.ini");
    const auto files = kitelab::run_scenario(s, fresh_dir("sweep_golden"), 1, std::nullopt);
    REQUIRE(files.size() == 1);
    CHECK(read_file(files[0]) == read_file(kGoldenDir / "center_sweep_sweep.csv"));
}

TEST_CASE("sweep with flight verification adds a point-mass table") {
    const kitelab::Scenario s = kitelab::parse_scenario(
        "[run]\n"
        "kind = sweep\n"
        "name = tiny\n"
        "duration = 200\n"
        "[sweep]\n"
        "param = phi_c\n"
        "param_from = -0.1\n"
        "param_to = 0.1\n"
        "param_count = 2\n"
        "samples = 500\n"
        "pointmass = true\n"
        "warmup_loops = 1\n"
        "measure_loops = 2\n");
    const auto files = kitelab::run_scenario(s, fresh_dir("sweep_pm"), 2, std::nullopt);
    REQUIRE(files.size() == 2);
    CHECK(files[1].filename() == fs::path("tiny_sweep_pointmass.csv"));

    const std::string text = read_file(files[1]);
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "# schema: sweep_pointmass.v1");
    CHECK(lines[1] == "phi_c,f_bar_sim,delta_f_sim,f_bar_sim_norm,loops");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto cells = cells_of(lines[i]);
        REQUIRE(cells.size() == 5);
        CHECK(std::stod(cells[1]) > 0.0);   // measured force
        CHECK(std::stol(cells[4]) == 2);    // requested loop count delivered
    }
}

TEST_CASE("adapt scenario writes decision, loop, and summary tables") {
    const kitelab::Scenario s = kitelab::parse_scenario(
        "[run]\n"
        "kind = adapt\n"
        "name = mini\n"
        "duration = 60\n"
        "[wind]\n"
        "phi_w = 0\n"
        "[path]\n"
        "phi_c = 0.15\n"
        "[adaptation]\n"
        "n_avg = 1\n");
    const auto files = kitelab::run_scenario(s, fresh_dir("adapt"), 1, std::nullopt);
    REQUIRE(files.size() == 3);
    CHECK(files[0].filename() == fs::path("mini_decisions.csv"));
    CHECK(files[1].filename() == fs::path("mini_loops.csv"));
    CHECK(files[2].filename() == fs::path("mini_summary.csv"));

    const std::string decisions = read_file(files[0]);
    const auto dlines = lines_of(decisions);
    REQUIRE(dlines.size() >= 3);
    CHECK(dlines[0] == "# schema: decisions.v1");
    CHECK(dlines[1] == "decision,t,phase,delta_f,f_bar,step_phi,step_theta,phi_c,theta_c");
    const int n_dec = data_rows(decisions);
    CHECK(n_dec >= 5);
    double last_t = 0.0;
    for (std::size_t i = 2; i < dlines.size(); ++i) {
        const auto cells = cells_of(dlines[i]);
        REQUIRE(cells.size() == 9);
        CHECK(std::stol(cells[0]) == static_cast<long>(i) - 2);  // contiguous indices
        const double t = std::stod(cells[1]);
        CHECK(t > last_t);
        last_t = t;
        CHECK((cells[2] == "phi" || cells[2] == "theta"));
        CHECK(std::stod(cells[4]) > 0.0);  // aggregated force
    }

    const std::string loops = read_file(files[1]);
    const auto llines = lines_of(loops);
    CHECK(llines[0] == "# schema: loops.v1");
    CHECK(llines[1] ==
          "loop,t_end,f_bar,f_left,f_right,delta_f,n_samples,n_left,n_right,"
          "center_phi,center_theta");
    CHECK(data_rows(loops) >= n_dec);  // every decision consumed >= 1 loop

    const std::string summary = read_file(files[2]);
    const auto slines = lines_of(summary);
    REQUIRE(slines.size() == 3);
    CHECK(slines[0] == "# schema: adapt_summary.v1");
    CHECK(slines[1] ==
          "duration,steps,loops,decisions,final_phi_c,final_theta_c,mean_tension,"
          "slack_samples");
    const auto cells = cells_of(slines[2]);
    REQUIRE(cells.size() == 8);
    CHECK(std::stol(cells[1]) == 3000);          // 60 s at dt = 0.02
    CHECK(std::stol(cells[2]) == data_rows(loops));
    CHECK(std::stol(cells[3]) == n_dec);
    CHECK(std::stod(cells[6]) > 0.0);            // taut on average
    CHECK(std::stol(cells[7]) == 0);             // never slack in calm wind
}

TEST_CASE("adapt runs are deterministic and the seed override changes the trace") {
    const kitelab::Scenario s = kitelab::parse_scenario(
        "[run]\n"
        "kind = adapt\n"
        "name = turb\n"
        "duration = 60\n"
        "[turbulence]\n"
        "enabled = true\n"
        "intensity = 0.08\n"
        "length_scale = 30\n"
        "seed = 7\n"
        "[path]\n"
        "phi_c = 0.1\n"
        "[adaptation]\n"
        "n_avg = 1\n");
    const auto f1 = kitelab::run_scenario(s, fresh_dir("turb1"), 1, std::nullopt);
    const auto f2 = kitelab::run_scenario(s, fresh_dir("turb2"), 1, std::nullopt);
    const auto f3 = kitelab::run_scenario(s, fresh_dir("turb3"), 1,
                                          std::optional<std::uint64_t>(99));
    CHECK(read_file(f1[0]) == read_file(f2[0]));
    CHECK(read_file(f1[0]) != read_file(f3[0]));
}

TEST_CASE("sensor study writes paired decisions and a sign-fidelity grid") {
    const kitelab::Scenario s = kitelab::parse_scenario(
        "[run]\n"
        "kind = sensor_study\n"
        "name = sens\n"
        "[path]\n"
        "phi_c = 0.2\n"
        "[sensors]\n"
        "angle_bits = 10\n"
        "angle_noise_std = 0.002\n"
        "force_gain_error = 0.1\n"
        "force_offset = 100\n"
        "force_noise_std = 50\n"
        "[sensor_study]\n"
        "decisions = 4\n"
        "samples_per_loop = 200\n"
        "trials = 5\n"
        "grid_from = -0.3\n"
        "grid_to = 0.3\n"
        "grid_count = 5\n");
    const auto files = kitelab::run_scenario(s, fresh_dir("sensor"), 1, std::nullopt);
    REQUIRE(files.size() == 2);

    const std::string paired = read_file(files[0]);
    const auto plines = lines_of(paired);
    CHECK(plines[0] == "# schema: sensor_paired.v1");
    CHECK(plines[1] ==
          "decision,phase_clean,phi_c_clean,theta_c_clean,phase_noisy,phi_c_noisy,"
          "theta_c_noisy,identical");
    CHECK(data_rows(paired) == 4);

    const std::string grid = read_file(files[1]);
    const auto glines = lines_of(grid);
    CHECK(glines[0] == "# schema: sensor_sign_grid.v1");
    CHECK(glines[1] == "phi_offset,delta_f_true,delta_f_noisy_mean,sign_match_fraction,trials");
    REQUIRE(data_rows(grid) == 5);

    // Far from alignment the measured split keeps the true sign in every trial.
    const auto first = cells_of(glines[2]);
    const auto last = cells_of(glines.back());
    CHECK(std::stod(first[0]) == doctest::Approx(-0.3));
    CHECK(std::stod(last[0]) == doctest::Approx(0.3));
    CHECK(std::stod(first[3]) == doctest::Approx(1.0));
    CHECK(std::stod(last[3]) == doctest::Approx(1.0));

    // All randomness is seeded: a rerun reproduces both files exactly.
    const auto files2 = kitelab::run_scenario(s, fresh_dir("sensor2"), 1, std::nullopt);
    CHECK(read_file(files2[0]) == paired);
    CHECK(read_file(files2[1]) == grid);
}

TEST_CASE("turbulence study reports one ambiguity-band row per aggregation length") {
    const kitelab::Scenario s = kitelab::parse_scenario(
        "[run]\n"
        "kind = turbulence_study\n"
        "name = bands\n"
        "duration = 60\n"
        "[turbulence]\n"
        "intensity = 0.1\n"
        "length_scale = 30\n"
        "[study]\n"
        "seeds = 2\n"
        "base_seed = 300\n"
        "n_avg_list = 1, 2\n"
        "phi_from = -0.08\n"
        "phi_to = 0.08\n"
        "phi_count = 3\n"
        "warmup_loops = 1\n");
    const auto files = kitelab::run_scenario(s, fresh_dir("bands"), 2, std::nullopt);
    REQUIRE(files.size() == 2);

    const std::string band = read_file(files[0]);
    const auto blines = lines_of(band);
    CHECK(blines[0] == "# schema: turbulence_band.v1");
    CHECK(blines[1] == "n_avg,band_lo,band_hi,band_width,ambiguous_points");
    REQUIRE(data_rows(band) == 2);
    CHECK(cells_of(blines[2])[0] == "1");
    CHECK(cells_of(blines[3])[0] == "2");

    const std::string detail = read_file(files[1]);
    CHECK(lines_of(detail)[0] == "# schema: turbulence_band_detail.v1");
    CHECK(data_rows(detail) == 2 * 3);  // one row per (n_avg, grid point) pair

    // Merged in seed order: thread count cannot change the bytes.
    const auto files2 = kitelab::run_scenario(s, fresh_dir("bands2"), 1, std::nullopt);
    CHECK(read_file(files2[0]) == band);
    CHECK(read_file(files2[1]) == detail);
}

TEST_CASE("fixed-path measurement: calm symmetric flight has a small split") {
    const kitelab::WindEnvironment env(kitelab::ShearParams{}, 0.0);
    const kitelab::BodyParams body;
    const kitelab::ControllerParams ctrl;
    const kitelab::PathParams path;  // centered downwind
    const kitelab::PathMeasure m =
        kitelab::measure_fixed_path(env, body, ctrl, path, 0.02, 0.02, 2, 3, 120.0);
    CHECK(m.loops == 3);
    CHECK(m.loop_records.size() == 3);
    CHECK(m.f_bar > 0.0);
    CHECK(std::abs(m.delta_f) < 0.2 * m.f_bar);
    for (const auto& rec : m.loop_records) {
        CHECK(rec.n_samples > 0);
        CHECK(rec.n_left > 0);
        CHECK(rec.n_right > 0);
        CHECK(rec.f_bar > 0.0);
        CHECK(rec.f_bar == doctest::Approx((rec.f_left * rec.n_left +
                                            rec.f_right * rec.n_right) /
                                           rec.n_samples));
    }
}

TEST_CASE("fixed-path measurement crashes cleanly when loops cannot complete") {
    const kitelab::WindEnvironment env(kitelab::ShearParams{}, 0.0);
    const kitelab::BodyParams body;
    const kitelab::ControllerParams ctrl;
    const kitelab::PathParams path;
    // One second of flight cannot contain two full figure-eights (the
    // launch transient can close its first loop in under a second).
    CHECK_THROWS_AS(
        kitelab::measure_fixed_path(env, body, ctrl, path, 0.02, 0.02, 0, 2, 1.0),
        kitelab::SimulationCrash);
}
