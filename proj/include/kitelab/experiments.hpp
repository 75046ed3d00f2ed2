#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kitelab/adaptation.hpp"
#include "kitelab/scenario.hpp"

namespace kitelab {

// Steady-state force aggregates of a fixed-command flight: warmup loops
// are discarded, the rest contribute per-loop records.  F is the mean
// tension over all retained samples; dF the mean per-loop left-right
// split (classified against the commanded center azimuth).
struct PathMeasure {
    double f_bar = 0.0;
    double delta_f = 0.0;
    int loops = 0;
    std::vector<LoopRecord> loop_records;
};

PathMeasure measure_fixed_path(const WindEnvironment& env, const BodyParams& body,
                               const ControllerParams& ctrl, const PathParams& path, double dt,
                               double controller_period, int warmup_loops, int measure_loops,
                               double max_duration);

// Decision sequence driven by the quasi-static model instead of the
// point-mass sim: each loop is a midpoint-sampled figure-eight at the
// currently commanded center, each sample measured through the optional
// sensors.  This isolates the adaptation and sensor layers from flight
// dynamics.
struct StubAdaptSpec {
    PathParams initial;
    double phi_w = 0.0;
    AdaptConfig adapt;
    int samples_per_loop = 2000;
    int decisions = 50;
};

std::vector<Decision> run_stub_adaptation(const TractionConstants& constants,
                                          const ShearParams& shear, const StubAdaptSpec& spec,
                                          SensorSuite* sensors);

// Scenario runners: each writes its CSV products into out_dir with the
// scenario name as prefix and returns the file list.
std::vector<std::filesystem::path> run_sweep_scenario(const Scenario& s,
                                                      const std::filesystem::path& out_dir,
                                                      int threads);
std::vector<std::filesystem::path> run_adapt_scenario(const Scenario& s,
                                                      const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> run_turbulence_study(const Scenario& s,
                                                        const std::filesystem::path& out_dir,
                                                        int threads);
std::vector<std::filesystem::path> run_sensor_study(const Scenario& s,
                                                    const std::filesystem::path& out_dir);

// Dispatch on scenario kind; seed_override replaces the turbulence seed
// (and shifts study base seeds) when present.
std::vector<std::filesystem::path> run_scenario(Scenario s, const std::filesystem::path& out_dir,
                                                int threads,
                                                std::optional<std::uint64_t> seed_override);

// Ambiguity band of the force split under turbulence: the contiguous range
// of commanded azimuth offsets whose aggregated dF observations straddle
// zero, per aggregation length.
struct BandRow {
    int n_avg = 0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    double width = 0.0;
    int ambiguous_points = 0;
};

struct DetailCell {
    double min_delta = 0.0;
    double max_delta = 0.0;
    long count = 0;
};

struct TurbulenceStudyResult {
    std::vector<BandRow> bands;
    std::vector<double> detail_phi;                    // grid of azimuth offsets
    std::vector<std::vector<DetailCell>> detail_cells; // [n_avg index][phi index]
};

TurbulenceStudyResult turbulence_band_study(const Scenario& s, int threads);

}  // namespace kitelab
