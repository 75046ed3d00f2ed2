#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kitelab/adaptation.hpp"
#include "kitelab/errors.hpp"
#include "kitelab/path_geometry.hpp"
#include "kitelab/pointmass_sim.hpp"
#include "kitelab/traction.hpp"
#include "kitelab/wind_model.hpp"

namespace kitelab {

// One experiment = one scenario file.  The file is INI-style text:
// [section] headers, "key = value" lines, '#' comments.  Omitted physical
// blocks fall back to the benchmark defaults baked into the parameter
// structs.  Batch seeds are explicit in the file, never ambient.
struct Scenario {
    enum class Kind { Sweep, Adapt, TurbulenceStudy, SensorStudy };

    Kind kind = Kind::Sweep;
    std::string name;              // output file prefix
    double duration = 300.0;       // s
    double dt = 0.02;              // s, dynamics step
    double controller_period = 0.02;  // s, guidance/measurement period

    ShearParams shear;
    DirectionSchedule schedule;
    TurbulenceParams turbulence;
    double turb_ref_height = 0.0;  // 0 -> height of the commanded path center
    BodyParams body;
    PathParams path;
    ControllerParams controller;
    AdaptConfig adapt;

    struct Sensors {
        bool enabled = false;
        int angle_bits = 10;
        double angle_noise_std = 0.0;
        std::uint64_t angle_seed = 101;
        double force_gain_error = 0.0;
        double force_offset = 0.0;
        double force_noise_std = 0.0;
        std::uint64_t force_seed = 202;
    } sensors;

    struct SweepCfg {
        SweepAxis axis1;
        std::optional<SweepAxis> axis2;
        int samples = 2000;       // quasi-static path samples per row
        bool pointmass = false;   // also fly each row with the point-mass sim
        int warmup_loops = 3;
        int measure_loops = 6;
    } sweep;

    struct StudyCfg {
        int seeds = 50;
        std::uint64_t base_seed = 1000;
        std::vector<int> n_avg_list{1, 3, 5, 8};
        double phi_from = -0.36;
        double phi_to = 0.36;
        int phi_count = 25;
        int warmup_loops = 3;
    } study;

    struct SensorStudyCfg {
        int decisions = 50;
        int samples_per_loop = 20000;
        int trials = 50;             // paired aggregates per grid offset
        double grid_from = -0.6;
        double grid_to = 0.6;
        int grid_count = 25;
    } sensor_study;

    double resolved_turb_ref_height() const;
};

// Parses and fully validates scenario text.  Throws ConfigError with the
// offending key and line on any problem (syntax, unknown or duplicate
// keys, out-of-range values, missing sections for the chosen kind).
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::filesystem::path& path);

}  // namespace kitelab
