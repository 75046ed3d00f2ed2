#include "kitelab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "kitelab/csv.hpp"

namespace kitelab {

namespace {

// Run fn(i) for i in [0, n) on up to `threads` workers.  Workers write
// into preallocated per-index slots, so merged results stay in index
// order; the first captured exception is rethrown in index order.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

// Per-loop force tally against a fixed boundary azimuth.
struct LoopTally {
    double sum_f = 0.0, sum_left = 0.0, sum_right = 0.0;
    double sum_phi = 0.0, sum_theta = 0.0;
    int n_left = 0, n_right = 0;

    void add(double phi, double theta, double f, double boundary) {
        sum_f += f;
        sum_phi += phi;
        sum_theta += theta;
        if (phi - boundary >= 0.0) {
            sum_left += f;
            ++n_left;
        } else {
            sum_right += f;
            ++n_right;
        }
    }

    LoopRecord close(double t) {
        LoopRecord rec;
        const int n = n_left + n_right;
        rec.t_end = t;
        rec.n_samples = n;
        rec.n_left = n_left;
        rec.n_right = n_right;
        rec.f_bar = n > 0 ? sum_f / n : 0.0;
        rec.f_left = n_left > 0 ? sum_left / n_left : 0.0;
        rec.f_right = n_right > 0 ? sum_right / n_right : 0.0;
        rec.delta_f = rec.f_left - rec.f_right;
        rec.center_phi = n > 0 ? sum_phi / n : 0.0;
        rec.center_theta = n > 0 ? sum_theta / n : 0.0;
        *this = LoopTally{};
        return rec;
    }
};

std::filesystem::path prepare_dir(const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    return out_dir;
}

std::vector<PathParams> sweep_variants(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::vector<PathParams> variants;
    variants.reserve(rows.size());
    for (const auto& row : rows) {
        PathParams p = spec.base;
        set_path_param(p, spec.axis1.param, row.v1);
        if (spec.axis2) set_path_param(p, spec.axis2->param, row.v2);
        variants.push_back(p);
    }
    return variants;
}

}  // namespace

PathMeasure measure_fixed_path(const WindEnvironment& env, const BodyParams& body,
                               const ControllerParams& ctrl, const PathParams& path, double dt,
                               double controller_period, int warmup_loops, int measure_loops,
                               double max_duration) {
    FlightSim sim(env, body, ctrl, path, dt, controller_period);
    LoopTally tally;
    PathMeasure out;
    int completed = 0;
    const long max_steps = static_cast<long>(std::llround(max_duration / dt));

    for (long i = 0; i < max_steps && out.loops < measure_loops; ++i) {
        const SimSample sample = sim.advance();
        if (!sample.controller_sample) continue;
        tally.add(sample.state.phi, sample.state.theta, sample.tension, path.phi_c);
        if (!sample.loop_complete) continue;
        LoopRecord rec = tally.close(sample.t);
        ++completed;
        if (completed <= warmup_loops) continue;
        out.loop_records.push_back(rec);
        ++out.loops;
    }
    if (out.loops < measure_loops) {
        throw SimulationCrash(max_duration, "fixed-path measurement collected only " +
                                                std::to_string(out.loops) + "/" +
                                                std::to_string(measure_loops) + " loops");
    }

    double sum_f = 0.0, sum_delta = 0.0;
    long total = 0;
    for (const auto& rec : out.loop_records) {
        sum_f += rec.f_bar * rec.n_samples;
        sum_delta += rec.delta_f;
        total += rec.n_samples;
    }
    out.f_bar = sum_f / static_cast<double>(total);
    out.delta_f = sum_delta / static_cast<double>(out.loops);
    return out;
}

std::vector<Decision> run_stub_adaptation(const TractionConstants& constants,
                                          const ShearParams& shear, const StubAdaptSpec& spec,
                                          SensorSuite* sensors) {
    Adapter adapter(spec.adapt, spec.initial.phi_c, spec.initial.theta_c);
    PathParams commanded = spec.initial;
    double t = 0.0;
    std::vector<Decision> decisions;

    while (static_cast<int>(decisions.size()) < spec.decisions) {
        const auto points = sample_path_midpoint(commanded, spec.samples_per_loop);
        for (std::size_t k = 0; k < points.size(); ++k) {
            const auto& pt = points[k];
            t += 1.0;
            double phi_m = pt.phi;
            double theta_m = pt.theta;
            if (sensors && sensors->angles) {
                const auto [pm, tm] = sensors->angles->measure(phi_m, theta_m);
                phi_m = pm;
                theta_m = tm;
            }
            double f_m = point_force(constants, shear, pt.phi, pt.theta, spec.phi_w);
            if (sensors && sensors->force) f_m = sensors->force->measure(f_m);

            const bool last = k + 1 == points.size();
            const auto decision = adapter.accumulate(t, phi_m, theta_m, f_m, last);
            if (decision) {
                decisions.push_back(*decision);
                commanded.phi_c = decision->phi_c;
                commanded.theta_c = decision->theta_c;
            }
        }
    }
    return decisions;
}

std::vector<std::filesystem::path> run_sweep_scenario(const Scenario& s,
                                                      const std::filesystem::path& out_dir,
                                                      int threads) {
    const TractionConstants constants = derive_constants(s.body.aero);
    SweepSpec spec;
    spec.base = s.path;
    spec.phi_w = s.schedule.at(0.0);
    spec.axis1 = s.sweep.axis1;
    spec.axis2 = s.sweep.axis2;
    spec.samples = s.sweep.samples;
    const std::vector<SweepRow> rows = sweep(constants, s.shear, spec);

    double f_max = 0.0;
    for (const auto& row : rows) f_max = std::max(f_max, row.f_bar);
    const double norm = f_max > 0.0 ? f_max : 1.0;

    const bool two_axes = spec.axis2.has_value();
    std::vector<std::string> columns;
    columns.push_back(spec.axis1.param);
    if (two_axes) columns.push_back(spec.axis2->param);
    columns.insert(columns.end(), {"f_bar", "delta_f", "f_bar_norm"});

    const auto dir = prepare_dir(out_dir);
    std::vector<std::filesystem::path> files;
    files.push_back(dir / (s.name + "_sweep.csv"));
    {
        CsvFile csv(files.back(), "sweep.v1", columns);
        for (const auto& row : rows) {
            std::vector<std::string> cells{csv_num(row.v1)};
            if (two_axes) cells.push_back(csv_num(row.v2));
            cells.push_back(csv_num(row.f_bar));
            cells.push_back(csv_num(row.delta_f));
            cells.push_back(csv_num(row.f_bar / norm));
            csv.row(cells);
        }
    }

    if (s.sweep.pointmass) {
        const WindEnvironment env(s.shear, s.schedule, s.turbulence, s.duration, s.dt,
                                  s.resolved_turb_ref_height());
        const std::vector<PathParams> variants = sweep_variants(spec, rows);
        std::vector<PathMeasure> measures(rows.size());
        parallel_for(static_cast<int>(rows.size()), threads, [&](int i) {
            measures[static_cast<std::size_t>(i)] = measure_fixed_path(
                env, s.body, s.controller, variants[static_cast<std::size_t>(i)], s.dt,
                s.controller_period, s.sweep.warmup_loops, s.sweep.measure_loops, s.duration);
        });

        double f_max_sim = 0.0;
        for (const auto& m : measures) f_max_sim = std::max(f_max_sim, m.f_bar);
        const double norm_sim = f_max_sim > 0.0 ? f_max_sim : 1.0;

        std::vector<std::string> sim_columns;
        sim_columns.push_back(spec.axis1.param);
        if (two_axes) sim_columns.push_back(spec.axis2->param);
        sim_columns.insert(sim_columns.end(),
                           {"f_bar_sim", "delta_f_sim", "f_bar_sim_norm", "loops"});

        files.push_back(dir / (s.name + "_sweep_pointmass.csv"));
        CsvFile csv(files.back(), "sweep_pointmass.v1", sim_columns);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<std::string> cells{csv_num(rows[i].v1)};
            if (two_axes) cells.push_back(csv_num(rows[i].v2));
            cells.push_back(csv_num(measures[i].f_bar));
            cells.push_back(csv_num(measures[i].delta_f));
            cells.push_back(csv_num(measures[i].f_bar / norm_sim));
            cells.push_back(csv_int(measures[i].loops));
            csv.row(cells);
        }
    }
    return files;
}

std::vector<std::filesystem::path> run_adapt_scenario(const Scenario& s,
                                                      const std::filesystem::path& out_dir) {
    const WindEnvironment env(s.shear, s.schedule, s.turbulence, s.duration, s.dt,
                              s.resolved_turb_ref_height());
    SensorSuite sensors;
    if (s.sensors.enabled) {
        sensors.angles.emplace(s.sensors.angle_bits, s.sensors.angle_noise_std,
                               s.sensors.angle_seed);
        sensors.force.emplace(s.sensors.force_gain_error, s.sensors.force_offset,
                              s.sensors.force_noise_std, s.sensors.force_seed);
    }
    Adapter adapter(s.adapt, s.path.phi_c, s.path.theta_c);
    const AdaptTrace trace = run_closed_loop(env, s.body, s.controller, sensors, adapter, s.path,
                                             s.duration, s.dt, s.controller_period);

    const auto dir = prepare_dir(out_dir);
    std::vector<std::filesystem::path> files;

    files.push_back(dir / (s.name + "_decisions.csv"));
    {
        CsvFile csv(files.back(), "decisions.v1",
                    {"decision", "t", "phase", "delta_f", "f_bar", "step_phi", "step_theta",
                     "phi_c", "theta_c"});
        for (const auto& d : trace.decisions) {
            csv.row({csv_int(d.index), csv_num(d.t),
                     d.phase == Phase::PhiCorrection ? "phi" : "theta", csv_num(d.delta_f),
                     csv_num(d.f_bar), csv_num(d.step_phi), csv_num(d.step_theta),
                     csv_num(d.phi_c), csv_num(d.theta_c)});
        }
    }

    files.push_back(dir / (s.name + "_loops.csv"));
    {
        CsvFile csv(files.back(), "loops.v1",
                    {"loop", "t_end", "f_bar", "f_left", "f_right", "delta_f", "n_samples",
                     "n_left", "n_right", "center_phi", "center_theta"});
        long i = 0;
        for (const auto& lp : trace.loops) {
            csv.row({csv_int(i++), csv_num(lp.t_end), csv_num(lp.f_bar), csv_num(lp.f_left),
                     csv_num(lp.f_right), csv_num(lp.delta_f), csv_int(lp.n_samples),
                     csv_int(lp.n_left), csv_int(lp.n_right), csv_num(lp.center_phi),
                     csv_num(lp.center_theta)});
        }
    }

    files.push_back(dir / (s.name + "_summary.csv"));
    {
        CsvFile csv(files.back(), "adapt_summary.v1",
                    {"duration", "steps", "loops", "decisions", "final_phi_c", "final_theta_c",
                     "mean_tension", "slack_samples"});
        csv.row({csv_num(s.duration), csv_int(trace.n_steps),
                 csv_int(static_cast<long>(trace.loops.size())),
                 csv_int(static_cast<long>(trace.decisions.size())), csv_num(trace.final_phi_c),
                 csv_num(trace.final_theta_c), csv_num(trace.mean_tension),
                 csv_int(trace.slack_samples)});
    }
    return files;
}

namespace {

struct StudyCell {
    double min_delta = 0.0;
    double max_delta = 0.0;
    long count = 0;

    void absorb(double v) {
        if (count == 0) {
            min_delta = max_delta = v;
        } else {
            min_delta = std::min(min_delta, v);
            max_delta = std::max(max_delta, v);
        }
        ++count;
    }
};

struct StudyGrid {
    // cells[n_avg index][phi index]
    std::vector<std::vector<StudyCell>> cells;
    std::vector<double> phi_values;
    std::vector<int> n_avg_list;

    BandRow band(int n_idx, double grid_step) const {
        BandRow row;
        row.n_avg = n_avg_list[static_cast<std::size_t>(n_idx)];
        bool any = false;
        double lo = 0.0, hi = 0.0;
        for (std::size_t p = 0; p < phi_values.size(); ++p) {
            const StudyCell& cell = cells[static_cast<std::size_t>(n_idx)][p];
            const bool ambiguous =
                cell.count > 0 && cell.min_delta <= 0.0 && cell.max_delta >= 0.0;
            if (!ambiguous) continue;
            ++row.ambiguous_points;
            if (!any) {
                lo = hi = phi_values[p];
                any = true;
            } else {
                lo = std::min(lo, phi_values[p]);
                hi = std::max(hi, phi_values[p]);
            }
        }
        if (any) {
            row.band_lo = lo;
            row.band_hi = hi;
            row.width = hi - lo + grid_step;
        }
        return row;
    }
};

}  // namespace

TurbulenceStudyResult turbulence_band_study(const Scenario& s, int threads) {
    const int n_phi = s.study.phi_count;
    const int n_navg = static_cast<int>(s.study.n_avg_list.size());
    const double grid_step = (s.study.phi_to - s.study.phi_from) / (n_phi - 1);

    StudyGrid grid;
    grid.n_avg_list = s.study.n_avg_list;
    grid.phi_values.resize(static_cast<std::size_t>(n_phi));
    for (int p = 0; p < n_phi; ++p) {
        grid.phi_values[static_cast<std::size_t>(p)] = s.study.phi_from + grid_step * p;
    }
    grid.cells.assign(static_cast<std::size_t>(n_navg),
                      std::vector<StudyCell>(static_cast<std::size_t>(n_phi)));

    // Per-seed, per-phi lists of per-loop splits; filled in parallel and
    // merged in seed order so the aggregate statistics are deterministic.
    std::vector<std::vector<std::vector<double>>> loop_splits(
        static_cast<std::size_t>(s.study.seeds));

    const double phi_w = s.schedule.at(0.0);
    parallel_for(s.study.seeds, threads, [&](int seed_idx) {
        TurbulenceParams turb = s.turbulence;
        turb.enabled = true;
        turb.seed = s.study.base_seed + static_cast<std::uint64_t>(seed_idx);
        const WindEnvironment env(s.shear, s.schedule, turb, s.duration, s.dt,
                                  s.resolved_turb_ref_height());
        auto& per_phi = loop_splits[static_cast<std::size_t>(seed_idx)];
        per_phi.resize(static_cast<std::size_t>(n_phi));
        for (int p = 0; p < n_phi; ++p) {
            PathParams path = s.path;
            path.phi_c = phi_w + grid.phi_values[static_cast<std::size_t>(p)];
            FlightSim sim(env, s.body, s.controller, path, s.dt, s.controller_period);
            LoopTally tally;
            int completed = 0;
            const long steps = static_cast<long>(std::llround(s.duration / s.dt));
            for (long i = 0; i < steps; ++i) {
                const SimSample sample = sim.advance();
                if (!sample.controller_sample) continue;
                tally.add(sample.state.phi, sample.state.theta, sample.tension, path.phi_c);
                if (!sample.loop_complete) continue;
                const LoopRecord rec = tally.close(sample.t);
                if (++completed <= s.study.warmup_loops) continue;
                per_phi[static_cast<std::size_t>(p)].push_back(rec.delta_f);
            }
        }
    });

    for (int seed_idx = 0; seed_idx < s.study.seeds; ++seed_idx) {
        const auto& per_phi = loop_splits[static_cast<std::size_t>(seed_idx)];
        for (int p = 0; p < n_phi; ++p) {
            const auto& splits = per_phi[static_cast<std::size_t>(p)];
            for (int ni = 0; ni < n_navg; ++ni) {
                const int n_avg = s.study.n_avg_list[static_cast<std::size_t>(ni)];
                const std::size_t n_chunks = splits.size() / static_cast<std::size_t>(n_avg);
                for (std::size_t c = 0; c < n_chunks; ++c) {
                    double sum = 0.0;
                    for (int k = 0; k < n_avg; ++k) {
                        sum += splits[c * static_cast<std::size_t>(n_avg) +
                                      static_cast<std::size_t>(k)];
                    }
                    grid.cells[static_cast<std::size_t>(ni)][static_cast<std::size_t>(p)].absorb(
                        sum / n_avg);
                }
            }
        }
    }

    TurbulenceStudyResult result;
    for (int ni = 0; ni < n_navg; ++ni) result.bands.push_back(grid.band(ni, grid_step));

    // Stash the detail grid for the CSV writer.
    result.detail_phi = grid.phi_values;
    result.detail_cells.resize(static_cast<std::size_t>(n_navg));
    for (int ni = 0; ni < n_navg; ++ni) {
        for (int p = 0; p < n_phi; ++p) {
            const auto& cell = grid.cells[static_cast<std::size_t>(ni)][static_cast<std::size_t>(p)];
            result.detail_cells[static_cast<std::size_t>(ni)].push_back(
                {cell.min_delta, cell.max_delta, cell.count});
        }
    }
    return result;
}

std::vector<std::filesystem::path> run_turbulence_study(const Scenario& s,
                                                        const std::filesystem::path& out_dir,
                                                        int threads) {
    const TurbulenceStudyResult result = turbulence_band_study(s, threads);
    const auto dir = prepare_dir(out_dir);
    std::vector<std::filesystem::path> files;

    files.push_back(dir / (s.name + "_band.csv"));
    {
        CsvFile csv(files.back(), "turbulence_band.v1",
                    {"n_avg", "band_lo", "band_hi", "band_width", "ambiguous_points"});
        for (const auto& b : result.bands) {
            csv.row({csv_int(b.n_avg), csv_num(b.band_lo), csv_num(b.band_hi), csv_num(b.width),
                     csv_int(b.ambiguous_points)});
        }
    }

    files.push_back(dir / (s.name + "_band_detail.csv"));
    {
        CsvFile csv(files.back(), "turbulence_band_detail.v1",
                    {"n_avg", "phi_offset", "min_delta_f", "max_delta_f", "aggregates",
                     "ambiguous"});
        for (std::size_t ni = 0; ni < result.bands.size(); ++ni) {
            for (std::size_t p = 0; p < result.detail_phi.size(); ++p) {
                const auto& cell = result.detail_cells[ni][p];
                const bool ambiguous = cell.count > 0 && cell.min_delta <= 0.0 &&
                                       cell.max_delta >= 0.0;
                csv.row({csv_int(result.bands[ni].n_avg), csv_num(result.detail_phi[p]),
                         csv_num(cell.min_delta), csv_num(cell.max_delta), csv_int(cell.count),
                         csv_int(ambiguous ? 1 : 0)});
            }
        }
    }
    return files;
}

std::vector<std::filesystem::path> run_sensor_study(const Scenario& s,
                                                    const std::filesystem::path& out_dir) {
    const TractionConstants constants = derive_constants(s.body.aero);
    const double phi_w = s.schedule.at(0.0);

    StubAdaptSpec spec;
    spec.initial = s.path;
    spec.phi_w = phi_w;
    spec.adapt = s.adapt;
    spec.samples_per_loop = s.sensor_study.samples_per_loop;
    spec.decisions = s.sensor_study.decisions;

    const std::vector<Decision> clean = run_stub_adaptation(constants, s.shear, spec, nullptr);
    SensorSuite sensors;
    sensors.angles.emplace(s.sensors.angle_bits, s.sensors.angle_noise_std, s.sensors.angle_seed);
    sensors.force.emplace(s.sensors.force_gain_error, s.sensors.force_offset,
                          s.sensors.force_noise_std, s.sensors.force_seed);
    const std::vector<Decision> noisy = run_stub_adaptation(constants, s.shear, spec, &sensors);

    const auto dir = prepare_dir(out_dir);
    std::vector<std::filesystem::path> files;

    files.push_back(dir / (s.name + "_paired.csv"));
    {
        CsvFile csv(files.back(), "sensor_paired.v1",
                    {"decision", "phase_clean", "phi_c_clean", "theta_c_clean", "phase_noisy",
                     "phi_c_noisy", "theta_c_noisy", "identical"});
        for (std::size_t i = 0; i < clean.size() && i < noisy.size(); ++i) {
            const bool same = clean[i].phase == noisy[i].phase &&
                              clean[i].phi_c == noisy[i].phi_c &&
                              clean[i].theta_c == noisy[i].theta_c;
            csv.row({csv_int(static_cast<long>(i)),
                     clean[i].phase == Phase::PhiCorrection ? "phi" : "theta",
                     csv_num(clean[i].phi_c), csv_num(clean[i].theta_c),
                     noisy[i].phase == Phase::PhiCorrection ? "phi" : "theta",
                     csv_num(noisy[i].phi_c), csv_num(noisy[i].theta_c),
                     csv_int(same ? 1 : 0)});
        }
    }

    // Sign fidelity of the measured split across a misalignment grid: one
    // aggregated loop per trial, fresh noise each trial.
    files.push_back(dir / (s.name + "_sign_grid.csv"));
    {
        CsvFile csv(files.back(), "sensor_sign_grid.v1",
                    {"phi_offset", "delta_f_true", "delta_f_noisy_mean", "sign_match_fraction",
                     "trials"});
        const auto& ss = s.sensor_study;
        const double step = (ss.grid_to - ss.grid_from) / (ss.grid_count - 1);
        SensorSuite grid_sensors;
        grid_sensors.angles.emplace(s.sensors.angle_bits, s.sensors.angle_noise_std,
                                    s.sensors.angle_seed + 1);
        grid_sensors.force.emplace(s.sensors.force_gain_error, s.sensors.force_offset,
                                   s.sensors.force_noise_std, s.sensors.force_seed + 1);
        for (int g = 0; g < ss.grid_count; ++g) {
            const double offset = ss.grid_from + step * g;
            PathParams path = s.path;
            path.phi_c = phi_w + offset;
            const auto points = sample_path_midpoint(path, ss.samples_per_loop);
            const double delta_true =
                delta_force(constants, s.shear, points, phi_w, path.phi_c);

            double delta_sum = 0.0;
            int matches = 0;
            for (int trial = 0; trial < ss.trials; ++trial) {
                double sum_left = 0.0, sum_right = 0.0;
                int n_left = 0, n_right = 0;
                for (const auto& pt : points) {
                    const auto [pm, tm] = grid_sensors.angles->measure(pt.phi, pt.theta);
                    (void)tm;
                    const double f = grid_sensors.force->measure(
                        point_force(constants, s.shear, pt.phi, pt.theta, phi_w));
                    if (pm - path.phi_c >= 0.0) {
                        sum_left += f;
                        ++n_left;
                    } else {
                        sum_right += f;
                        ++n_right;
                    }
                }
                const double delta_noisy = (n_left > 0 ? sum_left / n_left : 0.0) -
                                           (n_right > 0 ? sum_right / n_right : 0.0);
                delta_sum += delta_noisy;
                if ((delta_noisy > 0.0) == (delta_true > 0.0) && delta_noisy != 0.0) ++matches;
            }
            csv.row({csv_num(offset), csv_num(delta_true), csv_num(delta_sum / ss.trials),
                     csv_num(static_cast<double>(matches) / ss.trials), csv_int(ss.trials)});
        }
    }
    return files;
}

std::vector<std::filesystem::path> run_scenario(Scenario s, const std::filesystem::path& out_dir,
                                                int threads,
                                                std::optional<std::uint64_t> seed_override) {
    if (seed_override) {
        s.turbulence.seed = *seed_override;
        s.study.base_seed = *seed_override;
        s.sensors.angle_seed = *seed_override + 1;
        s.sensors.force_seed = *seed_override + 2;
    }
    switch (s.kind) {
        case Scenario::Kind::Sweep:
            return run_sweep_scenario(s, out_dir, threads);
        case Scenario::Kind::Adapt:
            return run_adapt_scenario(s, out_dir);
        case Scenario::Kind::TurbulenceStudy:
            return run_turbulence_study(s, out_dir, threads);
        case Scenario::Kind::SensorStudy:
            return run_sensor_study(s, out_dir);
    }
    throw std::logic_error("unhandled scenario kind");
}

}  // namespace kitelab
