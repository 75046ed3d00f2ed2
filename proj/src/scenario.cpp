#include "kitelab/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace kitelab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

// Raw parse result plus typed getters that remember which keys were read,
// so leftovers can be reported as unknown keys with their line numbers.
class Reader {
  public:
    explicit Reader(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        std::string section;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = raw;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']' || line.size() < 3) {
                    throw ConfigError("line " + std::to_string(line_no) +
                                      ": malformed section header '" + trim(raw) + "'");
                }
                section = trim(line.substr(1, line.size() - 2));
                sections_seen_.insert({section, line_no});
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line + "'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line + "'");
            }
            auto [it, inserted] = entries_[section].try_emplace(key, Entry{value, line_no});
            if (!inserted) {
                throw ConfigError("duplicate key '" + qualify(section, key) + "' (lines " +
                                  std::to_string(it->second.line) + " and " +
                                  std::to_string(line_no) + ")");
            }
        }
    }

    bool has_section(const std::string& section) const {
        return sections_seen_.count(section) > 0 || entries_.count(section) > 0;
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto sec = entries_.find(section);
        return sec != entries_.end() && sec->second.count(key) > 0;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) {
        const Entry* e = fetch(section, key);
        return e ? e->value : fallback;
    }

    double get_double(const std::string& section, const std::string& key, double fallback) {
        const Entry* e = fetch(section, key);
        if (!e) return fallback;
        return parse_double(e->value, section, key, e->line);
    }

    long get_int(const std::string& section, const std::string& key, long fallback) {
        const Entry* e = fetch(section, key);
        if (!e) return fallback;
        try {
            std::size_t used = 0;
            const long v = std::stol(e->value, &used);
            if (used != e->value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(qualify(section, key) + ": expected an integer, got '" + e->value +
                              "' (line " + std::to_string(e->line) + ")");
        }
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) {
        const Entry* e = fetch(section, key);
        if (!e) return fallback;
        if (e->value == "true" || e->value == "1") return true;
        if (e->value == "false" || e->value == "0") return false;
        throw ConfigError(qualify(section, key) + ": expected true/false, got '" + e->value +
                          "' (line " + std::to_string(e->line) + ")");
    }

    std::uint64_t get_seed(const std::string& section, const std::string& key,
                           std::uint64_t fallback) {
        const Entry* e = fetch(section, key);
        if (!e) return fallback;
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(e->value, &used);
            if (used != e->value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(qualify(section, key) + ": expected a non-negative integer, got '" +
                              e->value + "' (line " + std::to_string(e->line) + ")");
        }
    }

    // "t:value, t:value, ..." pairs for the wind-direction schedule.
    std::vector<std::pair<double, double>> get_schedule(const std::string& section,
                                                        const std::string& key) {
        const Entry* e = fetch(section, key);
        if (!e) return {};
        std::vector<std::pair<double, double>> points;
        for (const std::string& item : split(e->value, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) {
                throw ConfigError(qualify(section, key) + ": expected 't:value' pairs (line " +
                                  std::to_string(e->line) + ")");
            }
            points.emplace_back(parse_double(trim(item.substr(0, colon)), section, key, e->line),
                                parse_double(trim(item.substr(colon + 1)), section, key, e->line));
        }
        return points;
    }

    std::vector<int> get_int_list(const std::string& section, const std::string& key,
                                  std::vector<int> fallback) {
        const Entry* e = fetch(section, key);
        if (!e) return fallback;
        std::vector<int> values;
        for (const std::string& item : split(e->value, ',')) {
            values.push_back(static_cast<int>(
                std::llround(parse_double(trim(item), section, key, e->line))));
        }
        return values;
    }

    int line_of(const std::string& section, const std::string& key) const {
        const auto sec = entries_.find(section);
        if (sec == entries_.end()) return 0;
        const auto it = sec->second.find(key);
        return it == sec->second.end() ? 0 : it->second.line;
    }

    // Every key must have been consumed by a getter.
    void finish() const {
        for (const auto& [section, entries] : entries_) {
            if (!known_sections_.count(section)) {
                const auto& first = entries.begin()->second;
                throw ConfigError("unknown section '[" + section + "]' (line " +
                                  std::to_string(first.line) + ")");
            }
            for (const auto& [key, entry] : entries) {
                if (!entry.used) {
                    throw ConfigError("unknown key '" + qualify(section, key) + "' (line " +
                                      std::to_string(entry.line) + ")");
                }
            }
        }
        for (const auto& [section, line] : sections_seen_) {
            if (!known_sections_.count(section)) {
                throw ConfigError("unknown section '[" + section + "]' (line " +
                                  std::to_string(line) + ")");
            }
        }
    }

    void mark_known(const std::string& section) { known_sections_.insert(section); }

    static std::string qualify(const std::string& section, const std::string& key) {
        return section.empty() ? key : section + "." + key;
    }

  private:
    const Entry* fetch(const std::string& section, const std::string& key) {
        auto sec = entries_.find(section);
        if (sec == entries_.end()) return nullptr;
        auto it = sec->second.find(key);
        if (it == sec->second.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    static std::vector<std::string> split(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(s);
        while (std::getline(in, item, sep)) out.push_back(trim(item));
        return out;
    }

    static double parse_double(const std::string& text, const std::string& section,
                               const std::string& key, int line) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(qualify(section, key) + ": expected a number, got '" + text +
                              "' (line " + std::to_string(line) + ")");
        }
    }

    std::map<std::string, std::map<std::string, Entry>> entries_;
    std::map<std::string, int> sections_seen_;
    std::set<std::string> known_sections_;
};

// Range guard that reports the key and line.
void require(bool ok, const Reader& r, const std::string& section, const std::string& key,
             const std::string& what) {
    if (ok) return;
    const int line = r.line_of(section, key);
    std::string msg = Reader::qualify(section, key) + ": " + what;
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    throw ConfigError(msg);
}

Scenario::Kind parse_kind(const std::string& text, const Reader& r) {
    if (text == "sweep") return Scenario::Kind::Sweep;
    if (text == "adapt") return Scenario::Kind::Adapt;
    if (text == "turbulence_study") return Scenario::Kind::TurbulenceStudy;
    if (text == "sensor_study") return Scenario::Kind::SensorStudy;
    require(false, r, "run", "kind",
            "expected one of sweep|adapt|turbulence_study|sensor_study, got '" + text + "'");
    return Scenario::Kind::Sweep;  // unreachable
}

SweepAxis read_axis(Reader& r, const std::string& prefix) {
    SweepAxis axis;
    axis.param = r.get_string("sweep", prefix, "phi_c");
    try {
        PathParams probe;
        set_path_param(probe, axis.param, probe.phi_c);
    } catch (const std::invalid_argument&) {
        require(false, r, "sweep", prefix, "unknown path parameter '" + axis.param + "'");
    }
    axis.from = r.get_double("sweep", prefix + "_from", 0.0);
    axis.to = r.get_double("sweep", prefix + "_to", 0.0);
    axis.count = static_cast<int>(r.get_int("sweep", prefix + "_count", 1));
    require(axis.count >= 1, r, "sweep", prefix + "_count", "must be >= 1");
    return axis;
}

}  // namespace

double Scenario::resolved_turb_ref_height() const {
    if (turb_ref_height > 0.0) return turb_ref_height;
    return body.aero.r * std::sin(path.theta_c);
}

Scenario parse_scenario(const std::string& text) {
    Reader r(text);
    Scenario s;

    for (const char* sec : {"run", "shear", "wind", "turbulence", "aero", "body", "path",
                            "controller", "adaptation", "sensors", "sweep", "study",
                            "sensor_study"}) {
        r.mark_known(sec);
    }

    // --- run block -------------------------------------------------------
    const std::string kind_text = r.get_string("run", "kind", "");
    require(!kind_text.empty(), r, "run", "kind", "is required");
    s.kind = parse_kind(kind_text, r);
    s.name = r.get_string("run", "name", kind_text);
    s.duration = r.get_double("run", "duration", s.duration);
    s.dt = r.get_double("run", "dt", s.dt);
    s.controller_period = r.get_double("run", "sample_period", s.controller_period);
    require(s.duration > 0.0, r, "run", "duration", "must be positive");
    require(s.dt > 0.0 && s.dt <= 0.05, r, "run", "dt", "must lie in (0, 0.05]");
    const double ratio = s.controller_period / s.dt;
    require(std::abs(ratio - std::llround(ratio)) < 1e-9 && ratio >= 1.0 - 1e-12, r, "run",
            "sample_period", "must be a positive integer multiple of dt");

    // --- wind field ------------------------------------------------------
    s.shear.w0 = r.get_double("shear", "w0", s.shear.w0);
    s.shear.z0 = r.get_double("shear", "z0", s.shear.z0);
    s.shear.alpha = r.get_double("shear", "alpha", s.shear.alpha);
    require(s.shear.w0 >= 0.0, r, "shear", "w0", "must be non-negative");
    require(s.shear.z0 > 0.0, r, "shear", "z0", "must be positive");
    require(s.shear.alpha > 0.0 && s.shear.alpha < 1.0, r, "shear", "alpha",
            "must lie in (0, 1), got " + std::to_string(s.shear.alpha));

    const bool has_phi_w = r.has("wind", "phi_w");
    const bool has_schedule = r.has("wind", "schedule");
    require(!(has_phi_w && has_schedule), r, "wind", "schedule",
            "give either phi_w or schedule, not both");
    if (has_schedule) {
        try {
            s.schedule = DirectionSchedule(r.get_schedule("wind", "schedule"));
        } catch (const std::invalid_argument& e) {
            require(false, r, "wind", "schedule", e.what());
        }
    } else {
        s.schedule = DirectionSchedule::constant(r.get_double("wind", "phi_w", 0.0));
    }

    s.turbulence.enabled = r.get_bool("turbulence", "enabled", s.turbulence.enabled);
    s.turbulence.intensity = r.get_double("turbulence", "intensity", s.turbulence.intensity);
    s.turbulence.length_scale =
        r.get_double("turbulence", "length_scale", s.turbulence.length_scale);
    s.turbulence.seed = r.get_seed("turbulence", "seed", s.turbulence.seed);
    s.turb_ref_height = r.get_double("turbulence", "ref_height", 0.0);
    require(s.turbulence.intensity >= 0.0 && s.turbulence.intensity <= 0.5, r, "turbulence",
            "intensity", "must lie in [0, 0.5]");
    require(s.turbulence.length_scale > 0.0, r, "turbulence", "length_scale",
            "must be positive");
    require(s.turb_ref_height >= 0.0, r, "turbulence", "ref_height", "must be non-negative");

    // --- wing and tether -------------------------------------------------
    AeroParams& a = s.body.aero;
    a.rho = r.get_double("aero", "rho", a.rho);
    a.area = r.get_double("aero", "area", a.area);
    a.c_l = r.get_double("aero", "c_l", a.c_l);
    a.c_d = r.get_double("aero", "c_d", a.c_d);
    a.c_d_line = r.get_double("aero", "c_d_line", a.c_d_line);
    a.n_lines = static_cast<int>(r.get_int("aero", "n_lines", a.n_lines));
    a.d_line = r.get_double("aero", "d_line", a.d_line);
    a.r = r.get_double("aero", "tether_length", a.r);

    s.body.mass = r.get_double("body", "mass", s.body.mass);
    s.body.tether_lin_density =
        r.get_double("body", "tether_lin_density", s.body.tether_lin_density);
    s.body.gravity = r.get_double("body", "gravity", s.body.gravity);
    require(s.body.mass > 0.0, r, "body", "mass", "must be positive");
    require(s.body.tether_lin_density >= 0.0, r, "body", "tether_lin_density",
            "must be non-negative");
    require(s.body.gravity > 0.0, r, "body", "gravity", "must be positive");

    // --- commanded path and guidance --------------------------------------
    s.path.phi_c = r.get_double("path", "phi_c", s.path.phi_c);
    s.path.theta_c = r.get_double("path", "theta_c", s.path.theta_c);
    s.path.phi_span = r.get_double("path", "phi_span", s.path.phi_span);
    s.path.theta_span = r.get_double("path", "theta_span", s.path.theta_span);
    s.path.beta = r.get_double("path", "beta", s.path.beta);

    s.controller.gain = r.get_double("controller", "gain", s.controller.gain);
    s.controller.psi_max = r.get_double("controller", "psi_max", s.controller.psi_max);
    s.controller.switch_threshold =
        r.get_double("controller", "switch_threshold", s.controller.switch_threshold);
    s.controller.target_offset =
        r.get_double("controller", "target_offset", s.controller.target_offset);
    s.controller.theta_trim_gain =
        r.get_double("controller", "theta_trim_gain", s.controller.theta_trim_gain);

    // --- adaptation --------------------------------------------------------
    AdaptConfig& ad = s.adapt;
    ad.delta_f_min = r.get_double("adaptation", "delta_f_min", ad.delta_f_min);
    ad.delta_f_min_frac = r.get_double("adaptation", "delta_f_min_frac", ad.delta_f_min_frac);
    ad.n_avg = static_cast<int>(r.get_int("adaptation", "n_avg", ad.n_avg));
    ad.step_phi.min = r.get_double("adaptation", "step_phi_min", ad.step_phi.min);
    ad.step_phi.init = r.get_double("adaptation", "step_phi_init", ad.step_phi.init);
    ad.step_phi.max = r.get_double("adaptation", "step_phi_max", ad.step_phi.max);
    ad.step_theta.min = r.get_double("adaptation", "step_theta_min", ad.step_theta.min);
    ad.step_theta.init = r.get_double("adaptation", "step_theta_init", ad.step_theta.init);
    ad.step_theta.max = r.get_double("adaptation", "step_theta_max", ad.step_theta.max);
    ad.scale_c = r.get_double("adaptation", "scale_c", ad.scale_c);
    ad.theta_min = r.get_double("adaptation", "theta_c_min", ad.theta_min);
    ad.theta_max = r.get_double("adaptation", "theta_c_max", ad.theta_max);

    // --- sensors -----------------------------------------------------------
    auto& sn = s.sensors;
    sn.enabled = r.get_bool("sensors", "enabled", sn.enabled);
    sn.angle_bits = static_cast<int>(r.get_int("sensors", "angle_bits", sn.angle_bits));
    sn.angle_noise_std = r.get_double("sensors", "angle_noise_std", sn.angle_noise_std);
    sn.angle_seed = r.get_seed("sensors", "angle_seed", sn.angle_seed);
    sn.force_gain_error = r.get_double("sensors", "force_gain_error", sn.force_gain_error);
    sn.force_offset = r.get_double("sensors", "force_offset", sn.force_offset);
    sn.force_noise_std = r.get_double("sensors", "force_noise_std", sn.force_noise_std);
    sn.force_seed = r.get_seed("sensors", "force_seed", sn.force_seed);
    require(sn.angle_bits >= 8 && sn.angle_bits <= 24, r, "sensors", "angle_bits",
            "must lie in [8, 24]");
    require(sn.angle_noise_std >= 0.0, r, "sensors", "angle_noise_std", "must be non-negative");
    require(std::abs(sn.force_gain_error) < 1.0, r, "sensors", "force_gain_error",
            "must satisfy |gain_error| < 1");
    require(sn.force_noise_std >= 0.0, r, "sensors", "force_noise_std", "must be non-negative");

    // --- experiment blocks --------------------------------------------------
    switch (s.kind) {
        case Scenario::Kind::Sweep: {
            require(r.has_section("sweep"), r, "sweep", "param",
                    "kind=sweep needs a [sweep] section");
            s.sweep.axis1 = read_axis(r, "param");
            if (r.has("sweep", "param2")) {
                s.sweep.axis2 = read_axis(r, "param2");
            }
            s.sweep.samples = static_cast<int>(r.get_int("sweep", "samples", s.sweep.samples));
            require(s.sweep.samples >= 4, r, "sweep", "samples", "must be >= 4");
            s.sweep.pointmass = r.get_bool("sweep", "pointmass", s.sweep.pointmass);
            s.sweep.warmup_loops =
                static_cast<int>(r.get_int("sweep", "warmup_loops", s.sweep.warmup_loops));
            s.sweep.measure_loops =
                static_cast<int>(r.get_int("sweep", "measure_loops", s.sweep.measure_loops));
            require(s.sweep.warmup_loops >= 0, r, "sweep", "warmup_loops", "must be >= 0");
            require(s.sweep.measure_loops >= 1, r, "sweep", "measure_loops", "must be >= 1");
            break;
        }
        case Scenario::Kind::Adapt:
            require(r.has_section("adaptation"), r, "adaptation", "n_avg",
                    "kind=adapt needs an [adaptation] section");
            break;
        case Scenario::Kind::TurbulenceStudy: {
            require(r.has_section("study"), r, "study", "seeds",
                    "kind=turbulence_study needs a [study] section");
            s.study.seeds = static_cast<int>(r.get_int("study", "seeds", s.study.seeds));
            s.study.base_seed = r.get_seed("study", "base_seed", s.study.base_seed);
            s.study.n_avg_list = r.get_int_list("study", "n_avg_list", s.study.n_avg_list);
            s.study.phi_from = r.get_double("study", "phi_from", s.study.phi_from);
            s.study.phi_to = r.get_double("study", "phi_to", s.study.phi_to);
            s.study.phi_count = static_cast<int>(r.get_int("study", "phi_count",
                                                           s.study.phi_count));
            s.study.warmup_loops =
                static_cast<int>(r.get_int("study", "warmup_loops", s.study.warmup_loops));
            require(s.study.seeds >= 1, r, "study", "seeds", "must be >= 1");
            require(!s.study.n_avg_list.empty(), r, "study", "n_avg_list",
                    "must list at least one aggregation length");
            for (int n : s.study.n_avg_list) {
                require(n >= 1, r, "study", "n_avg_list", "entries must be >= 1");
            }
            require(s.study.phi_count >= 2, r, "study", "phi_count", "must be >= 2");
            require(s.study.phi_to > s.study.phi_from, r, "study", "phi_to",
                    "must exceed phi_from");
            require(s.study.warmup_loops >= 0, r, "study", "warmup_loops", "must be >= 0");
            break;
        }
        case Scenario::Kind::SensorStudy: {
            require(r.has_section("sensor_study"), r, "sensor_study", "decisions",
                    "kind=sensor_study needs a [sensor_study] section");
            auto& ss = s.sensor_study;
            ss.decisions = static_cast<int>(r.get_int("sensor_study", "decisions", ss.decisions));
            ss.samples_per_loop = static_cast<int>(
                r.get_int("sensor_study", "samples_per_loop", ss.samples_per_loop));
            ss.trials = static_cast<int>(r.get_int("sensor_study", "trials", ss.trials));
            ss.grid_from = r.get_double("sensor_study", "grid_from", ss.grid_from);
            ss.grid_to = r.get_double("sensor_study", "grid_to", ss.grid_to);
            ss.grid_count = static_cast<int>(
                r.get_int("sensor_study", "grid_count", ss.grid_count));
            require(ss.decisions >= 1, r, "sensor_study", "decisions", "must be >= 1");
            require(ss.samples_per_loop >= 4, r, "sensor_study", "samples_per_loop",
                    "must be >= 4");
            require(ss.trials >= 1, r, "sensor_study", "trials", "must be >= 1");
            require(ss.grid_count >= 2, r, "sensor_study", "grid_count", "must be >= 2");
            break;
        }
    }

    r.finish();

    // Cross-checks through the library validators, so a scenario that
    // parses is guaranteed to construct.
    try {
        validate(s.body.aero);
        validate(s.path);
        validate(s.controller, s.path.phi_span);
        validate(s.adapt);
        validate(s.turbulence);
        if (s.path.theta_c < s.adapt.theta_min || s.path.theta_c > s.adapt.theta_max) {
            throw std::invalid_argument(
                "path.theta_c lies outside [adaptation.theta_c_min, theta_c_max]");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace kitelab
