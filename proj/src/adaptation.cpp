#include "kitelab/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kitelab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate(const AdaptConfig& c) {
    if (!(c.delta_f_min > 0.0)) {
        throw std::invalid_argument("AdaptConfig: delta_f_min must be positive");
    }
    if (!(c.delta_f_min_frac >= 0.0)) {
        throw std::invalid_argument("AdaptConfig: delta_f_min_frac must be non-negative");
    }
    if (c.n_avg < 1) throw std::invalid_argument("AdaptConfig: n_avg must be >= 1");
    auto check_range = [](const StepRange& r, const char* name) {
        if (!(r.min > 0.0 && r.min <= r.init && r.init <= r.max)) {
            throw std::invalid_argument(std::string("AdaptConfig: ") + name +
                                        " must satisfy 0 < min <= init <= max");
        }
    };
    check_range(c.step_phi, "step_phi");
    check_range(c.step_theta, "step_theta");
    if (!(c.scale_c > 1.0)) throw std::invalid_argument("AdaptConfig: scale_c must be > 1");
    if (!(c.theta_min > 0.0 && c.theta_min < c.theta_max && c.theta_max < kPi / 2.0)) {
        throw std::invalid_argument("AdaptConfig: need 0 < theta_min < theta_max < pi/2");
    }
}

Adapter::Adapter(const AdaptConfig& config, double phi_c0, double theta_c0)
    : cfg_(config),
      phi_c_(phi_c0),
      theta_c_(theta_c0),
      step_phi_(config.step_phi.init),
      step_theta_(config.step_theta.init),
      prev_theta_c_(theta_c0 - config.step_theta.init) {
    validate(cfg_);
    if (!(theta_c0 >= cfg_.theta_min && theta_c0 <= cfg_.theta_max)) {
        throw std::invalid_argument("Adapter: initial theta_c outside the configured bounds");
    }
}

std::optional<Decision> Adapter::accumulate(double t, double phi_meas, double theta_meas,
                                            double f_meas, bool loop_complete) {
    if (has_sample_ && !(t > last_t_)) {
        throw std::invalid_argument("Adapter: sample times must strictly increase (t=" +
                                    std::to_string(t) + " after t=" + std::to_string(last_t_) +
                                    ")");
    }
    last_t_ = t;
    has_sample_ = true;

    loop_sum_f_ += f_meas;
    loop_sum_phi_ += phi_meas;
    loop_sum_theta_ += theta_meas;
    if (phi_meas - phi_c_ >= 0.0) {
        loop_sum_left_ += f_meas;
        ++loop_n_left_;
    } else {
        loop_sum_right_ += f_meas;
        ++loop_n_right_;
    }

    if (!loop_complete) return std::nullopt;

    const int n = loop_n_left_ + loop_n_right_;
    if (n == 0) return std::nullopt;  // spurious marker before any sample

    LoopRecord rec;
    rec.t_end = t;
    rec.n_samples = n;
    rec.n_left = loop_n_left_;
    rec.n_right = loop_n_right_;
    rec.f_bar = loop_sum_f_ / n;
    rec.f_left = loop_n_left_ > 0 ? loop_sum_left_ / loop_n_left_ : 0.0;
    rec.f_right = loop_n_right_ > 0 ? loop_sum_right_ / loop_n_right_ : 0.0;
    rec.delta_f = rec.f_left - rec.f_right;
    rec.center_phi = loop_sum_phi_ / n;
    rec.center_theta = loop_sum_theta_ / n;
    loops_.push_back(rec);
    pending_.push_back(rec);

    loop_sum_f_ = loop_sum_left_ = loop_sum_right_ = 0.0;
    loop_sum_phi_ = loop_sum_theta_ = 0.0;
    loop_n_left_ = loop_n_right_ = 0;

    if (static_cast<int>(pending_.size()) < cfg_.n_avg) return std::nullopt;

    // Aggregate: F over all samples of the window, dF as the mean of the
    // per-loop splits.
    double sum_f = 0.0;
    double sum_delta = 0.0;
    long total = 0;
    for (const auto& lp : pending_) {
        sum_f += lp.f_bar * lp.n_samples;
        sum_delta += lp.delta_f;
        total += lp.n_samples;
    }
    pending_.clear();
    return decide(sum_f / static_cast<double>(total),
                  sum_delta / static_cast<double>(cfg_.n_avg), t);
}

Decision Adapter::decide(double f_bar, double delta_f, double t) {
    Decision d;
    d.index = static_cast<int>(decisions_.size());
    d.t = t;
    d.delta_f = delta_f;
    d.f_bar = f_bar;

    const double threshold = std::max(cfg_.delta_f_min, cfg_.delta_f_min_frac * f_bar);
    const double theta_before = theta_c_;

    if (std::abs(delta_f) > threshold) {
        // Azimuth correction: grow the step while the split keeps its sign,
        // shrink after a sign change, and move toward the stronger half.
        d.phase = Phase::PhiCorrection;
        const bool same_sign = delta_f * prev_delta_f_ > 0.0;
        step_phi_ = same_sign ? std::min(step_phi_ * cfg_.scale_c, cfg_.step_phi.max)
                              : std::max(step_phi_ / cfg_.scale_c, cfg_.step_phi.min);
        phi_c_ += delta_f > 0.0 ? step_phi_ : -step_phi_;
    } else {
        // Elevation hill climb on F: keep direction while F improves,
        // reverse and shrink the step otherwise.
        d.phase = Phase::ThetaClimb;
        const bool improved = f_bar > prev_f_bar_;
        step_theta_ = improved ? std::min(step_theta_ * cfg_.scale_c, cfg_.step_theta.max)
                               : std::max(step_theta_ / cfg_.scale_c, cfg_.step_theta.min);
        const bool was_descending = theta_c_ < prev_theta_c_;
        const bool move_down = improved == was_descending;
        theta_c_ += move_down ? -step_theta_ : step_theta_;
        theta_c_ = std::clamp(theta_c_, cfg_.theta_min, cfg_.theta_max);
    }

    prev_delta_f_ = delta_f;
    prev_f_bar_ = f_bar;
    prev_theta_c_ = theta_before;

    d.step_phi = step_phi_;
    d.step_theta = step_theta_;
    d.phi_c = phi_c_;
    d.theta_c = theta_c_;
    decisions_.push_back(d);
    return d;
}

AdaptTrace run_closed_loop(const WindEnvironment& env, const BodyParams& body,
                           const ControllerParams& ctrl, SensorSuite& sensors, Adapter& adapter,
                           const PathParams& initial, double duration, double dt,
                           double controller_period) {
    const auto n_steps = static_cast<long>(std::llround(duration / dt));
    if (!(duration > 0.0) || std::abs(duration - n_steps * dt) > 1e-9 * std::max(1.0, duration)) {
        throw std::invalid_argument(
            "run_closed_loop: duration must be a positive integer multiple of dt");
    }

    FlightSim sim(env, body, ctrl, initial, dt, controller_period);
    AdaptTrace trace;
    double tension_sum = 0.0;

    for (long i = 0; i < n_steps; ++i) {
        const SimSample sample = sim.advance();
        tension_sum += sample.tension;
        if (sample.slack) ++trace.slack_samples;
        if (!sample.controller_sample) continue;

        double phi_m = sample.state.phi;
        double theta_m = sample.state.theta;
        if (sensors.angles) {
            const auto [pm, tm] = sensors.angles->measure(phi_m, theta_m);
            phi_m = pm;
            theta_m = tm;
        }
        double f_m = sample.tension;
        if (sensors.force) f_m = sensors.force->measure(f_m);

        const auto decision = adapter.accumulate(sample.t, phi_m, theta_m, f_m,
                                                 sample.loop_complete);
        if (decision) {
            PathParams commanded = sim.commanded();
            commanded.phi_c = decision->phi_c;
            commanded.theta_c = decision->theta_c;
            sim.set_commanded(commanded);
        }
    }

    trace.decisions = adapter.decisions();
    trace.loops = adapter.loops();
    trace.final_phi_c = adapter.phi_c();
    trace.final_theta_c = adapter.theta_c();
    trace.mean_tension = n_steps > 0 ? tension_sum / static_cast<double>(n_steps) : 0.0;
    trace.n_steps = n_steps;
    return trace;
}

}  // namespace kitelab
