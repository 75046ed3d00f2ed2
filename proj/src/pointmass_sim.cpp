#include "kitelab/pointmass_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kitelab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kWindowMargin = 0.01;      // rad from the chart poles
constexpr double kMinApparentWind = 1e-9;   // m/s
constexpr double kMinChartSpeed = 0.5;      // m/s below which heading is undefined
constexpr double kTurnExit = 0.35;          // rad of course error that ends a turn
constexpr double kTrimLimit = 0.15;         // rad cap on elevation trim

double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}
}  // namespace

LocalFrame local_frame(double phi, double theta) {
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return {{ct * cp, ct * sp, st}, {-st * cp, -st * sp, ct}, {-sp, cp, 0.0}};
}

Vec3 wing_velocity(const WingState& s) {
    const LocalFrame f = local_frame(s.phi, s.theta);
    return s.r * s.theta_dot * f.e_theta + s.r * std::cos(s.theta) * s.phi_dot * f.e_phi;
}

Vec3 apparent_wind(const WingState& s, const WindSample& wind) {
    return wind.vector - wing_velocity(s);
}

Vec3 aero_force(const WingState& s, const WindSample& wind, double psi, const AeroParams& aero) {
    const Vec3 wa = apparent_wind(s, wind);
    const double speed = norm(wa);
    if (speed < kMinApparentWind) {
        throw AeroError("stall: apparent wind speed is zero");
    }
    const Vec3 w_hat = wa / speed;

    const LocalFrame f = local_frame(s.phi, s.theta);
    const Vec3 radial_perp = f.e_r - dot(f.e_r, w_hat) * w_hat;
    const double perp_norm = norm(radial_perp);
    if (perp_norm < kMinApparentWind) {
        throw AeroError("degenerate aero geometry: apparent wind aligned with the tether");
    }
    const Vec3 lift_ref = radial_perp / perp_norm;
    const Vec3 lift_dir = std::cos(psi) * lift_ref + std::sin(psi) * cross(w_hat, lift_ref);

    const double a_line = aero.n_lines * aero.r * aero.d_line;
    const double c_d_eq = aero.c_d + aero.c_d_line * a_line / (4.0 * aero.area);
    const double q = 0.5 * aero.rho * aero.area * speed * speed;
    return q * c_d_eq * w_hat + q * aero.c_l * lift_dir;
}

TensionResult tension(const WingState& s, const WindSample& wind, double psi,
                      const BodyParams& body) {
    const LocalFrame f = local_frame(s.phi, s.theta);
    double radial_aero = 0.0;
    if (norm(apparent_wind(s, wind)) >= kMinApparentWind) {
        radial_aero = dot(aero_force(s, wind, psi, body.aero), f.e_r);
    }
    const double m = body.effective_mass();
    const double ct = std::cos(s.theta);
    const double centripetal =
        m * s.r * (s.theta_dot * s.theta_dot + ct * ct * s.phi_dot * s.phi_dot);
    const double raw = radial_aero - m * body.gravity * std::sin(s.theta) + centripetal;
    return {std::max(0.0, raw), raw < 0.0};
}

AngularAccel sphere_accel(const WingState& s, double a_theta, double a_phi) {
    const double ct = std::cos(s.theta);
    const double st = std::sin(s.theta);
    if (std::abs(ct) < 1e-9) {
        throw SimulationCrash(0.0, "sphere kinematics degenerate at the zenith");
    }
    AngularAccel out;
    out.theta_ddot = a_theta / s.r - st * ct * s.phi_dot * s.phi_dot;
    out.phi_ddot = a_phi / (s.r * ct) + 2.0 * (st / ct) * s.theta_dot * s.phi_dot;
    return out;
}

WingState rk4_step(const WingState& state, double t, double dt, const AccelModel& accel) {
    struct Deriv {
        double phi, theta, phi_dot, theta_dot;
    };
    auto eval = [&](const WingState& s, double ts) -> Deriv {
        const AngularAccel a = accel(s, ts);
        return {s.phi_dot, s.theta_dot, a.phi_ddot, a.theta_ddot};
    };
    auto shifted = [&](const Deriv& d, double h) -> WingState {
        WingState s = state;
        s.phi += h * d.phi;
        s.theta += h * d.theta;
        s.phi_dot += h * d.phi_dot;
        s.theta_dot += h * d.theta_dot;
        return s;
    };

    const Deriv k1 = eval(state, t);
    const Deriv k2 = eval(shifted(k1, dt / 2.0), t + dt / 2.0);
    const Deriv k3 = eval(shifted(k2, dt / 2.0), t + dt / 2.0);
    const Deriv k4 = eval(shifted(k3, dt), t + dt);

    WingState out = state;
    out.phi += dt / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    out.theta += dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
    out.phi_dot += dt / 6.0 * (k1.phi_dot + 2.0 * k2.phi_dot + 2.0 * k3.phi_dot + k4.phi_dot);
    out.theta_dot +=
        dt / 6.0 * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot);
    return out;
}

WingState step(const WingState& state, double psi, const WindEnvironment& env,
               const BodyParams& body, double t, double dt) {
    if (!(dt > 0.0 && dt <= 0.05)) {
        throw std::invalid_argument("step: dt must lie in (0, 0.05], got " + std::to_string(dt));
    }
    const double m = body.effective_mass();
    AccelModel accel = [&](const WingState& s, double ts) {
        // Intermediate stages may poke just past the window while the
        // committed state is still guarded, so clamp the wind query.
        const double theta_q = std::clamp(s.theta, 1e-6, kPi / 2.0 - 1e-6);
        const WindSample wind = env.at(ts, s.phi, theta_q, s.r);
        const LocalFrame f = local_frame(s.phi, s.theta);
        const Vec3 fa = aero_force(s, wind, psi, body.aero);
        const double a_theta = dot(fa, f.e_theta) / m - body.gravity * std::cos(s.theta);
        const double a_phi = dot(fa, f.e_phi) / m;
        return sphere_accel(s, a_theta, a_phi);
    };

    WingState next;
    try {
        next = rk4_step(state, t, dt, accel);
    } catch (const AeroError& e) {
        throw SimulationCrash(t, e.what());
    }
    if (!(next.theta > kWindowMargin && next.theta < kPi / 2.0 - kWindowMargin)) {
        throw SimulationCrash(t + dt, "wing left the flyable window (theta=" +
                                          std::to_string(next.theta) + ")");
    }
    return next;
}

void validate(const ControllerParams& p, double phi_span) {
    if (!(p.gain > 0.0)) throw std::invalid_argument("ControllerParams: gain must be positive");
    if (!(p.psi_max > 0.0 && p.psi_max < kPi / 2.0)) {
        throw std::invalid_argument("ControllerParams: psi_max must lie in (0, pi/2)");
    }
    if (p.switch_threshold != 0.0 && !(p.switch_threshold > 0.0 && p.switch_threshold < phi_span)) {
        throw std::invalid_argument(
            "ControllerParams: switch_threshold must lie in (0, phi_span)");
    }
    if (p.target_offset != 0.0 && !(p.target_offset > 0.0)) {
        throw std::invalid_argument("ControllerParams: target_offset must be positive");
    }
    if (!(p.theta_trim_gain >= 0.0 && p.theta_trim_gain <= 1.0)) {
        throw std::invalid_argument("ControllerParams: theta_trim_gain must lie in [0, 1]");
    }
}

Controller::Controller(const ControllerParams& params, const PathParams& commanded)
    : params_(params) {
    validate(commanded);
    validate(params, commanded.phi_span);
    set_commanded(commanded);
}

void Controller::set_commanded(const PathParams& commanded) {
    validate(commanded);
    commanded_ = commanded;
    // The auto threshold sits close to the full span: switching late makes
    // the flown eight slightly overshoot the commanded width (still within
    // the +-30% extent contract), which keeps the measured left-right force
    // split strong enough to steer the azimuth search all the way into
    // alignment instead of stalling at the decision threshold.
    switch_threshold_ = params_.switch_threshold > 0.0 ? params_.switch_threshold
                                                       : 0.95 * commanded.phi_span;
    target_offset_ =
        params_.target_offset > 0.0 ? params_.target_offset : 1.15 * commanded.phi_span;
}

Controller::Output Controller::update(const WingState& s) {
    Output out;

    // Path-frame coordinates: chart offsets rotated by -beta.
    const double cb = std::cos(commanded_.beta);
    const double sb = std::sin(commanded_.beta);
    const double dphi = s.phi - commanded_.phi_c;
    const double dtheta = s.theta - commanded_.theta_c;
    const double u = cb * dphi + sb * dtheta;
    const double w = -sb * dphi + cb * dtheta;

    // Chart velocity in the same frame.
    const double vphi = std::cos(s.theta) * s.phi_dot;
    const double vtheta = s.theta_dot;
    const double vu = cb * vphi + sb * vtheta;
    const double vw = -sb * vphi + cb * vtheta;
    const double chart_speed = s.r * std::hypot(vu, vw);

    sum_phi_ += s.phi;
    sum_theta_ += s.theta;
    ++loop_samples_;

    if (active_target_ == 0) {
        if (chart_speed < kMinChartSpeed) return out;  // not moving yet: fly straight
        active_target_ = vu >= 0.0 ? +1 : -1;
    }

    // Target switching at the lateral threshold; every second switch closes
    // a figure-eight and updates the elevation trim from the measured center.
    if (active_target_ == +1 && u >= switch_threshold_) {
        active_target_ = -1;
        in_turn_ = true;
        out.switched = true;
    } else if (active_target_ == -1 && u <= -switch_threshold_) {
        active_target_ = +1;
        in_turn_ = true;
        out.switched = true;
    }
    if (out.switched && ++switch_count_ % 2 == 0) {
        out.loop_complete = true;
        LoopCenter center{sum_phi_ / loop_samples_, sum_theta_ / loop_samples_, loop_samples_};
        last_center_ = center;
        sum_phi_ = sum_theta_ = 0.0;
        loop_samples_ = 0;
        trim_ += params_.theta_trim_gain * (commanded_.theta_c - center.theta);
        trim_ = std::clamp(trim_, -kTrimLimit, kTrimLimit);
    }

    if (chart_speed < kMinChartSpeed) return out;

    const double course = std::atan2(vw, vu);
    const double target_u = active_target_ * target_offset_;
    const double bearing = std::atan2(trim_ - w, target_u - u);
    double err = wrap_pi(bearing - course);

    // Force the turn direction after a switch so lobes are flown upward:
    // counter-clockwise when turning at the +u edge (heading to -1),
    // clockwise at the -u edge.  Plain shortest-angle pursuit would dive.
    if (in_turn_) {
        if (std::abs(err) <= kTurnExit) {
            in_turn_ = false;
        } else if (active_target_ == -1 && err < 0.0) {
            err += 2.0 * kPi;
        } else if (active_target_ == +1 && err > 0.0) {
            err -= 2.0 * kPi;
        }
    }

    out.psi = std::clamp(params_.gain * err, -params_.psi_max, params_.psi_max);
    return out;
}

FlightSim::FlightSim(const WindEnvironment& env, const BodyParams& body,
                     const ControllerParams& ctrl, const PathParams& commanded, double dt,
                     double controller_period, std::optional<WingState> initial)
    : env_(env), body_(body), controller_(ctrl, commanded), dt_(dt) {
    if (!(dt > 0.0 && dt <= 0.05)) {
        throw std::invalid_argument("FlightSim: dt must lie in (0, 0.05]");
    }
    const double ratio = controller_period / dt;
    steps_per_ctrl_ = static_cast<int>(std::llround(ratio));
    if (steps_per_ctrl_ < 1 || std::abs(ratio - steps_per_ctrl_) > 1e-9) {
        throw std::invalid_argument(
            "FlightSim: controller_period must be a positive integer multiple of dt");
    }
    state_ = initial ? *initial : initial_state(commanded, body, env.shear());
}

SimSample FlightSim::advance() {
    SimSample sample;
    sample.t = t_;
    if (step_index_ % steps_per_ctrl_ == 0) {
        const Controller::Output ctrl = controller_.update(state_);
        psi_ = ctrl.psi;
        sample.controller_sample = true;
        sample.loop_complete = ctrl.loop_complete;
    }
    sample.state = state_;
    sample.psi = psi_;
    const WindSample wind = env_.at(t_, state_.phi, state_.theta, state_.r);
    const TensionResult ten = tension(state_, wind, psi_, body_);
    sample.tension = ten.force;
    sample.slack = ten.slack;

    state_ = step(state_, psi_, env_, body_, t_, dt_);
    ++step_index_;
    t_ = static_cast<double>(step_index_) * dt_;
    return sample;
}

void FlightSim::set_commanded(const PathParams& commanded) {
    controller_.set_commanded(commanded);
}

WingState initial_state(const PathParams& commanded, const BodyParams& body,
                        const ShearParams& shear) {
    validate(commanded);
    const TractionConstants c = derive_constants(body.aero);
    const double wind = shear_speed(shear, body.aero.r * std::sin(commanded.theta_c));
    const double speed = std::max(8.0, 0.7 * c.e_eq * wind);

    WingState s;
    s.phi = commanded.phi_c;
    s.theta = commanded.theta_c;
    s.r = body.aero.r;
    s.phi_dot = speed * std::cos(commanded.beta) / (s.r * std::cos(s.theta));
    s.theta_dot = speed * std::sin(commanded.beta) / s.r;
    return s;
}

SimOutput simulate(const WindEnvironment& env, const BodyParams& body,
                   const ControllerParams& ctrl, const PathParams& commanded, double duration,
                   double dt, double controller_period, std::optional<WingState> initial) {
    const auto n_steps = static_cast<long>(std::llround(duration / dt));
    if (!(duration > 0.0) || std::abs(duration - n_steps * dt) > 1e-9 * std::max(1.0, duration)) {
        throw std::invalid_argument("simulate: duration must be a positive integer multiple of dt");
    }
    FlightSim sim(env, body, ctrl, commanded, dt, controller_period, initial);
    SimOutput out;
    out.samples.reserve(static_cast<std::size_t>(n_steps));
    for (long i = 0; i < n_steps; ++i) {
        SimSample sample = sim.advance();
        if (sample.slack) ++out.slack_samples;
        if (sample.loop_complete) out.loop_marks.push_back(out.samples.size());
        out.samples.push_back(sample);
    }
    return out;
}

}  // namespace kitelab
