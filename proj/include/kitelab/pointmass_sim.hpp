#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kitelab/errors.hpp"
#include "kitelab/path_geometry.hpp"
#include "kitelab/traction.hpp"
#include "kitelab/vec3.hpp"
#include "kitelab/wind_model.hpp"

namespace kitelab {

// Wing position/rates on the constant-radius tether sphere, in the
// (azimuth phi, elevation theta) chart.  The radial rate is carried for
// completeness but held at zero by the fixed-length tether.
struct WingState {
    double phi = 0.0;
    double theta = 0.4;
    double r = 30.0;
    double phi_dot = 0.0;
    double theta_dot = 0.0;
    double r_dot = 0.0;
};

// Local orthonormal frame at the wing: radial (outward), elevation
// (toward zenith along the meridian), azimuth (horizontal).
struct LocalFrame {
    Vec3 e_r;
    Vec3 e_theta;
    Vec3 e_phi;
};

LocalFrame local_frame(double phi, double theta);

// Inertial wing velocity (r_dot = 0).
Vec3 wing_velocity(const WingState& state);

// Apparent wind: field wind minus wing velocity.
Vec3 apparent_wind(const WingState& state, const WindSample& wind);

struct BodyParams {
    double mass = 2.45;               // kg, wing mass
    double tether_lin_density = 0.01; // kg/m
    double gravity = 9.81;            // m/s^2
    AeroParams aero;

    // Wing plus half the tether, lumped at the wing.
    double effective_mass() const { return mass + 0.5 * tether_lin_density * aero.r; }
};

// Aerodynamic state is unusable: zero apparent wind (stall) or apparent
// wind aligned with the tether (no lift direction).
class AeroError : public std::runtime_error {
  public:
    explicit AeroError(const std::string& what) : std::runtime_error(what) {}
};

// Total aerodynamic force.  Drag (equivalent wing+line drag) lies along
// the apparent wind; lift is perpendicular to it, rolled by psi about the
// apparent-wind axis from the tether-aligned reference direction.
// Throws AeroError on degenerate geometry.
Vec3 aero_force(const WingState& state, const WindSample& wind, double psi,
                const AeroParams& aero);

struct TensionResult {
    double force = 0.0;  // N, clamped at zero
    bool slack = false;  // true when the unclamped value was negative
};

// Tether tension balancing the radial force budget: radial aero component,
// radial gravity component, and the centripetal term of the sphere motion.
// Zero apparent wind contributes no aero force (a hovering wing hangs on a
// slack tether rather than erroring out).
TensionResult tension(const WingState& state, const WindSample& wind, double psi,
                      const BodyParams& body);

// Angular accelerations on the constant-radius sphere given the specific
// tangential force (m/s^2) along e_theta and e_phi.  The phi_dot^2 term is
// the centrifugal flattening that pulls a whirling mass toward the equator
// of the azimuth axis; the mixed term is the Coriolis coupling.
struct AngularAccel {
    double theta_ddot = 0.0;
    double phi_ddot = 0.0;
};

AngularAccel sphere_accel(const WingState& state, double a_theta, double a_phi);

// One classical Runge-Kutta step of the sphere kinematics driven by a
// caller-supplied acceleration model (used directly by the physics tests;
// flight stepping wraps it with the aero model and window guard).
using AccelModel = std::function<AngularAccel(const WingState&, double t)>;

WingState rk4_step(const WingState& state, double t, double dt, const AccelModel& accel);

// Advance the wing one step under aero + gravity.  dt must lie in
// (0, 0.05].  Throws SimulationCrash when the wing leaves the flyable
// window (elevation outside [0.01, pi/2 - 0.01]) or the aero state
// degenerates.
WingState step(const WingState& state, double psi, const WindEnvironment& env,
               const BodyParams& body, double t, double dt);

// Figure-eight path-following controller.  Guidance lives in the path
// frame (chart coordinates rotated by -beta about the commanded center):
// the wing steers its velocity angle toward one of two targets placed
// beyond the commanded azimuth span, switching targets when the lateral
// coordinate crosses the switch threshold.  After each switch the turn
// direction is forced upward (counter-clockwise at the +u edge, clockwise
// at the -u edge) so every lobe is flown as an up-loop.  A slow integral
// trim on the target elevation centers the measured loop on the commanded
// elevation against gravity sag.
struct ControllerParams {
    double gain = 0.9;              // rad of roll per rad of velocity-angle error
    double psi_max = 0.75;          // rad, roll saturation
    double switch_threshold = 0.0;  // rad; 0 -> 0.95 * commanded phi_span
    double target_offset = 0.0;     // rad; 0 -> 1.15 * commanded phi_span
    double theta_trim_gain = 0.6;   // per-loop integral gain on elevation trim
};

void validate(const ControllerParams& params, double phi_span);

class Controller {
  public:
    Controller(const ControllerParams& params, const PathParams& commanded);

    struct Output {
        double psi = 0.0;
        bool switched = false;       // target switch at this sample
        bool loop_complete = false;  // every second switch closes a loop
    };

    // One guidance sample (call at the controller period).
    Output update(const WingState& state);

    void set_commanded(const PathParams& commanded);
    const PathParams& commanded() const { return commanded_; }

    double trim() const { return trim_; }

    // Chart center of the last completed loop (mean over its samples).
    struct LoopCenter {
        double phi = 0.0;
        double theta = 0.0;
        int n_samples = 0;
    };
    const std::optional<LoopCenter>& last_loop_center() const { return last_center_; }

  private:
    ControllerParams params_;
    PathParams commanded_;
    double switch_threshold_ = 0.0;
    double target_offset_ = 0.0;
    int active_target_ = 0;  // +1 toward +u edge, -1 toward -u edge, 0 until moving
    bool in_turn_ = false;
    int switch_count_ = 0;
    double trim_ = 0.0;
    double sum_phi_ = 0.0;
    double sum_theta_ = 0.0;
    int loop_samples_ = 0;
    std::optional<LoopCenter> last_center_;
};

// One recorded sample of a flight.
struct SimSample {
    double t = 0.0;
    WingState state;
    double psi = 0.0;
    double tension = 0.0;
    bool slack = false;
    bool controller_sample = false;  // guidance ran at this step
    bool loop_complete = false;
};

struct SimOutput {
    std::vector<SimSample> samples;
    std::vector<std::size_t> loop_marks;  // indices of loop-completing samples
    int slack_samples = 0;
};

// Incremental flight driver: dynamics at dt, guidance every
// controller_period (an integer multiple of dt).  The wind environment
// must outlive the sim.
class FlightSim {
  public:
    FlightSim(const WindEnvironment& env, const BodyParams& body, const ControllerParams& ctrl,
              const PathParams& commanded, double dt, double controller_period,
              std::optional<WingState> initial = std::nullopt);

    // Advance one dynamics step; returns the sample recorded at the step
    // start.  Throws SimulationCrash (with time and reason) on failure.
    SimSample advance();

    void set_commanded(const PathParams& commanded);
    const PathParams& commanded() const { return controller_.commanded(); }
    const WingState& state() const { return state_; }
    double time() const { return t_; }
    const Controller& controller() const { return controller_; }

  private:
    const WindEnvironment& env_;
    BodyParams body_;
    Controller controller_;
    double dt_;
    int steps_per_ctrl_;
    long step_index_ = 0;
    double t_ = 0.0;
    WingState state_;
    double psi_ = 0.0;
};

// Launch state on the commanded center, heading along the path frame's
// +u axis at a fraction of the ideal crosswind speed.
WingState initial_state(const PathParams& commanded, const BodyParams& body,
                        const ShearParams& shear);

// Fixed-command flight for `duration` seconds (an integer multiple of dt).
SimOutput simulate(const WindEnvironment& env, const BodyParams& body,
                   const ControllerParams& ctrl, const PathParams& commanded, double duration,
                   double dt, double controller_period,
                   std::optional<WingState> initial = std::nullopt);

}  // namespace kitelab
