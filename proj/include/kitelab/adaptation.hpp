#pragma once

#include <optional>
#include <vector>

#include "kitelab/path_geometry.hpp"
#include "kitelab/pointmass_sim.hpp"
#include "kitelab/sensors.hpp"

namespace kitelab {

// Coordinate-search relocation of the figure-eight center.  Only two
// measured signals drive it: the average traction force F over recent
// loops and the left-right force split dF.  A large |dF| means the center
// sits off the wind direction in azimuth, so azimuth is corrected first;
// otherwise the elevation performs one hill-climbing step on F.

struct StepRange {
    double min = 0.0;
    double init = 0.0;
    double max = 0.0;
};

struct AdaptConfig {
    double delta_f_min = 1.0;        // N, absolute floor of the split threshold
    double delta_f_min_frac = 0.03;  // split threshold as a fraction of running F
    int n_avg = 3;                   // loops aggregated per decision
    StepRange step_phi{0.005, 0.02, 0.06};
    StepRange step_theta{0.005, 0.015, 0.04};
    double scale_c = 1.5;            // step growth/shrink factor
    double theta_min = 0.08;         // rad, commanded-elevation clamp
    double theta_max = 1.2;
};

void validate(const AdaptConfig& config);

// Aggregates of one completed figure-eight.
struct LoopRecord {
    double t_end = 0.0;
    double f_bar = 0.0;
    double f_left = 0.0;
    double f_right = 0.0;
    double delta_f = 0.0;  // f_left - f_right
    int n_samples = 0;
    int n_left = 0;
    int n_right = 0;
    double center_phi = 0.0;    // mean measured azimuth
    double center_theta = 0.0;  // mean measured elevation
};

enum class Phase { PhiCorrection, ThetaClimb };

struct Decision {
    int index = 0;
    double t = 0.0;
    Phase phase = Phase::PhiCorrection;
    double delta_f = 0.0;   // aggregated split driving the decision
    double f_bar = 0.0;     // aggregated force driving the decision
    double step_phi = 0.0;  // step sizes after this decision's update
    double step_theta = 0.0;
    double phi_c = 0.0;  // commanded center after the decision
    double theta_c = 0.0;
};

class Adapter {
  public:
    Adapter(const AdaptConfig& config, double phi_c0, double theta_c0);

    // Feed one measured sample (angles and force at time t, with the
    // controller's loop-completion flag).  Returns a decision when n_avg
    // loops have been aggregated.  Sample times must strictly increase.
    std::optional<Decision> accumulate(double t, double phi_meas, double theta_meas,
                                       double f_meas, bool loop_complete);

    // One decision from aggregated measurements (also driven directly by
    // table-based tests).  Exactly one of the commanded coordinates moves.
    Decision decide(double f_bar, double delta_f, double t);

    double phi_c() const { return phi_c_; }
    double theta_c() const { return theta_c_; }
    double step_phi() const { return step_phi_; }
    double step_theta() const { return step_theta_; }
    const std::vector<LoopRecord>& loops() const { return loops_; }
    const std::vector<Decision>& decisions() const { return decisions_; }

  private:
    AdaptConfig cfg_;
    double phi_c_;
    double theta_c_;
    double step_phi_;
    double step_theta_;

    // Memory of the previous decision (cold start: zero split, zero force,
    // an elevation one initial step below the start).
    double prev_delta_f_ = 0.0;
    double prev_f_bar_ = 0.0;
    double prev_theta_c_;

    // Current-loop accumulation.
    double loop_sum_f_ = 0.0;
    double loop_sum_left_ = 0.0;
    double loop_sum_right_ = 0.0;
    double loop_sum_phi_ = 0.0;
    double loop_sum_theta_ = 0.0;
    int loop_n_left_ = 0;
    int loop_n_right_ = 0;
    double last_t_ = 0.0;
    bool has_sample_ = false;

    // Loops waiting to be aggregated into the next decision.
    std::vector<LoopRecord> pending_;

    std::vector<LoopRecord> loops_;
    std::vector<Decision> decisions_;
};

// Sensor stack applied to the adaptation inputs.  Null sensors pass the
// true values through.
struct SensorSuite {
    std::optional<AngleSensor> angles;
    std::optional<ForceSensor> force;
};

struct AdaptTrace {
    std::vector<Decision> decisions;
    std::vector<LoopRecord> loops;
    double final_phi_c = 0.0;
    double final_theta_c = 0.0;
    double mean_tension = 0.0;
    int slack_samples = 0;
    long n_steps = 0;
};

// Full closed loop: fly the point-mass wing, measure through the sensors,
// aggregate per loop, relocate the commanded center after every n_avg
// loops.  The commanded spans and inclination stay fixed.
AdaptTrace run_closed_loop(const WindEnvironment& env, const BodyParams& body,
                           const ControllerParams& ctrl, SensorSuite& sensors, Adapter& adapter,
                           const PathParams& initial, double duration, double dt,
                           double controller_period);

}  // namespace kitelab
