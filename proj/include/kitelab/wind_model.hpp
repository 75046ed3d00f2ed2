#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kitelab/vec3.hpp"

namespace kitelab {

// Power-law vertical shear: speed(z) = w0 * (z / z0)^alpha.
struct ShearParams {
    double w0 = 5.0;    // m/s, speed at the reference height
    double z0 = 4.0;    // m, reference height
    double alpha = 0.1; // shear exponent, in (0, 1)
};

// Throws std::invalid_argument on out-of-range parameters.
void validate(const ShearParams& params);

// Horizontal wind speed at height z >= 0 (z < 0 throws std::invalid_argument).
double shear_speed(const ShearParams& params, double z);

// Longitudinal turbulence with a Kaimal-type spectrum
//   S(f) = sigma^2 * (4 L / U) / (1 + 6 f L / U)^(5/3),  sigma = I * U,
// synthesised as a sum of cosines with deterministic per-seed phases.
struct TurbulenceParams {
    bool enabled = false;
    double intensity = 0.05;    // I, std / mean, in [0, 0.5]
    double length_scale = 50.0; // L, m
    std::uint64_t seed = 1;
};

void validate(const TurbulenceParams& params);

// Zero-mean speed fluctuation series sampled every dt over `duration`
// (duration/dt samples).  The series is periodic over the full duration,
// so its sample mean is exactly zero and its sample standard deviation is
// the same for every seed (only the phases are random).
std::vector<double> generate_turbulence(const TurbulenceParams& params, double mean_speed,
                                        double duration, double dt);

// Wind azimuth over time: piecewise-linear through (t, phi_w) points with
// constant extrapolation beyond the ends.  Breakpoints must be strictly
// increasing in t.
class DirectionSchedule {
  public:
    DirectionSchedule() = default;
    explicit DirectionSchedule(std::vector<std::pair<double, double>> points);
    static DirectionSchedule constant(double phi_w);

    double at(double t) const;
    const std::vector<std::pair<double, double>>& points() const { return points_; }

  private:
    std::vector<std::pair<double, double>> points_;
};

struct WindSample {
    double speed = 0.0;     // m/s, >= 0
    double direction = 0.0; // rad, azimuth the wind blows toward
    Vec3 vector;            // horizontal wind vector in the ground frame
};

// Whole-field wind model: shear profile plus a spatially uniform
// turbulence series added to the speed.  The series is precomputed for
// the run duration at construction, so queries are cheap and the object
// is safe to share read-only across worker threads.
class WindEnvironment {
  public:
    WindEnvironment(ShearParams shear, DirectionSchedule schedule, TurbulenceParams turbulence,
                    double duration, double dt, double turb_ref_height);

    // Calm construction helper: no turbulence, fixed direction.
    WindEnvironment(ShearParams shear, double phi_w);

    // Wind at time t for a tether point at (phi, theta, r); requires
    // theta in (0, pi/2).  Speed is clamped at zero.
    WindSample at(double t, double phi, double theta, double r) const;

    const ShearParams& shear() const { return shear_; }
    const DirectionSchedule& schedule() const { return schedule_; }
    const std::vector<double>& turbulence_series() const { return series_; }

  private:
    double fluctuation_at(double t) const;

    ShearParams shear_;
    DirectionSchedule schedule_;
    std::vector<double> series_;
    double series_dt_ = 0.0;
};

}  // namespace kitelab
