#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kitelab/path_geometry.hpp"
#include "kitelab/wind_model.hpp"

namespace kitelab {

// Wing and tether data needed by both the quasi-static traction model and
// the point-mass aerodynamics.
struct AeroParams {
    double rho = 1.225;     // kg/m^3, air density
    double area = 9.0;      // m^2, wing reference area
    double c_l = 0.8;       // lift coefficient
    double c_d = 0.134;     // wing drag coefficient
    double c_d_line = 1.2;  // tether cross-flow drag coefficient
    int n_lines = 3;        // number of tether lines
    double d_line = 0.003;  // m, line diameter
    double r = 30.0;        // m, tether length
};

void validate(const AeroParams& params);

// Lumped constants of the quasi-static traction model
//   F = c_big * v(theta) * cos^2(phi - phi_w),  v = W(theta)^2 cos^2(theta).
struct TractionConstants {
    double a_line = 0.0;  // m^2, effective tether side area n_l * r * d_l
    double c_d_eq = 0.0;  // equivalent drag: wing drag plus a quarter of the line drag area
    double e_eq = 0.0;    // equivalent glide ratio c_l / c_d_eq
    double c_big = 0.0;   // N / (m/s)^2, 0.5*rho*A*c_l*e_eq^2*(1 + 1/e_eq^2)^1.5
    double r = 0.0;       // m, tether length (carried for height lookups z = r sin(theta))
};

TractionConstants derive_constants(const AeroParams& params);

// Traction force at a single window location.  Requires theta in
// (0, pi/2) and |phi - phi_w| < pi/2.
double point_force(const TractionConstants& constants, const ShearParams& shear, double phi,
                   double theta, double phi_w);

// Mean traction force over a sampled path.
double average_force(const TractionConstants& constants, const ShearParams& shear,
                     const std::vector<PathPoint>& points, double phi_w);

struct HalfForces {
    double left = 0.0;   // mean force over samples with phi >= phi_c
    double right = 0.0;  // mean force over samples with phi <  phi_c
    int n_left = 0;
    int n_right = 0;
};

// Per-half mean forces; throws std::invalid_argument when either half is
// empty (degenerate path/boundary combination).
HalfForces half_forces(const TractionConstants& constants, const ShearParams& shear,
                       const std::vector<PathPoint>& points, double phi_w, double phi_c);

// Left-right force split: mean(left) - mean(right).  Positive when the
// path center sits on the low-azimuth side of the wind direction.
double delta_force(const TractionConstants& constants, const ShearParams& shear,
                   const std::vector<PathPoint>& points, double phi_w, double phi_c);

// Location of the single-point traction maximum: (phi_w, arctan(sqrt(alpha))).
std::pair<double, double> optimal_location(const ShearParams& shear, double phi_w);

// Assigns one named path parameter ("phi_c", "theta_c", "phi_span",
// "theta_span", "beta"); throws std::invalid_argument for other names.
void set_path_param(PathParams& params, const std::string& name, double value);

// Tabulated sweep of average force and force split over one or two path
// parameters.
struct SweepAxis {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int count = 0;  // >= 1; a single point repeats `from`
};

struct SweepSpec {
    PathParams base;
    double phi_w = 0.0;
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;  // inner axis (row-major output)
    int samples = 2000;              // path samples per evaluation
};

struct SweepRow {
    double v1 = 0.0;
    double v2 = 0.0;  // unused for 1-D sweeps
    double f_bar = 0.0;
    double delta_f = 0.0;
};

std::vector<SweepRow> sweep(const TractionConstants& constants, const ShearParams& shear,
                            const SweepSpec& spec);

}  // namespace kitelab
