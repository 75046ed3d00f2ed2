#include "kitelab/traction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kitelab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate(const AeroParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(std::string("AeroParams: ") + name +
                                        " must be positive, got " + std::to_string(v));
        }
    };
    positive(p.rho, "rho");
    positive(p.area, "area");
    positive(p.c_l, "c_l");
    positive(p.c_d, "c_d");
    positive(p.d_line, "d_line");
    positive(p.r, "r");
    if (p.c_d_line < 0.0) throw std::invalid_argument("AeroParams: c_d_line must be >= 0");
    if (p.n_lines < 1) throw std::invalid_argument("AeroParams: n_lines must be >= 1");
}

TractionConstants derive_constants(const AeroParams& p) {
    validate(p);
    TractionConstants c;
    c.a_line = p.n_lines * p.r * p.d_line;
    c.c_d_eq = p.c_d + p.c_d_line * c.a_line / (4.0 * p.area);
    c.e_eq = p.c_l / c.c_d_eq;
    const double glide_sq = c.e_eq * c.e_eq;
    c.c_big = 0.5 * p.rho * p.area * p.c_l * glide_sq * std::pow(1.0 + 1.0 / glide_sq, 1.5);
    c.r = p.r;
    return c;
}

double point_force(const TractionConstants& c, const ShearParams& shear, double phi, double theta,
                   double phi_w) {
    if (!(theta > 0.0 && theta < kPi / 2.0)) {
        throw std::invalid_argument("point_force: elevation must lie in (0, pi/2), got " +
                                    std::to_string(theta));
    }
    const double rel = phi - phi_w;
    if (!(std::abs(rel) < kPi / 2.0)) {
        throw std::invalid_argument("point_force: |phi - phi_w| must be < pi/2, got " +
                                    std::to_string(rel));
    }
    const double w = shear_speed(shear, c.r * std::sin(theta));
    const double cos_t = std::cos(theta);
    const double cos_rel = std::cos(rel);
    return c.c_big * w * w * cos_t * cos_t * cos_rel * cos_rel;
}

double average_force(const TractionConstants& c, const ShearParams& shear,
                     const std::vector<PathPoint>& points, double phi_w) {
    if (points.empty()) throw std::invalid_argument("average_force: no path samples");
    double sum = 0.0;
    for (const auto& pt : points) sum += point_force(c, shear, pt.phi, pt.theta, phi_w);
    return sum / static_cast<double>(points.size());
}

HalfForces half_forces(const TractionConstants& c, const ShearParams& shear,
                       const std::vector<PathPoint>& points, double phi_w, double phi_c) {
    HalfForces out;
    for (const auto& pt : points) {
        const double f = point_force(c, shear, pt.phi, pt.theta, phi_w);
        if (classify_half(pt, phi_c) == Half::Left) {
            out.left += f;
            ++out.n_left;
        } else {
            out.right += f;
            ++out.n_right;
        }
    }
    if (out.n_left == 0 || out.n_right == 0) {
        throw std::invalid_argument(
            "half_forces: one half of the path has no samples (degenerate path)");
    }
    out.left /= out.n_left;
    out.right /= out.n_right;
    return out;
}

double delta_force(const TractionConstants& c, const ShearParams& shear,
                   const std::vector<PathPoint>& points, double phi_w, double phi_c) {
    const HalfForces h = half_forces(c, shear, points, phi_w, phi_c);
    return h.left - h.right;
}

std::pair<double, double> optimal_location(const ShearParams& shear, double phi_w) {
    // Pure formula: the single-point optimum sits downwind at the elevation
    // where the shear gain stops paying for the cosine losses.  Accepts any
    // alpha >= 0 so limiting cases (alpha -> 1 gives pi/4) stay evaluable.
    if (!(shear.alpha >= 0.0)) {
        throw std::invalid_argument("optimal_location: alpha must be non-negative");
    }
    return {phi_w, std::atan(std::sqrt(shear.alpha))};
}

void set_path_param(PathParams& p, const std::string& name, double value) {
    if (name == "phi_c") {
        p.phi_c = value;
    } else if (name == "theta_c") {
        p.theta_c = value;
    } else if (name == "phi_span") {
        p.phi_span = value;
    } else if (name == "theta_span") {
        p.theta_span = value;
    } else if (name == "beta") {
        p.beta = value;
    } else {
        throw std::invalid_argument("sweep: unknown path parameter '" + name + "'");
    }
}

namespace {

double axis_value(const SweepAxis& a, int i) {
    if (a.count <= 1) return a.from;
    return a.from + (a.to - a.from) * static_cast<double>(i) / (a.count - 1);
}

}  // namespace

std::vector<SweepRow> sweep(const TractionConstants& c, const ShearParams& shear,
                            const SweepSpec& spec) {
    if (spec.axis1.count < 1 || (spec.axis2 && spec.axis2->count < 1)) {
        throw std::invalid_argument("sweep: axis count must be >= 1");
    }
    const int n2 = spec.axis2 ? spec.axis2->count : 1;
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.axis1.count) * n2);
    for (int i = 0; i < spec.axis1.count; ++i) {
        for (int j = 0; j < n2; ++j) {
            PathParams p = spec.base;
            SweepRow row;
            row.v1 = axis_value(spec.axis1, i);
            set_path_param(p, spec.axis1.param, row.v1);
            if (spec.axis2) {
                row.v2 = axis_value(*spec.axis2, j);
                set_path_param(p, spec.axis2->param, row.v2);
            }
            const auto points = sample_path_midpoint(p, spec.samples);
            row.f_bar = average_force(c, shear, points, spec.phi_w);
            row.delta_f = delta_force(c, shear, points, spec.phi_w, p.phi_c);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace kitelab
