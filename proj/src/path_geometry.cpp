#include "kitelab/path_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kitelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void fail(const std::string& what) { throw std::invalid_argument("PathParams: " + what); }

}  // namespace

void validate(const PathParams& p) {
    if (!(p.theta_c > 0.0 && p.theta_c < kPi / 2.0)) {
        fail("theta_c must lie in (0, pi/2), got " + std::to_string(p.theta_c));
    }
    if (!(p.phi_span > 0.0 && p.phi_span < kPi / 2.0)) {
        fail("phi_span must lie in (0, pi/2), got " + std::to_string(p.phi_span));
    }
    if (!(p.theta_span > 0.0)) {
        fail("theta_span must be positive, got " + std::to_string(p.theta_span));
    }
    const double headroom = std::min(p.theta_c, kPi / 2.0 - p.theta_c);
    if (!(p.theta_span <= headroom)) {
        fail("theta_span " + std::to_string(p.theta_span) +
             " exceeds the window headroom min(theta_c, pi/2 - theta_c) = " +
             std::to_string(headroom));
    }
    if (!(p.beta >= -kPi / 2.0 && p.beta <= kPi / 2.0)) {
        fail("beta must lie in [-pi/2, pi/2], got " + std::to_string(p.beta));
    }
}

PathPoint figure_eight_point(const PathParams& p, double s) {
    validate(p);
    s -= std::floor(s);  // wrap into [0, 1)
    const double du = p.phi_span * std::sin(2.0 * kPi * s);
    const double dw = -p.theta_span * std::sin(4.0 * kPi * s);
    const double c = std::cos(p.beta);
    const double b = std::sin(p.beta);
    return {p.phi_c + c * du - b * dw, p.theta_c + b * du + c * dw, s};
}

namespace {

std::vector<PathPoint> sample_at(const PathParams& p, int n, double phase_offset) {
    validate(p);
    if (n < 4) {
        throw std::invalid_argument("sample_path: need at least 4 samples, got " +
                                    std::to_string(n));
    }
    std::vector<PathPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        points.push_back(figure_eight_point(p, (static_cast<double>(k) + phase_offset) / n));
    }
    return points;
}

}  // namespace

std::vector<PathPoint> sample_path(const PathParams& p, int n) { return sample_at(p, n, 0.0); }

std::vector<PathPoint> sample_path_midpoint(const PathParams& p, int n) {
    return sample_at(p, n, 0.5);
}

Half classify_half(const PathPoint& point, double phi_c) {
    return point.phi - phi_c >= 0.0 ? Half::Left : Half::Right;
}

}  // namespace kitelab
