#include "kitelab/wind_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "kitelab/fft.hpp"
#include "kitelab/rng.hpp"

namespace kitelab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate(const ShearParams& p) {
    if (!(p.w0 >= 0.0)) {
        throw std::invalid_argument("ShearParams: w0 must be non-negative, got " +
                                    std::to_string(p.w0));
    }
    if (!(p.z0 > 0.0)) {
        throw std::invalid_argument("ShearParams: z0 must be positive, got " +
                                    std::to_string(p.z0));
    }
    if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
        throw std::invalid_argument("ShearParams: alpha must lie in (0, 1), got " +
                                    std::to_string(p.alpha));
    }
}

double shear_speed(const ShearParams& p, double z) {
    validate(p);
    if (z < 0.0) {
        throw std::invalid_argument("shear_speed: height must be non-negative, got " +
                                    std::to_string(z));
    }
    if (z == 0.0) return 0.0;
    return p.w0 * std::pow(z / p.z0, p.alpha);
}

void validate(const TurbulenceParams& p) {
    if (!(p.intensity >= 0.0 && p.intensity <= 0.5)) {
        throw std::invalid_argument("TurbulenceParams: intensity must lie in [0, 0.5], got " +
                                    std::to_string(p.intensity));
    }
    if (!(p.length_scale > 0.0)) {
        throw std::invalid_argument("TurbulenceParams: length_scale must be positive, got " +
                                    std::to_string(p.length_scale));
    }
}

std::vector<double> generate_turbulence(const TurbulenceParams& p, double mean_speed,
                                        double duration, double dt) {
    validate(p);
    if (!(duration > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("generate_turbulence: duration and dt must be positive");
    }
    const auto n = static_cast<std::size_t>(std::llround(duration / dt));
    if (n < 4) {
        throw std::invalid_argument("generate_turbulence: dt must be much smaller than duration");
    }
    if (p.intensity == 0.0 || mean_speed <= 0.0) {
        return std::vector<double>(n, 0.0);
    }

    const double sigma = p.intensity * mean_speed;
    const double lu = p.length_scale / mean_speed;  // L / U, s
    const double df = 1.0 / (static_cast<double>(n) * dt);

    // One cosine per resolvable frequency bin, with the exact band-integrated
    // Kaimal power: a_j^2 / 2 = integral of S over [f_j - df/2, f_j + df/2].
    // The cumulative integral of S is sigma^2 * (1 - (1 + 6 f L/U)^(-2/3)).
    auto cumulative = [&](double f) { return 1.0 - std::pow(1.0 + 6.0 * f * lu, -2.0 / 3.0); };

    std::mt19937_64 gen(p.seed);
    std::vector<std::complex<double>> spectrum(n, {0.0, 0.0});
    const std::size_t half = n / 2;
    for (std::size_t j = 1; j < half; ++j) {
        const double f = static_cast<double>(j) * df;
        const double band = cumulative(f + 0.5 * df) - cumulative(f - 0.5 * df);
        const double amp = sigma * std::sqrt(2.0 * band);
        const double phase = 2.0 * kPi * uniform01(gen);
        const std::complex<double> coeff =
            0.5 * static_cast<double>(n) * amp *
            std::complex<double>(std::cos(phase), std::sin(phase));
        spectrum[j] = coeff;
        spectrum[n - j] = std::conj(coeff);
    }

    // Inverse transform of a Hermitian spectrum with a zero DC bin: the
    // result is real with an exactly zero sample mean, and by Parseval its
    // sample variance is the same for every seed.
    fft_any(spectrum, true);

    std::vector<double> series(n);
    for (std::size_t k = 0; k < n; ++k) series[k] = spectrum[k].real();
    return series;
}

DirectionSchedule::DirectionSchedule(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].first > points_[i - 1].first)) {
            throw std::invalid_argument(
                "DirectionSchedule: breakpoint times must be strictly increasing (t=" +
                std::to_string(points_[i].first) + " after t=" +
                std::to_string(points_[i - 1].first) + ")");
        }
    }
}

DirectionSchedule DirectionSchedule::constant(double phi_w) {
    return DirectionSchedule({{0.0, phi_w}});
}

double DirectionSchedule::at(double t) const {
    if (points_.empty()) return 0.0;
    if (t <= points_.front().first) return points_.front().second;
    if (t >= points_.back().first) return points_.back().second;
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double v, const auto& pt) { return v < pt.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
}

WindEnvironment::WindEnvironment(ShearParams shear, DirectionSchedule schedule,
                                 TurbulenceParams turbulence, double duration, double dt,
                                 double turb_ref_height)
    : shear_(shear), schedule_(std::move(schedule)) {
    validate(shear_);
    if (turbulence.enabled && turbulence.intensity > 0.0) {
        const double u_ref = shear_speed(shear_, turb_ref_height);
        series_ = generate_turbulence(turbulence, u_ref, duration, dt);
        series_dt_ = dt;
    }
}

WindEnvironment::WindEnvironment(ShearParams shear, double phi_w)
    : shear_(shear), schedule_(DirectionSchedule::constant(phi_w)) {
    validate(shear_);
}

double WindEnvironment::fluctuation_at(double t) const {
    if (series_.empty()) return 0.0;
    const double pos = std::clamp(t / series_dt_, 0.0, static_cast<double>(series_.size() - 1));
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= series_.size()) return series_.back();
    const double w = pos - static_cast<double>(i);
    return series_[i] + w * (series_[i + 1] - series_[i]);
}

WindSample WindEnvironment::at(double t, double /*phi*/, double theta, double r) const {
    if (!(theta > 0.0 && theta < kPi / 2.0)) {
        throw std::invalid_argument("wind query: elevation must lie in (0, pi/2), got " +
                                    std::to_string(theta));
    }
    const double z = r * std::sin(theta);
    const double speed = std::max(0.0, shear_speed(shear_, z) + fluctuation_at(t));
    const double dir = schedule_.at(t);
    return {speed, dir, {speed * std::cos(dir), speed * std::sin(dir), 0.0}};
}

}  // namespace kitelab
