#include "kitelab/sensors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kitelab {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

AngleSensor::AngleSensor(int bits, double noise_std, std::uint64_t seed)
    : step_(0.0), noise_std_(noise_std), gen_(seed) {
    if (bits < 8 || bits > 24) {
        throw std::invalid_argument("AngleSensor: bits must lie in [8, 24], got " +
                                    std::to_string(bits));
    }
    if (!(noise_std >= 0.0)) {
        throw std::invalid_argument("AngleSensor: noise_std must be non-negative");
    }
    step_ = kTwoPi / std::pow(2.0, bits);
}

std::pair<double, double> AngleSensor::measure(double phi, double theta) {
    const double q_phi = std::round(phi / step_) * step_;
    const double q_theta = std::round(theta / step_) * step_;
    const double n_phi = noise_std_ * gauss_(gen_);
    const double n_theta = noise_std_ * gauss_(gen_);
    return {q_phi + n_phi, q_theta + n_theta};
}

ForceSensor::ForceSensor(double gain_error, double offset, double noise_std, std::uint64_t seed)
    : gain_error_(gain_error), offset_(offset), noise_std_(noise_std), gen_(seed) {
    if (!(std::abs(gain_error) < 1.0)) {
        throw std::invalid_argument("ForceSensor: |gain_error| must be < 1");
    }
    if (!(noise_std >= 0.0)) {
        throw std::invalid_argument("ForceSensor: noise_std must be non-negative");
    }
}

double ForceSensor::measure(double force) {
    if (!(force >= 0.0)) {
        throw std::invalid_argument("ForceSensor: force must be non-negative, got " +
                                    std::to_string(force));
    }
    return force * (1.0 + gain_error_) + offset_ + noise_std_ * gauss_(gen_);
}

}  // namespace kitelab
