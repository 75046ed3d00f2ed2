#pragma once

#include <cstdint>
#include <utility>

#include "kitelab/rng.hpp"

namespace kitelab {

// Angle measurement: quantization to a 2*pi / 2^bits grid (round to
// nearest) followed by additive Gaussian noise on each axis.  Each
// instance owns its RNG stream, so concurrent sensors never share state.
class AngleSensor {
  public:
    AngleSensor(int bits, double noise_std, std::uint64_t seed);

    std::pair<double, double> measure(double phi, double theta);

    double quantization_step() const { return step_; }

  private:
    double step_;
    double noise_std_;
    std::mt19937_64 gen_;
    GaussianDraw gauss_;
};

// Force measurement: multiplicative gain error, constant offset, additive
// Gaussian noise.
class ForceSensor {
  public:
    ForceSensor(double gain_error, double offset, double noise_std, std::uint64_t seed);

    double measure(double force);

  private:
    double gain_error_;
    double offset_;
    double noise_std_;
    std::mt19937_64 gen_;
    GaussianDraw gauss_;
};

}  // namespace kitelab
