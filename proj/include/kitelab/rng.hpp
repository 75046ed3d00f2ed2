#pragma once

#include <cstdint>
#include <random>

namespace kitelab {

// Deterministic draws on top of std::mt19937_64.
//
// The engine's bit stream is pinned by the C++ standard, but the
// distributions in <random> are implementation-defined, so batch outputs
// would differ across standard libraries.  These helpers fix the mapping
// from bits to doubles so results are reproducible everywhere.

// Uniform in [0, 1): top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]: safe as a log() argument.
inline double uniform01_pos(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal deviates via Box-Muller, caching the second value of
// each pair so consecutive calls consume a predictable number of draws.
class GaussianDraw {
  public:
    double operator()(std::mt19937_64& gen) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_pos(gen);
        const double u2 = uniform01(gen);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace kitelab
