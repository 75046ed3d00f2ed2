#pragma once

#include <stdexcept>
#include <string>

namespace kitelab {

// Scenario/parameter problems: bad values, malformed files, missing keys.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The point-mass wing left the flyable window or lost its aerodynamic
// state (stall, degenerate geometry) at simulation time `t`.
class SimulationCrash : public std::runtime_error {
  public:
    SimulationCrash(double t, const std::string& reason)
        : std::runtime_error("simulation crash at t=" + std::to_string(t) + " s: " + reason),
          t_(t),
          reason_(reason) {}

    double t() const { return t_; }
    const std::string& reason() const { return reason_; }

  private:
    double t_;
    std::string reason_;
};

}  // namespace kitelab
