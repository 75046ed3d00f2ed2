// Diagnostic: fly a fixed commanded figure-eight in calm or turbulent wind
// and print per-loop statistics (center, span, force aggregates).  Handy
// for eyeballing controller behavior when tuning guidance parameters.
//
// usage: kitelab-flightlog [phi_c] [theta_c] [phi_span] [theta_span] [beta]
//                          [duration] [gain] [psi_max] [phi_w]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "kitelab/experiments.hpp"

int main(int argc, char** argv) {
    using namespace kitelab;
    auto arg = [&](int i, double fallback) {
        return argc > i ? std::atof(argv[i]) : fallback;
    };

    PathParams path;
    path.phi_c = arg(1, 0.0);
    path.theta_c = arg(2, 0.4);
    path.phi_span = arg(3, 0.24);
    path.theta_span = arg(4, 0.1);
    path.beta = arg(5, 0.0);
    const double duration = arg(6, 30.0);

    ControllerParams ctrl;
    ctrl.gain = arg(7, 0.9);
    ctrl.psi_max = arg(8, 0.75);
    const double phi_w = arg(9, 0.0);

    BodyParams body;
    const WindEnvironment env(ShearParams{}, phi_w);

    try {
        const SimOutput out = simulate(env, body, ctrl, path, duration, 0.02, 0.02);
        std::printf("steps=%zu loops=%zu slack=%d\n", out.samples.size(), out.loop_marks.size(),
                    out.slack_samples);

        std::size_t begin = 0;
        int loop = 0;
        for (const std::size_t mark : out.loop_marks) {
            double sum_phi = 0.0, sum_theta = 0.0, sum_f = 0.0;
            double min_phi = 1e9, max_phi = -1e9, min_theta = 1e9, max_theta = -1e9;
            double sum_speed = 0.0;
            int n = 0;
            for (std::size_t i = begin; i < mark; ++i) {
                const auto& s = out.samples[i];
                sum_phi += s.state.phi;
                sum_theta += s.state.theta;
                sum_f += s.tension;
                min_phi = std::min(min_phi, s.state.phi);
                max_phi = std::max(max_phi, s.state.phi);
                min_theta = std::min(min_theta, s.state.theta);
                max_theta = std::max(max_theta, s.state.theta);
                sum_speed += norm(wing_velocity(s.state));
                ++n;
            }
            if (n == 0) continue;
            std::printf(
                "loop %2d  n=%4d  center=(%+.4f, %.4f)  span=(%.3f, %.3f)  F=%8.1f  v=%5.1f\n",
                loop++, n, sum_phi / n, sum_theta / n, max_phi - min_phi, max_theta - min_theta,
                sum_f / n, sum_speed / n);
            begin = mark;
        }
    } catch (const SimulationCrash& e) {
        std::printf("CRASH: %s\n", e.what());
        return 3;
    }
    return 0;
}
