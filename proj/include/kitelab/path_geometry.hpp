#pragma once

#include <vector>

namespace kitelab {

// Figure-eight reference path on the tether sphere, described in the
// (azimuth phi, elevation theta) chart of the quarter-sphere wind window.
//
// The shape is a 1:2 Lissajous curve around the center (phi_c, theta_c):
//   phi_delta(s)   =  phi_span   * sin(2*pi*s)
//   theta_delta(s) = -theta_span * sin(4*pi*s)
// optionally rotated in the chart plane by the inclination beta.  The sign
// of theta_delta makes the wing ascend through each lobe's outer edge
// ("up-loop" direction), which keeps the tether from overflying itself.
struct PathParams {
    double phi_c = 0.0;       // rad, azimuth of the path center (0 = downwind of x)
    double theta_c = 0.4;     // rad, elevation of the path center
    double phi_span = 0.3;    // rad, azimuth half-width of the eight
    double theta_span = 0.1;  // rad, elevation half-height of one lobe
    double beta = 0.0;        // rad, inclination of the eight in the chart plane
};

// Throws std::invalid_argument when the path would leave the flyable
// window: requires theta_c in (0, pi/2), positive spans with
// theta_span <= min(theta_c, pi/2 - theta_c), phi_span < pi/2, and
// beta in [-pi/2, pi/2].
void validate(const PathParams& params);

struct PathPoint {
    double phi = 0.0;
    double theta = 0.0;
    double phase = 0.0;  // curve parameter s in [0, 1)
};

enum class Half { Left, Right };

// Point of the curve at phase s (s is taken modulo 1).
PathPoint figure_eight_point(const PathParams& params, double s);

// n >= 4 points at phases k/n, k = 0..n-1 (closed curve; the point at
// s=0 equals the limit s->1).
std::vector<PathPoint> sample_path(const PathParams& params, int n);

// n >= 4 points at phases (k + 1/2)/n.  For even n the sample set is
// symmetric under the half-period mirror s -> s + 1/2, so no sample sits
// exactly on the left/right boundary and the halves balance exactly.
// Force aggregation uses this sampler.
std::vector<PathPoint> sample_path_midpoint(const PathParams& params, int n);

// Left half: azimuth at or beyond the path center (phi - phi_c >= 0).
Half classify_half(const PathPoint& point, double phi_c);

}  // namespace kitelab
