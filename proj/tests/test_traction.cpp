#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "kitelab/path_geometry.hpp"
#include "kitelab/traction.hpp"
#include "kitelab/wind_model.hpp"

using kitelab::AeroParams;
using kitelab::average_force;
using kitelab::delta_force;
using kitelab::derive_constants;
using kitelab::half_forces;
using kitelab::PathParams;
using kitelab::PathPoint;
using kitelab::point_force;
using kitelab::sample_path_midpoint;
using kitelab::ShearParams;
using kitelab::SweepAxis;
using kitelab::SweepSpec;
using kitelab::TractionConstants;

namespace {

PathParams make_path(double phi_c, double theta_c, double phi_span, double theta_span,
                     double beta = 0.0) {
    PathParams p;
    p.phi_c = phi_c;
    p.theta_c = theta_c;
    p.phi_span = phi_span;
    p.theta_span = theta_span;
    p.beta = beta;
    return p;
}

// Elevation-dependent force factor v(theta) = W(theta)^2 cos^2(theta),
// written out independently of point_force.
double v_factor(const ShearParams& shear, double r, double theta) {
    const double w = kitelab::shear_speed(shear, r * std::sin(theta));
    const double c = std::cos(theta);
    return w * w * c * c;
}

}  // namespace

TEST_CASE("lumped constants from the benchmark wing") {
    const TractionConstants c = derive_constants(AeroParams{});
    CHECK(c.a_line == doctest::Approx(0.27).epsilon(1e-12));
    CHECK(c.c_d_eq == doctest::Approx(0.143).epsilon(1e-12));
    CHECK(c.e_eq == doctest::Approx(5.594405594405594).epsilon(1e-12));
    CHECK(c.c_big == doctest::Approx(144.688981).epsilon(1e-8));
    CHECK(c.r == doctest::Approx(30.0));
}

TEST_CASE("without line drag the equivalent glide ratio is the wing's own") {
    AeroParams p;
    p.c_d_line = 0.0;
    const TractionConstants c = derive_constants(p);
    CHECK(c.c_d_eq == doctest::Approx(p.c_d).epsilon(1e-14));
    CHECK(c.e_eq == doctest::Approx(p.c_l / p.c_d).epsilon(1e-14));
}

TEST_CASE("wing parameter validation") {
    AeroParams p;
    CHECK_NOTHROW(kitelab::validate(p));
    p.area = 0.0;
    CHECK_THROWS_AS(kitelab::validate(p), std::invalid_argument);
    p = AeroParams{};
    p.c_l = -0.1;
    CHECK_THROWS_AS(kitelab::validate(p), std::invalid_argument);
    p = AeroParams{};
    p.n_lines = 0;
    CHECK_THROWS_AS(kitelab::validate(p), std::invalid_argument);
    p = AeroParams{};
    p.c_d_line = -0.5;
    CHECK_THROWS_AS(kitelab::validate(p), std::invalid_argument);
}

TEST_CASE("point force at the single-point optimum") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const double theta_star = std::atan(std::sqrt(shear.alpha));
    CHECK(point_force(c, shear, 0.0, theta_star, 0.0) ==
          doctest::Approx(3871.290534).epsilon(1e-8));
}

TEST_CASE("quarter-turn misalignment exactly halves the force") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const double theta = 0.30627736916966947;
    const double aligned = point_force(c, shear, 0.0, theta, 0.0);
    const double off = point_force(c, shear, std::numbers::pi / 4.0, theta, 0.0);
    CHECK(off == doctest::Approx(0.5 * aligned).epsilon(1e-12));
}

TEST_CASE("force is linear in the lumped constant") {
    TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const double base = point_force(c, shear, 0.1, 0.4, 0.0);
    c.c_big *= 2.0;
    CHECK(point_force(c, shear, 0.1, 0.4, 0.0) == doctest::Approx(2.0 * base).epsilon(1e-14));
}

TEST_CASE("point force domain guards") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    CHECK_THROWS_AS(point_force(c, shear, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(point_force(c, shear, 0.0, std::numbers::pi / 2.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(point_force(c, shear, std::numbers::pi / 2.0, 0.4, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(point_force(c, shear, 0.0, 0.4, -std::numbers::pi / 2.0),
                    std::invalid_argument);
}

TEST_CASE("averaging over a path loses force relative to the centered optimum") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;

    const std::vector<PathPoint> lone{{0.0, 0.30627736916966947, 0.0}};
    CHECK(average_force(c, shear, lone, 0.0) ==
          doctest::Approx(point_force(c, shear, 0.0, lone[0].theta, 0.0)).epsilon(1e-14));

    const auto pts = sample_path_midpoint(make_path(0.0, 0.30627736916966947, 0.3, 0.1), 2000);
    const double f_bar = average_force(c, shear, pts, 0.0);
    CHECK(f_bar < point_force(c, shear, 0.0, 0.30627736916966947, 0.0));

    CHECK_THROWS_AS(average_force(c, shear, {}, 0.0), std::invalid_argument);
}

TEST_CASE("span widening costs force at the benchmark rates") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;

    // Quintupling the azimuth span of a low eight.
    const double narrow =
        average_force(c, shear, sample_path_midpoint(make_path(0.0, 0.2, 0.1, 0.1), 2000), 0.0);
    const double wide =
        average_force(c, shear, sample_path_midpoint(make_path(0.0, 0.2, 0.5, 0.1), 2000), 0.0);
    const double phi_loss = (narrow - wide) / narrow;
    CHECK(phi_loss == doctest::Approx(0.112954).epsilon(1e-3));
    CHECK(phi_loss > 0.05);
    CHECK(phi_loss < 0.15);

    // Quintupling the elevation span of a mid-window eight.
    const double flat =
        average_force(c, shear, sample_path_midpoint(make_path(0.0, 0.6, 0.3, 0.1), 2000), 0.0);
    const double tall =
        average_force(c, shear, sample_path_midpoint(make_path(0.0, 0.6, 0.3, 0.5), 2000), 0.0);
    const double theta_loss = (flat - tall) / flat;
    CHECK(theta_loss == doctest::Approx(0.150609).epsilon(1e-3));
    CHECK(theta_loss > 0.10);
    CHECK(theta_loss < 0.20);
}

TEST_CASE("half forces split symmetrically only when aligned with the wind") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const PathParams p = make_path(0.0, 0.4, 0.3, 0.1);
    const auto pts = sample_path_midpoint(p, 2000);

    const auto aligned = half_forces(c, shear, pts, 0.0, p.phi_c);
    CHECK(aligned.n_left + aligned.n_right == 2000);
    CHECK(aligned.n_left == 1000);
    CHECK(aligned.left == doctest::Approx(aligned.right).epsilon(1e-12));

    // Center 0.2 rad beyond the wind: the outer (left) half is weaker.
    const auto offset = half_forces(c, shear, pts, -0.2, p.phi_c);
    CHECK(offset.left < offset.right);

    // Classifying against a azimuth left of every sample empties one half.
    CHECK_THROWS_AS(half_forces(c, shear, pts, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("force split vanishes when centered, flips sign with the offset") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const PathParams p = make_path(0.0, 0.4, 0.3, 0.1);
    const auto pts = sample_path_midpoint(p, 2000);

    CHECK(std::abs(delta_force(c, shear, pts, 0.0, p.phi_c)) < 1e-9);

    const double plus = delta_force(c, shear, pts, -0.3, p.phi_c);   // center 0.3 past the wind
    const double minus = delta_force(c, shear, pts, 0.3, p.phi_c);   // center 0.3 short of it
    CHECK(plus < 0.0);
    CHECK(minus > 0.0);
    CHECK(plus == doctest::Approx(-minus).epsilon(1e-6));
}

TEST_CASE("force split matches the closed-form pairing identity") {
    // For an unrotated eight sampled at midpoints, each sample at azimuth
    // offset +du pairs with one at -du and the same elevation, so
    //   dF = -c_big * sin(2 m) * mean over pairs of v(theta) * sin(2 du),
    // with m the center-to-wind offset.  The identity is exact.
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const PathParams p = make_path(0.15, 0.45, 0.25, 0.12);
    const auto pts = sample_path_midpoint(p, 2000);

    for (const double m : {0.05, 0.2, -0.35}) {
        const double phi_w = p.phi_c - m;
        double pair_mean = 0.0;
        int n_pairs = 0;
        for (const auto& q : pts) {
            const double du = q.phi - p.phi_c;
            if (du > 0.0) {
                pair_mean += v_factor(shear, c.r, q.theta) * std::sin(2.0 * du);
                ++n_pairs;
            }
        }
        pair_mean /= n_pairs;
        const double expect = -c.c_big * std::sin(2.0 * m) * pair_mean;
        CHECK(delta_force(c, shear, pts, phi_w, p.phi_c) ==
              doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("force split decreases strictly across the alignment range") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const PathParams p = make_path(0.0, 0.4, 0.3, 0.1);
    const auto pts = sample_path_midpoint(p, 2000);

    double prev = 1e300;
    for (double m = -std::numbers::pi / 4.0; m <= std::numbers::pi / 4.0 + 1e-12; m += 0.02) {
        const double df = delta_force(c, shear, pts, p.phi_c - m, p.phi_c);
        CHECK(df < prev);
        prev = df;
        if (std::abs(m) > 1e-9) {
            CHECK(df * m < 0.0);  // split always points back toward the wind
        }
    }
}

TEST_CASE("wider eights produce a stronger split at fixed misalignment") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;
    const double m = 0.3;
    double prev = 0.0;
    for (const double span : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        const auto pts = sample_path_midpoint(make_path(0.0, 0.4, span, 0.1), 2000);
        const double mag = std::abs(delta_force(c, shear, pts, -m, 0.0));
        CHECK(mag > prev);
        prev = mag;
    }
}

TEST_CASE("single-point optimum location") {
    ShearParams shear;
    const auto [phi_star, theta_star] = kitelab::optimal_location(shear, 0.2);
    CHECK(phi_star == doctest::Approx(0.2));
    CHECK(theta_star == doctest::Approx(0.30627736916966947).epsilon(1e-12));

    shear.alpha = 1.0;
    CHECK(kitelab::optimal_location(shear, 0.0).second ==
          doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
}

TEST_CASE("elevation force factor is unimodal with its peak at the closed form") {
    const ShearParams shear;
    const double r = 30.0;
    const double theta_star = std::atan(std::sqrt(shear.alpha));

    double best_theta = 0.0, best_v = -1.0;
    std::vector<double> values;
    for (double theta = 1e-3; theta < std::numbers::pi / 2.0 - 1e-3; theta += 1e-3) {
        const double v = v_factor(shear, r, theta);
        values.push_back(v);
        if (v > best_v) {
            best_v = v;
            best_theta = theta;
        }
    }
    CHECK(std::abs(best_theta - theta_star) <= 2e-3);

    // Rising branch, single turn, falling branch.
    std::size_t turn = 0;
    while (turn + 1 < values.size() && values[turn + 1] > values[turn]) ++turn;
    CHECK(turn > 0);
    for (std::size_t i = turn + 1; i < values.size(); ++i) {
        CHECK(values[i] < values[i - 1]);
    }
}

TEST_CASE("grid argmax of the path average agrees with the point optimum") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;

    double best_f = -1.0, best_m = 0.0, best_tc = 0.0;
    for (double m = -0.1; m <= 0.1 + 1e-12; m += 0.02) {
        for (double tc = 0.1; tc <= 0.6 + 1e-12; tc += 0.02) {
            const auto pts = sample_path_midpoint(make_path(m, tc, 0.04, 0.04), 64);
            const double f = average_force(c, shear, pts, 0.0);
            if (f > best_f) {
                best_f = f;
                best_m = m;
                best_tc = tc;
            }
        }
    }
    CHECK(std::abs(best_m) < 0.02 + 1e-9);
    CHECK(std::abs(best_tc - 0.30627736916966947) < 0.02 + 1e-9);
}

TEST_CASE("one-dimensional sweep tabulates the axis in order") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;

    SweepSpec spec;
    spec.base = make_path(0.0, 0.4, 0.3, 0.1);
    spec.phi_w = 0.0;
    spec.axis1 = SweepAxis{"phi_c", -0.5, 0.5, 21};
    spec.samples = 400;

    const auto rows = kitelab::sweep(c, shear, spec);
    REQUIRE(rows.size() == 21);
    for (int i = 0; i < 21; ++i) {
        CHECK(rows[i].v1 == doctest::Approx(-0.5 + 0.05 * i).epsilon(1e-12));
        CHECK(rows[i].v2 == 0.0);
    }

    // The average is even in the center offset, so the argmax sits at zero
    // and the split's zero crossing coincides with it.
    for (int i = 0; i < 10; ++i) {
        CHECK(rows[i].f_bar == doctest::Approx(rows[20 - i].f_bar).epsilon(1e-9));
    }
    int argmax = 0;
    int argmin_split = 0;
    for (int i = 1; i < 21; ++i) {
        if (rows[i].f_bar > rows[argmax].f_bar) argmax = i;
        if (std::abs(rows[i].delta_f) < std::abs(rows[argmin_split].delta_f)) argmin_split = i;
    }
    CHECK(argmax == 10);
    CHECK(argmin_split == 10);
}

TEST_CASE("two-dimensional sweep is row-major with the second axis inner") {
    const TractionConstants c = derive_constants(AeroParams{});
    const ShearParams shear;

    SweepSpec spec;
    spec.base = make_path(0.0, 0.4, 0.3, 0.1);
    spec.axis1 = SweepAxis{"phi_c", -0.2, 0.2, 11};
    spec.axis2 = SweepAxis{"theta_c", 0.2, 0.7, 11};
    spec.samples = 200;

    const auto rows = kitelab::sweep(c, shear, spec);
    REQUIRE(rows.size() == 121);
    for (int i = 0; i < 11; ++i) {
        for (int j = 0; j < 11; ++j) {
            const auto& row = rows[i * 11 + j];
            CHECK(row.v1 == doctest::Approx(-0.2 + 0.04 * i).epsilon(1e-12));
            CHECK(row.v2 == doctest::Approx(0.2 + 0.05 * j).epsilon(1e-12));
        }
    }

    SweepSpec lone = spec;
    lone.axis1.count = 1;
    lone.axis2->count = 1;
    const auto single = kitelab::sweep(c, shear, lone);
    REQUIRE(single.size() == 1);
    CHECK(single[0].v1 == doctest::Approx(-0.2));
    CHECK(single[0].v2 == doctest::Approx(0.2));
}

TEST_CASE("optimal elevation is invariant to the wind speed scale") {
    const TractionConstants c = derive_constants(AeroParams{});

    auto argmax_theta = [&](const ShearParams& shear) {
        double best_f = -1.0, best_tc = 0.0;
        for (double tc = 0.1; tc <= 0.8 + 1e-12; tc += 0.02) {
            const auto pts = sample_path_midpoint(make_path(0.0, tc, 0.2, 0.08), 200);
            const double f = average_force(c, shear, pts, 0.0);
            if (f > best_f) {
                best_f = f;
                best_tc = tc;
            }
        }
        return best_tc;
    };

    ShearParams weak;
    ShearParams strong;
    strong.w0 = 10.0;
    CHECK(argmax_theta(weak) == doctest::Approx(argmax_theta(strong)).epsilon(1e-12));
}
