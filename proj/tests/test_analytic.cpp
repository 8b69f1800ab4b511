// Closed-form module tests: frozen reference tables, classical identities,
// and cross-checks between independent formulas.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "conmod/analytic.hpp"

using namespace conmod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
Point unit(double ang) { return {std::cos(ang), std::sin(ang)}; }
}  // namespace

TEST_CASE("absolute ratio is Moebius invariant", "[analytic][props]") {
    CHECK_THAT(absolute_ratio({0, 0}, {1, 0}, {2, 0}, {3, 0}), WithinRel(4.0, 1e-15));
    Mobius w{{2.0, 1.0}, {1.0, -0.5}, {1.0, 0.0}, {3.0, 0.2}};
    const Point pts[4] = {{0.3, 1.2}, {-1.0, 0.4}, {2.0, -0.7}, {0.9, 0.05}};
    double before = absolute_ratio(pts[0], pts[1], pts[2], pts[3]);
    double after = absolute_ratio(w.apply(pts[0]), w.apply(pts[1]), w.apply(pts[2]), w.apply(pts[3]));
    CHECK_THAT(after, WithinRel(before, 1e-12));
    CHECK_THROWS_AS(absolute_ratio({0, 0}, {0, 0}, {1, 0}, {2, 0}), std::domain_error);
}

TEST_CASE("parallelogram modulus degenerates to rectangles", "[analytic]") {
    for (double h : {0.5, 1.0, 2.0}) {
        CHECK_THAT(parallelogram_modulus(0.5 * pi, h), WithinRel(h, 1e-12));
    }
    // Strictly increasing in the height parameter.
    CHECK(parallelogram_modulus(pi / 3, 0.8) < parallelogram_modulus(pi / 3, 1.1));
    CHECK_THROWS_AS(parallelogram_modulus(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(parallelogram_modulus(pi / 3, 0.0), std::domain_error);
}

TEST_CASE("square frame trapezoid modulus", "[analytic]") {
    // Asymptotics M(h) = h - 1/2 - log(2)/pi + O(e^{-pi h}).
    double c = -0.5 - std::log(2.0) / pi;
    CHECK_THAT(square_frame_modulus(3.0), WithinAbs(3.0 + c, 1e-4));
    CHECK_THAT(square_frame_modulus(4.0), WithinAbs(4.0 + c, 5e-6));
    for (double h : {1.2, 1.5, 2.0, 3.0}) {
        double m = square_frame_modulus(h);
        CHECK(m > h - 1.0);
        CHECK(m < h);
    }
    CHECK_THROWS_AS(square_frame_modulus(1.0), std::domain_error);
}

TEST_CASE("square-in-square capacities match the frozen table", "[analytic]") {
    const struct {
        double a, cap;
    } rows[] = {
        {0.1, 2.83977741905223},   {0.2, 4.134487024234081},  {0.3, 5.632828000941654},
        {0.4, 7.5615315398105745}, {0.5, 10.23409256936805},  {0.6, 14.234879675824363},
        {0.7, 20.901581676413954}, {0.8, 34.23491519877346},  {0.9, 74.23491519877882},
    };
    for (const auto& row : rows) {
        CHECK_THAT(square_in_square_capacity(row.a), WithinRel(row.cap, 1e-11));
    }
    CHECK_THROWS_AS(square_in_square_capacity(1.0), std::domain_error);
}

TEST_CASE("hypergeometric quadrilateral formula on squares and rectangles", "[analytic]") {
    CHECK_THAT(hvv_quad_modulus({1.0, 1.0}, {0.0, 1.0}), WithinAbs(1.0, 1e-10));
    for (double h : {0.5, 1.0, 2.0}) {
        CHECK_THAT(hvv_quad_modulus({1.0, h}, {0.0, h}), WithinRel(h, 1e-10));
    }
}

TEST_CASE("hypergeometric quadrilateral formula cross-checks parallelograms", "[analytic]") {
    for (double t : {pi / 3, 2 * pi / 5}) {
        for (double h : {0.8, 1.3}) {
            std::complex<double> e{std::cos(t), std::sin(t)};
            std::complex<double> B = h * e, A = 1.0 + h * e;
            CHECK_THAT(hvv_quad_modulus(A, B), WithinRel(parallelogram_modulus(t, h), 1e-10));
        }
    }
}

TEST_CASE("hypergeometric quadrilateral formula satisfies the reciprocal identity",
          "[analytic][props]") {
    // QM(a,b,0,1) * QM((b-1)/(a-1), 1/(1-a), 0, 1) = 1 for convex specs.
    for (double ax : {0.8, 1.1, 1.4}) {
        for (double ay : {0.6, 1.0}) {
            std::complex<double> a{ax, ay}, b{-0.2, 1.2};
            double m1 = hvv_quad_modulus(a, b);
            double m2 = hvv_quad_modulus((b - 1.0) / (a - 1.0), 1.0 / (1.0 - a));
            CHECK_THAT(m1 * m2, WithinAbs(1.0, 1e-9));
        }
    }
    // Non-convex input is rejected rather than mis-evaluated.
    CHECK_THROWS_AS(hvv_quad_modulus({0.5, 0.2}, {-0.2, 1.2}), std::domain_error);
}

TEST_CASE("circular quadrilateral moduli match the frozen tables", "[analytic]") {
    // Angles are integer multiples of pi/24; references hold to ~1e-13.
    const struct {
        int m, n, r;
        double type_a, type_b;
    } rows[] = {
        {2, 10, 12, 0.7071508111121534, 0.5389714947317054},
        {2, 10, 14, 0.8074514311467651, 0.5953434982171909},
        {4, 12, 18, 1.0383251171675787, 0.7121629047455362},
        {6, 16, 24, 1.170060906774661, 0.7718690862645192},
        {8, 22, 32, 1.313262425617007, 0.8319009599091923},
    };
    for (const auto& row : rows) {
        double a = row.m * pi / 24, b = row.n * pi / 24, c = row.r * pi / 24;
        CHECK_THAT(circular_quad_type_a(a, b, c), WithinAbs(row.type_a, 1e-12));
        CHECK_THAT(circular_quad_type_b(a, b, c), WithinAbs(row.type_b, 1e-12));
    }
    CHECK_THROWS_AS(circular_quad_type_a(1.0, 0.5, 2.0), std::domain_error);
}

TEST_CASE("circular quadrilateral moduli depend only on the absolute ratio",
          "[analytic][props]") {
    const int triples[][3] = {{2, 10, 12}, {4, 12, 18}, {8, 22, 32}};
    for (const auto& tr : triples) {
        double a = tr[0] * pi / 24, b = tr[1] * pi / 24, c = tr[2] * pi / 24;
        // The symmetric configuration (2 phi, pi, pi + 2 phi) with
        // phi = asin(1/sqrt u) has the same absolute ratio u = 1/sin^2 phi,
        // hence the same modulus, for both arc types.
        double u = absolute_ratio({1.0, 0.0}, unit(a), unit(b), unit(c));
        double phi = std::asin(1.0 / std::sqrt(u));
        CHECK_THAT(circular_quad_type_a(2 * phi, pi, pi + 2 * phi),
                   WithinRel(circular_quad_type_a(a, b, c), 1e-12));
        CHECK_THAT(circular_quad_type_b(2 * phi, pi, pi + 2 * phi),
                   WithinRel(circular_quad_type_b(a, b, c), 1e-12));
        // Rotating the four marked points of the disk quadrilateral by one
        // position (a Q_B again, with angles (b-a, c-a, 2pi-a)) inverts the
        // modulus.
        CHECK_THAT(circular_quad_type_b(a, b, c) * circular_quad_type_b(b - a, c - a, 2 * pi - a),
                   WithinAbs(1.0, 1e-12));
    }
    // Consistency of the absolute ratio with the trigonometric shortcut.
    double a = 5 * pi / 24, b = 13 * pi / 24, c = 40 * pi / 24;
    double u_points = absolute_ratio(unit(0.0), unit(a), unit(b), unit(c));
    double u_trig = std::sin(b / 2) * std::sin((c - a) / 2) /
                    (std::sin(a / 2) * std::sin((c - b) / 2));
    CHECK_THAT(u_points, WithinRel(u_trig, 1e-13));
}
