#pragma once

// Closed-form moduli and capacities used as references for the hp solver:
// parallelograms, the square-frame trapezoid, square-in-square rings, the
// hypergeometric quadrilateral formula for convex polygonal quadrilaterals,
// and circular-arc quadrilaterals on the unit disk.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "conmod/geometry.hpp"
#include "conmod/specfun.hpp"

namespace conmod {

// |a,b,c,d| = |a-c||b-d| / (|a-b||c-d|); Moebius invariant.
inline double absolute_ratio(Point a, Point b, Point c, Point d) {
    double num = std::abs(a - c) * std::abs(b - d);
    double den = std::abs(a - b) * std::abs(c - d);
    if (den == 0.0) throw std::domain_error("absolute_ratio: coincident points");
    return num / den;
}

// Modulus of the parallelogram (1 + h e^{it}, h e^{it}, 0, 1):
// K(r')/K(r) with r = mu_{t/pi}^{-1}( pi h / (2 sin t) ).
inline double parallelogram_modulus(double t, double h) {
    if (!(t > 0.0) || !(t < pi)) throw std::domain_error("parallelogram_modulus: need 0 < t < pi");
    if (!(h > 0.0)) throw std::domain_error("parallelogram_modulus: need h > 0");
    double a = t / pi;
    double r = mu_inverse(a, pi * h / (2.0 * std::sin(t)));
    EllipticPair e = elliptic_k(r);
    return e.k_prime / e.k;
}

// Modulus of the trapezoid (1 + hi, (h-1)i, 0, 1), h > 1 -- one eighth of a
// square frame.  M(h) = K(r)/K(r') with
// r = ((t1 - t2)/(t1 + t2))^2, t1 = mu^{-1}(pi/(2c)), t2 = mu^{-1}(pi c/2),
// c = 2h - 1; asymptotically M(h) = h - 1/2 - log(2)/pi + O(e^{-pi h}).
inline double square_frame_modulus(double h) {
    if (!(h > 1.0)) throw std::domain_error("square_frame_modulus: need h > 1");
    double c = 2.0 * h - 1.0;
    double t1 = mu_inverse(0.5, pi / (2.0 * c));
    double t2 = mu_inverse(0.5, pi * c / 2.0);
    double r = (t1 - t2) / (t1 + t2);
    r = r * r;
    EllipticPair e = elliptic_k(r);
    return e.k / e.k_prime;
}

// Capacity of the ring with plates [-a,a]^2 (inner) and the complement of
// (-1,1)^2 (outer): with c = (1-a)/(1+a),
// u = mu^{-1}(pi c / 2), v = mu^{-1}(pi/(2c)), r = ((u-v)/(u+v))^2,
// the capacity is 4 pi / mu_{1/2}(r).
inline double square_in_square_capacity(double a) {
    if (!(a > 0.0) || !(a < 1.0)) throw std::domain_error("square_in_square_capacity: need 0 < a < 1");
    double c = (1.0 - a) / (1.0 + a);
    double u = mu_inverse(0.5, pi * c / 2.0);
    double v = mu_inverse(0.5, pi / (2.0 * c));
    double d = (u - v) / (u + v);
    double r = d * d;
    if (r == 0.0) return 0.0;  // inner plate degenerates to a point
    if (r * r < 0.5) return 4.0 * pi / mu(0.5, r);
    // As a -> 1, r approaches 1 faster than doubles resolve; switch to the
    // conjugate identity mu(r) = (pi^2/4) / mu(r') with
    // r'^2 = (1 - r)(1 + r) and 1 - r = 4uv/(u+v)^2, all products.
    double rp = 2.0 * std::sqrt(u * v * (1.0 + r)) / (u + v);
    return 16.0 * mu(0.5, rp) / pi;
}

// ---------------------------------------------------------------------------
// Convex polygonal quadrilateral (A, B, 0, 1) via the hypergeometric formula
//
// With interior angles b pi, (c-b) pi, (1-a) pi, (1+a-c) pi at 0, 1, A, B the
// modulus is K(r')/K(r) where r solves
//   A - 1 = L r'^{2(c-a-b)} F(c-a, c-b; c+1-a-b; r'^2) / F(a, b; c; r^2),
//   L = B(c-b, 1-a)/B(b, c-b) * e^{(b+1-c) i pi}.
// The right-hand side is strictly decreasing in r, so the magnitude equation
// is solved by bisection; the phase is a consistency check.

namespace detail {

// Interior angle in (0, 2 pi) at vertex v of a positively oriented polygon.
inline double interior_angle(Point prev, Point v, Point next) {
    double ang = wrap_angle(std::arg((prev - v) / (next - v)));
    if (ang == 0.0) throw std::domain_error("interior_angle: degenerate corner");
    return ang;
}

inline double hvv_f(double a, double b, double c, double z) {
    // Internal series evaluation with a raised term cap: the bisection
    // brackets keep z away from 1 far enough for plain summation.
    double s = hyp_series(a, b, c, z, 1e-15, 400000);
    if (std::isnan(s))
        throw std::runtime_error("hvv_quad_modulus: hypergeometric series exhausted at z=" +
                                 std::to_string(z));
    return s;
}

// Solve the normalized problem for (A, B, 0, 1) with angle parameters
// (a, b, c) already inside the theorem range.
inline double hvv_solve(Point A, double a, double b, double c) {
    std::complex<double> L = beta_function(c - b, 1.0 - a) / beta_function(b, c - b) *
                             std::exp(std::complex<double>(0.0, (b + 1.0 - c) * pi));
    std::complex<double> target = A - Point{1.0, 0.0};
    // Phase consistency: the r-dependent factors below are real and positive.
    double dphase = std::remainder(std::arg(target) - std::arg(L), 2.0 * pi);
    if (std::abs(dphase) > 1e-8)
        throw std::runtime_error("hvv_quad_modulus: phase mismatch " + std::to_string(dphase));
    double tgt = std::abs(target);

    auto rhs = [&](double r) {
        double r2 = r * r, rp2 = 1.0 - r * r;
        return std::abs(L) * std::pow(rp2, c - a - b) *
               hvv_f(c - a, c - b, c + 1.0 - a - b, rp2) /
               hvv_f(a, b, c, r2);
    };

    // Brackets keep both series arguments r^2 and r'^2 below 1 - 2.5e-4.
    double lo = 1.6e-2, hi = std::sqrt(1.0 - 2.5e-4);
    double flo = rhs(lo), fhi = rhs(hi);
    if (!(tgt <= flo && tgt >= fhi))
        throw std::runtime_error("hvv_quad_modulus: magnitude outside solvable bracket");
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 120; ++it) {
        r = 0.5 * (lo + hi);
        double fr = rhs(r);
        if (std::abs(fr - tgt) <= 1e-12 * tgt || hi - lo <= 1e-16) break;
        if (fr > tgt) lo = r; else hi = r;
    }
    EllipticPair e = elliptic_k(r);
    return e.k_prime / e.k;
}

}  // namespace detail

inline double hvv_quad_modulus(std::complex<double> A, std::complex<double> B) {
    const Point zero{0.0, 0.0}, one{1.0, 0.0};
    // Quadrilateral (A, B, 0, 1): the boundary polygon cycle is A->B->0->1.
    const std::array<Point, 4> z{A, B, zero, one};
    std::array<double, 4> alpha{};  // interior angle / pi at z[i]
    for (int i = 0; i < 4; ++i)
        alpha[i] = detail::interior_angle(z[(i + 3) & 3], z[i], z[(i + 1) & 3]) / pi;
    if (std::abs(alpha[0] + alpha[1] + alpha[2] + alpha[3] - 2.0) > 1e-9 ||
        !(alpha[0] < 1.0 && alpha[1] < 1.0 && alpha[2] < 1.0 && alpha[3] < 1.0))
        throw std::domain_error("hvv_quad_modulus: quadrilateral must be convex and positively oriented");
    // The theorem range c >= max(a+b, 1), c <= 1 + min(a, b) reduces to the
    // two adjacent angle sums alpha[2]+alpha[3] >= 1 and alpha[3]+alpha[0] >= 1.
    // Opposite adjacent-pair sums add to 2, so some cyclic relabeling always
    // qualifies.  Even rotations preserve the modulus; odd rotations yield
    // the conjugate quadrilateral, i.e. the reciprocal modulus.
    for (int k = 0; k < 4; ++k) {
        double b = alpha[(2 + k) & 3];
        double c = b + alpha[(3 + k) & 3];
        double a = 1.0 - alpha[k];
        if (c < std::max(a + b, 1.0) - 1e-12 || c > 1.0 + std::min(a, b) + 1e-12) continue;
        Point p = z[(2 + k) & 3], q = z[(3 + k) & 3];
        double m = detail::hvv_solve((z[k] - p) / (q - p), a, b, c);
        return (k & 1) ? 1.0 / m : m;
    }
    throw std::domain_error("hvv_quad_modulus: no labeling inside the theorem range");
}

// ---------------------------------------------------------------------------
// Circular-arc quadrilaterals on the unit circle
//
// Marked points (e^{ia}, e^{ib}, e^{ic}, 1) with 0 < a < b < c < 2 pi share
// the absolute ratio u = sin(b/2) sin((c-a)/2) / (sin(a/2) sin((c-b)/2)).

namespace detail {

inline double circular_quad_u(double a, double b, double c) {
    if (!(0.0 < a && a < b && b < c && c < 2.0 * pi))
        throw std::domain_error("circular quadrilateral: need 0 < a < b < c < 2 pi");
    double u = std::sin(b / 2) * std::sin((c - a) / 2) /
               (std::sin(a / 2) * std::sin((c - b) / 2));
    if (!(u > 1.0)) throw std::domain_error("circular quadrilateral: absolute ratio must exceed 1");
    return u;
}

}  // namespace detail

// Type A: sides are arcs of circles orthogonal to the unit circle (all
// interior angles pi/2); conformally a half-annulus, modulus pi / log t.
inline double circular_quad_type_a(double a, double b, double c) {
    double u = detail::circular_quad_u(a, b, c);
    double t = 2.0 * u - 1.0 + 2.0 * std::sqrt(u * (u - 1.0));
    return pi / std::log(t);
}

// Type B: the quadrilateral is the whole disk with four marked boundary
// points (all interior angles pi); modulus tau(u - 1) / 2.
inline double circular_quad_type_b(double a, double b, double c) {
    double u = detail::circular_quad_u(a, b, c);
    return 0.5 * tau(u - 1.0);
}

}  // namespace conmod
