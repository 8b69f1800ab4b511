#pragma once

// Planar geometry primitives: points as complex numbers, boundary curve
// segments with a canonical parameter t in [-1, 1], Moebius transformations,
// and circle reconstruction from point triples.

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <utility>

#include "conmod/specfun.hpp"

namespace conmod {

using Point = std::complex<double>;

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    double w = std::fmod(a, 2.0 * pi);
    return w < 0.0 ? w + 2.0 * pi : w;
}

// ---------------------------------------------------------------------------
// Boundary curve segments
//
// Every segment maps t in [-1, 1] to the plane.  Five kinds cover all the
// domains handled here: straight lines, circular arcs, the two parametric
// built-ins (sinusoidally shifted horizontals and radial "flower" curves),
// and straight reference-square segments pushed through a transfinite chart
// (used for interior cuts when subdividing curved elements).  All kinds are
// closed under subdivision, so refinement near curved boundaries keeps the
// exact geometry.

struct BlendChart;

struct CurveSegment {
    enum class Kind { line, arc, wave, polar, mapped };

    Kind kind = Kind::line;
    // line
    Point p0{0.0, 0.0}, p1{0.0, 0.0};
    // arc: z = center + radius * exp(i theta), theta from ang0 to ang1 (signed sweep)
    Point center{0.0, 0.0};
    double radius = 0.0, ang0 = 0.0, ang1 = 0.0;
    // wave: y = ybase + amp * sin(omega x), x from x0 to x1
    double x0 = 0.0, x1 = 0.0, ybase = 0.0, omega = 0.0;
    // polar: z = (rbase + amp cos(freq theta)) exp(i theta), theta from th0 to th1
    double rbase = 0.0, freq = 0.0, th0 = 0.0, th1 = 0.0;
    double amp = 0.0;  // shared by wave and polar
    // mapped: chart image of the reference-square segment from ra to rb
    std::shared_ptr<const BlendChart> chart;
    Point ra{0.0, 0.0}, rb{0.0, 0.0};

    static CurveSegment line_between(Point a, Point b) {
        CurveSegment s;
        s.kind = Kind::line;
        s.p0 = a;
        s.p1 = b;
        return s;
    }
    static CurveSegment circular_arc(Point c, double r, double a0, double a1) {
        if (!(r > 0.0)) throw std::domain_error("circular_arc: radius must be positive");
        CurveSegment s;
        s.kind = Kind::arc;
        s.center = c;
        s.radius = r;
        s.ang0 = a0;
        s.ang1 = a1;
        return s;
    }
    static CurveSegment sine_wave(double xa, double xb, double base, double amplitude,
                                  double angular_freq) {
        CurveSegment s;
        s.kind = Kind::wave;
        s.x0 = xa;
        s.x1 = xb;
        s.ybase = base;
        s.amp = amplitude;
        s.omega = angular_freq;
        return s;
    }
    static CurveSegment polar_curve(double base, double amplitude, double frequency,
                                    double a0, double a1) {
        CurveSegment s;
        s.kind = Kind::polar;
        s.rbase = base;
        s.amp = amplitude;
        s.freq = frequency;
        s.th0 = a0;
        s.th1 = a1;
        return s;
    }
    static CurveSegment mapped_segment(std::shared_ptr<const BlendChart> ch, Point a, Point b) {
        if (!ch) throw std::invalid_argument("mapped_segment: null chart");
        CurveSegment s;
        s.kind = Kind::mapped;
        s.chart = std::move(ch);
        s.ra = a;
        s.rb = b;
        return s;
    }

    bool is_line() const { return kind == Kind::line; }

    Point eval(double t) const;
    Point deriv(double t) const;

    Point start() const { return eval(-1.0); }
    Point end() const { return eval(1.0); }

    // Same geometric locus restricted to canonical parameters [ta, tb]
    // (tb < ta reverses the direction).  Stays within the same kind.
    CurveSegment subsegment(double ta, double tb) const {
        auto native = [](double a, double b, double t) {
            return 0.5 * (1.0 - t) * a + 0.5 * (1.0 + t) * b;
        };
        auto blend = [&](Point a, Point b, double t) -> Point {
            return {native(a.real(), b.real(), t), native(a.imag(), b.imag(), t)};
        };
        CurveSegment s = *this;
        switch (kind) {
            case Kind::line:
                s.p0 = eval(ta);
                s.p1 = eval(tb);
                break;
            case Kind::arc:
                s.ang0 = native(ang0, ang1, ta);
                s.ang1 = native(ang0, ang1, tb);
                break;
            case Kind::wave:
                s.x0 = native(x0, x1, ta);
                s.x1 = native(x0, x1, tb);
                break;
            case Kind::polar:
                s.th0 = native(th0, th1, ta);
                s.th1 = native(th0, th1, tb);
                break;
            case Kind::mapped:
                s.ra = blend(ra, rb, ta);
                s.rb = blend(ra, rb, tb);
                break;
        }
        return s;
    }

    CurveSegment reversed() const { return subsegment(1.0, -1.0); }

    std::pair<CurveSegment, CurveSegment> split(double t) const {
        return {subsegment(-1.0, t), subsegment(t, 1.0)};
    }
};

// ---------------------------------------------------------------------------
// Transfinite (Gordon-Hall) chart over one curved quadrilateral
//
// Interpolates four boundary curves stored cyclically: side k runs from
// corner k to corner k+1, so the top and left sides are traversed against
// the reference coordinate and are evaluated at negated parameters.  A chart
// lets interior subdivision curves of a curved quadrilateral be carried as
// exact images of straight reference-square segments, which keeps the pieces
// inside the original image no matter how strongly the boundary bends.

struct BlendChart {
    std::array<Point, 4> p{};          // corner points
    std::array<CurveSegment, 4> side;  // side k: corner k -> corner k+1

    void eval(double xi, double eta, Point* x, Point* dxi_out, Point* deta_out) const {
        const Point p0 = p[0], p1 = p[1], p2 = p[2], p3 = p[3];
        Point b = side[0].eval(xi), r = side[1].eval(eta);
        Point t = side[2].eval(-xi), l = side[3].eval(-eta);
        if (x) {
            Point blend =
                0.5 * ((1.0 - eta) * b + (1.0 + xi) * r + (1.0 + eta) * t + (1.0 - xi) * l);
            Point corner = 0.25 * ((1.0 - xi) * (1.0 - eta) * p0 + (1.0 + xi) * (1.0 - eta) * p1 +
                                   (1.0 + xi) * (1.0 + eta) * p2 + (1.0 - xi) * (1.0 + eta) * p3);
            *x = blend - corner;
        }
        if (dxi_out || deta_out) {
            Point db = side[0].deriv(xi), dr = side[1].deriv(eta);
            Point dt = -side[2].deriv(-xi), dl = -side[3].deriv(-eta);
            if (dxi_out)
                *dxi_out = 0.5 * ((1.0 - eta) * db + r + (1.0 + eta) * dt - l) -
                           0.25 * ((1.0 - eta) * (p1 - p0) + (1.0 + eta) * (p2 - p3));
            if (deta_out)
                *deta_out = 0.5 * (-b + (1.0 + xi) * dr + t + (1.0 - xi) * dl) -
                            0.25 * ((1.0 - xi) * (p3 - p0) + (1.0 + xi) * (p2 - p1));
        }
    }
};

inline Point CurveSegment::eval(double t) const {
    double lo = 0.5 * (1.0 - t), hi = 0.5 * (1.0 + t);
    switch (kind) {
        case Kind::line:
            return lo * p0 + hi * p1;
        case Kind::arc: {
            double th = lo * ang0 + hi * ang1;
            return center + radius * Point{std::cos(th), std::sin(th)};
        }
        case Kind::wave: {
            double x = lo * x0 + hi * x1;
            return {x, ybase + amp * std::sin(omega * x)};
        }
        case Kind::polar: {
            double th = lo * th0 + hi * th1;
            double r = rbase + amp * std::cos(freq * th);
            return r * Point{std::cos(th), std::sin(th)};
        }
        case Kind::mapped: {
            Point ref = lo * ra + hi * rb, x;
            chart->eval(ref.real(), ref.imag(), &x, nullptr, nullptr);
            return x;
        }
    }
    throw std::logic_error("CurveSegment::eval: bad kind");
}

inline Point CurveSegment::deriv(double t) const {
    double lo = 0.5 * (1.0 - t), hi = 0.5 * (1.0 + t);
    switch (kind) {
        case Kind::line:
            return 0.5 * (p1 - p0);
        case Kind::arc: {
            double th = lo * ang0 + hi * ang1;
            double dth = 0.5 * (ang1 - ang0);
            return radius * dth * Point{-std::sin(th), std::cos(th)};
        }
        case Kind::wave: {
            double x = lo * x0 + hi * x1;
            double dx = 0.5 * (x1 - x0);
            return {dx, amp * omega * std::cos(omega * x) * dx};
        }
        case Kind::polar: {
            double th = lo * th0 + hi * th1;
            double dth = 0.5 * (th1 - th0);
            double r = rbase + amp * std::cos(freq * th);
            double dr = -amp * freq * std::sin(freq * th);
            Point e{std::cos(th), std::sin(th)};
            return dth * (dr * e + r * Point{-e.imag(), e.real()});
        }
        case Kind::mapped: {
            Point ref = lo * ra + hi * rb, dxi, deta;
            chart->eval(ref.real(), ref.imag(), nullptr, &dxi, &deta);
            Point dref = 0.5 * (rb - ra);
            return dref.real() * dxi + dref.imag() * deta;
        }
    }
    throw std::logic_error("CurveSegment::deriv: bad kind");
}

// ---------------------------------------------------------------------------
// Moebius transformations z -> (a z + b) / (c z + d)

struct Mobius {
    std::complex<double> a{1.0}, b{0.0}, c{0.0}, d{1.0};

    std::complex<double> apply(std::complex<double> z) const { return (a * z + b) / (c * z + d); }

    Mobius inverse() const { return Mobius{d, -b, -c, a}; }

    Mobius compose(const Mobius& rhs) const {  // this after rhs
        return Mobius{a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                      c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
    }

    // The unique map sending (z1, z2, z3) to (0, 1, infinity).
    static Mobius to_zero_one_inf(std::complex<double> z1, std::complex<double> z2,
                                  std::complex<double> z3) {
        return Mobius{z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
    }

    // The unique map with z_k -> w_k for three distinct point pairs.
    static Mobius through(std::complex<double> z1, std::complex<double> z2,
                          std::complex<double> z3, std::complex<double> w1,
                          std::complex<double> w2, std::complex<double> w3) {
        return to_zero_one_inf(w1, w2, w3).inverse().compose(to_zero_one_inf(z1, z2, z3));
    }
};

// ---------------------------------------------------------------------------
// Circle through three points

// Builds the segment from p0 to p1 passing through pm: a circular arc, or a
// straight line when the triple is (nearly) collinear.
inline CurveSegment segment_through(Point p0, Point pm, Point p1) {
    Point u = pm - p0, v = p1 - p0;
    double span = std::max({std::abs(u), std::abs(v), std::abs(p1 - pm)});
    double cr = cross(u, v);
    if (std::abs(cr) <= 1e-12 * span * span) return CurveSegment::line_between(p0, p1);
    // Circumcenter from the perpendicular-bisector linear system.
    double d = 2.0 * cr;
    double u2 = std::norm(u), v2 = std::norm(v);
    Point c = p0 + Point{(v.imag() * u2 - u.imag() * v2) / d,
                         (u.real() * v2 - v.real() * u2) / d};
    double r = std::abs(p0 - c);
    double a0 = std::arg(p0 - c), am = std::arg(pm - c), a1 = std::arg(p1 - c);
    // Choose the sweep direction that passes through the midpoint sample.
    double ccw = wrap_angle(a1 - a0);
    double sm = wrap_angle(am - a0);
    double sweep = (sm <= ccw) ? ccw : ccw - 2.0 * pi;
    return CurveSegment::circular_arc(c, r, a0, a0 + sweep);
}

}  // namespace conmod
