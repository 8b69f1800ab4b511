#pragma once

// Batch harness: named domain presets, the corner-grading policy, quadrilateral
// and ring drivers producing RunReports, the convex-quadrilateral sweep, flower
// cases, convergence studies, and frozen reference tables for `validate`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "conmod/analytic.hpp"
#include "conmod/domain.hpp"
#include "conmod/fem.hpp"
#include "conmod/mesh.hpp"
#include "conmod/mesh_templates.hpp"
#include "conmod/report.hpp"

namespace conmod {

struct GradingParams {
    int p = 12;
    double alpha = 0.15;
    int nu = 12;
};

inline void validate_params(const GradingParams& g) {
    if (g.p < 1) throw std::invalid_argument("degree p must be >= 1");
    if (!(g.alpha > 0.0 && g.alpha < 1.0))
        throw std::invalid_argument("scaling factor alpha must be in (0, 1)");
    if (g.nu < 0) throw std::invalid_argument("nesting level nu must be >= 0");
}

// ---------------------------------------------------------------------------
// Grading policy
//
// A boundary wedge of interior angle theta is resolved by polynomials alone
// exactly when every local singular exponent is an integer: pi/theta must be
// an integer when both incident arcs carry the same condition type, and
// pi/(2 theta) must be an integer where a Dirichlet arc meets a Neumann arc
// (exponents (k + 1/2) pi / theta).  Every other wedge gets geometric grading.

namespace detail {

inline bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9 && x > 0.5; }

inline bool wedge_needs_grading(double theta, bool mixed) {
    return mixed ? !near_integer(pi / (2.0 * theta)) : !near_integer(pi / theta);
}

inline double junction_angle(const std::vector<CurveSegment>& cycle, std::size_t j) {
    const std::size_t n = cycle.size();
    Point din = cycle[(j + n - 1) % n].deriv(1.0), dout = cycle[j].deriv(-1.0);
    return wrap_angle(std::arg(-din / dout));
}

}  // namespace detail

// Grading targets of a quadrilateral problem: every outer junction whose wedge
// is singular under the local boundary-condition pattern.  Junction j is a
// Dirichlet-Neumann transition exactly when it coincides with a marked point;
// arcs between marked points alternate Dirichlet / Neumann whole.
inline std::vector<int> grading_targets(const QuadrilateralProblem& q, const Mesh& mesh) {
    const std::vector<CurveSegment>& cyc = q.domain.outer;
    const double tol = 1e-9 * std::max(1.0, detail::cycle_diameter(cyc));
    std::vector<int> targets;
    for (std::size_t j = 0; j < cyc.size(); ++j) {
        Point z = cyc[j].start();
        bool marked = false;
        for (const Point& m : q.marked) marked = marked || std::abs(z - m) <= tol;
        double theta = detail::junction_angle(cyc, j);
        if (!detail::wedge_needs_grading(theta, marked)) continue;
        int vid = mesh.find_vertex(z, tol);
        if (vid < 0)
            throw std::invalid_argument("grading policy: boundary junction is not a mesh vertex");
        targets.push_back(vid);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

// ---------------------------------------------------------------------------
// Case descriptions

struct QuadCase {
    std::string name;
    QuadrilateralProblem problem;
    Mesh base;
    std::vector<Point> extra_targets;  // forced grading corners beyond the angle policy
    std::optional<double> reference;
    std::optional<double> tolerance;
    bool certified = true;
};

// Ring cases reduce either to a whole two-boundary problem or, for presets
// with 4-fold symmetry, to one quarter with natural symmetry cuts whose
// energy is scaled by 4.
struct RingCase {
    std::string name;
    Mesh base;
    std::vector<Point> targets;               // corners to grade
    std::vector<DirichletChain> chains;       // plate values (quarter or full)
    double multiplier = 1.0;                  // 4 for quarter solves
    std::optional<double> reference;
    std::optional<double> tolerance;
};

// ---------------------------------------------------------------------------
// Quadrilateral presets

inline QuadCase quad_square() {
    QuadCase c;
    c.name = "square";
    Mesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    Element el;
    el.v = {0, 1, 2, 3};
    m.elements.push_back(el);
    m.finalize();
    c.base = std::move(m);
    c.problem.domain.outer = {CurveSegment::line_between({0, 0}, {1, 0}),
                              CurveSegment::line_between({1, 0}, {1, 1}),
                              CurveSegment::line_between({1, 1}, {0, 1}),
                              CurveSegment::line_between({0, 1}, {0, 0})};
    c.problem.marked = {Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{0, 0}};
    c.reference = 1.0;
    c.tolerance = 1e-12;
    return c;
}

// Rectangle (1 + ih, ih, 0, 1): modulus h exactly.
inline QuadCase quad_rectangle(double h) {
    if (!(h > 0.0)) throw std::invalid_argument("rectangle: height must be positive");
    QuadCase c;
    std::ostringstream nm;
    nm << "rectangle h=" << h;
    c.name = nm.str();
    Mesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, h}, {0.0, h}};
    Element el;
    el.v = {0, 1, 2, 3};
    m.elements.push_back(el);
    m.finalize();
    c.base = std::move(m);
    c.problem.domain.outer = {CurveSegment::line_between({0, 0}, {1, 0}),
                              CurveSegment::line_between({1, 0}, {1, h}),
                              CurveSegment::line_between({1, h}, {0, h}),
                              CurveSegment::line_between({0, h}, {0, 0})};
    c.problem.marked = {Point{1, h}, Point{0, h}, Point{0, 0}, Point{1, 0}};
    c.reference = h;
    c.tolerance = 1e-12;
    return c;
}

// L-shaped hexagon with vertices z1..z6 = (0,0),(3,0),(3,1),(2,1),(2,2),(0,2)
// and marked corners (z2, z4, z6, z1); integer coordinates admit the plain
// unit-square grid as the minimal mesh.
inline QuadCase quad_lshape63() {
    QuadCase c;
    c.name = "l-shape-6.3";
    std::vector<Point> z = {{0, 0}, {3, 0}, {3, 1}, {2, 1}, {2, 2}, {0, 2}};
    c.base = grid_mesh({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 2.0},
                       [](double x, double y) { return !(x > 2.0 && y > 1.0); });
    for (std::size_t i = 0; i < z.size(); ++i)
        c.problem.domain.outer.push_back(CurveSegment::line_between(z[i], z[(i + 1) % z.size()]));
    c.problem.marked = {z[1], z[3], z[5], z[0]};
    c.reference = 1.5081540958548603;
    c.tolerance = 1e-9;
    return c;
}

inline QuadCase quad_wave() {
    QuadCase c;
    c.name = "wave";
    c.base = wave_mesh();
    c.problem.domain = wave_domain();
    c.problem.marked = {Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{0, 0}};
    c.reference = 1.285385932609546;
    c.tolerance = 1e-9;
    return c;
}

// Convex (or mildly non-convex) polygonal quadrilateral (a, b, 0, 1).
// A strictly convex quadrilateral is its own best base mesh: the bilinear
// map is valid exactly when all corner turns are positive, and a 2x2 split
// leaves each corner in its own element for grading.  The corner-fan
// triangulation stays as the fallback for non-convex positions; its skewed
// interior elements carry a visibly larger p-convergence constant.
inline QuadCase quad_convex(Point a, Point b) {
    QuadCase c;
    std::ostringstream nm;
    nm << "quad a=(" << a.real() << "," << a.imag() << ") b=(" << b.real() << "," << b.imag()
       << ")";
    c.name = nm.str();
    std::vector<Point> z = {a, b, {0.0, 0.0}, {1.0, 0.0}};
    double min_turn = 1e300, scale2 = 0.0;
    for (int k = 0; k < 4; ++k) {
        Point e1 = z[(k + 1) % 4] - z[k], e2 = z[(k + 2) % 4] - z[(k + 1) % 4];
        min_turn = std::min(min_turn, cross(e1, e2));
        scale2 = std::max(scale2, std::norm(e1));
    }
    if (min_turn > 1e-6 * scale2) {
        Mesh m;
        for (const Point& p : z) m.add_vertex(p);
        std::array<int, 4> mid{};
        for (int k = 0; k < 4; ++k) mid[k] = m.add_vertex(0.5 * (z[k] + z[(k + 1) % 4]));
        int ctr = m.add_vertex(0.25 * (z[0] + z[1] + z[2] + z[3]));
        for (int k = 0; k < 4; ++k) {
            Element el;
            el.v = {k, mid[k], ctr, mid[(k + 3) % 4]};
            m.elements.push_back(el);
        }
        m.finalize();
        c.base = std::move(m);
    } else {
        c.base = polygon_mesh(z);
    }
    for (std::size_t i = 0; i < 4; ++i)
        c.problem.domain.outer.push_back(CurveSegment::line_between(z[i], z[(i + 1) % 4]));
    c.problem.marked = {z[0], z[1], z[2], z[3]};
    return c;
}

// Flower quadrilaterals r(theta) = 0.8 + t cos(f (theta - pi/2)): for even
// integer f the phase collapses to a sign, +cos(f theta) when f = 0 mod 4 and
// -cos(f theta) when f = 2 mod 4.  Marked points sit at theta = 0, pi/2, pi
// and (type I) 3 pi/2 or (type II) 5 pi/4; the type II labels start at pi/2
// so that the u = 1 plate is the short arc through 3 pi/2.  Type I is
// symmetric under the reflection theta -> pi - theta, which exchanges the
// problem with its conjugate, so its exact modulus is 1.
inline QuadCase quad_flower(int n, double t, bool type2, std::optional<double> freq = {}) {
    if (!(t > 0.0 && t < 0.8)) throw std::invalid_argument("flower: amplitude out of range");
    double f = freq.value_or(static_cast<double>(n));
    double amp = t;
    if (f == std::round(f) && std::lround(f) % 4 == 2) amp = -t;
    QuadCase c;
    std::ostringstream nm;
    nm << "flower-" << (type2 ? "ii" : "i") << " n=" << n << " t=" << t;
    c.name = nm.str();
    c.base = flower_mesh(0.8, amp, f);
    c.problem.domain = flower_domain(0.8, amp, f);
    auto at = [&](double th) -> Point {
        return (0.8 + amp * std::cos(f * th)) * Point{std::cos(th), std::sin(th)};
    };
    if (type2)
        c.problem.marked = {at(0.5 * pi), at(pi), at(1.25 * pi), at(0.0)};
    else
        c.problem.marked = {at(0.0), at(0.5 * pi), at(pi), at(1.5 * pi)};
    if (!type2) {
        c.reference = 1.0;
        c.tolerance = 1e-9;
    }
    return c;
}

inline QuadCase quad_circular_a(double a, double b, double c_) {
    QuadCase c;
    std::ostringstream nm;
    nm << "type-a (" << a << "," << b << "," << c_ << ")";
    c.name = nm.str();
    c.problem = circular_a_problem(a, b, c_);
    c.base = circular_a_mesh(a, b, c_);
    c.reference = circular_quad_type_a(a, b, c_);
    c.tolerance = 1e-9;
    return c;
}

inline QuadCase quad_circular_b(double a, double b, double c_) {
    QuadCase c;
    std::ostringstream nm;
    nm << "type-b (" << a << "," << b << "," << c_ << ")";
    c.name = nm.str();
    c.problem = circular_b_problem(a, b, c_);
    c.base = circular_b_mesh(a, b, c_);
    c.reference = circular_quad_type_b(a, b, c_);
    c.tolerance = 1e-9;
    return c;
}

// ---------------------------------------------------------------------------
// Ring presets

// Square in square: plates [-s, s]^2 inside (-1, 1)^2; one quarter is solved
// with natural symmetry cuts on the axes and the energy scaled by 4.
inline RingCase ring_square_in_square(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("square-in-square: need 0 < a < 1");
    RingCase r;
    std::ostringstream nm;
    nm << "square-in-square a=" << s;
    r.name = nm.str();
    r.base = grid_mesh({0.0, s, 1.0}, {0.0, s, 1.0},
                       [s](double x, double y) { return !(x < s && y < s); });
    r.targets = {Point{s, s}};
    r.chains = {{{0.0, s}, {s, 0.0}, 1.0}, {{1.0, 0.0}, {0.0, 1.0}, 0.0}};
    r.multiplier = 4.0;
    r.reference = square_in_square_capacity(s);
    r.tolerance = 1e-10;
    return r;
}

// Cross in square: plates {|x|<=a, |y|<=b} u {|x|<=b, |y|<=a} inside
// (-c, c)^2, a <= b < c; quarter solve as above.
inline RingCase ring_cross_in_square(double a, double b, double c) {
    if (!(a > 0.0 && a <= b && b < c))
        throw std::invalid_argument("cross-in-square: need 0 < a <= b < c");
    RingCase r;
    std::ostringstream nm;
    nm << "cross-in-square (" << a << "," << b << "," << c << ")";
    r.name = nm.str();
    std::vector<double> cuts = {0.0, a};
    if (b > a + 1e-12) cuts.push_back(b);  // a == b degenerates to a square plate
    cuts.push_back(c);
    r.base = grid_mesh(cuts, cuts,
                       [a, b](double x, double y) { return !(x < a && y < b) && !(x < b && y < a); });
    r.targets = {Point{b, a}, Point{a, b}};
    r.chains = {{{0.0, b}, {b, 0.0}, 1.0}, {{c, 0.0}, {0.0, c}, 0.0}};
    r.multiplier = 4.0;
    return r;
}

// Rectangle in rectangle: plate [a, c] x [b, d] inside [0, 7] x [0, 4]; no
// useful symmetry, so the whole ring is solved on the integer unit-square
// grid with grading at the four plate corners.
inline RingCase ring_rect_in_rect(double a, double b, double c, double d) {
    if (!(0.0 < a && a < c && c < 7.0 && 0.0 < b && b < d && d < 4.0))
        throw std::invalid_argument("rectangle-in-rectangle: plate must sit inside (0,7)x(0,4)");
    RingCase r;
    std::ostringstream nm;
    nm << "rect-in-rect (" << a << "," << b << "," << c << "," << d << ")";
    r.name = nm.str();
    std::vector<double> xs, ys;
    for (int i = 0; i <= 7; ++i) xs.push_back(i);
    for (int j = 0; j <= 4; ++j) ys.push_back(j);
    auto add_cut = [](std::vector<double>& v, double t) {
        for (double x : v)
            if (std::abs(x - t) < 1e-12) return;
        v.push_back(t);
        std::sort(v.begin(), v.end());
    };
    add_cut(xs, a);
    add_cut(xs, c);
    add_cut(ys, b);
    add_cut(ys, d);
    r.base = grid_mesh(xs, ys, [&](double x, double y) {
        return !(x > a && x < c && y > b && y < d);
    });
    r.targets = {Point{a, b}, Point{c, b}, Point{c, d}, Point{a, d}};
    // whole-loop chains: start and end at the same boundary vertex
    r.chains = {{{a, b}, {a, b}, 1.0}, {{0.0, 0.0}, {0.0, 0.0}, 0.0}};
    return r;
}

// ---------------------------------------------------------------------------
// Drivers

namespace detail {

inline int total_dofs(const SolveStats& st, int p, int elements) {
    return st.n_dofs + elements * (p - 1) * (p - 1);
}

class WallClock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace detail

// Optional hook receiving the graded mesh, assembled system, and primal
// field before they go out of scope; used by the CLI for exports.
using InspectHook = std::function<void(const Mesh&, const HpSystem&, const Field&)>;

inline RunReport run_quad(const QuadCase& c, const GradingParams& g, bool reciprocal = true,
                          const InspectHook& inspect = {}) {
    validate_params(g);
    validate_marked(c.problem);
    detail::WallClock clock;
    std::vector<int> targets = grading_targets(c.problem, c.base);
    for (Point t : c.extra_targets) {
        int vid = c.base.find_vertex(t, 1e-9 * std::max(1.0, c.base.diameter()));
        if (vid < 0) throw std::invalid_argument("quad case: grading corner is not a mesh vertex");
        targets.push_back(vid);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    Mesh graded = refine_geometric(c.base, g.alpha, g.nu, targets);
    HpSystem sys = assemble(graded, FemOptions{.p = g.p});
    Field primal;
    ModulusResult m = quad_modulus(c.problem, sys, reciprocal, inspect ? &primal : nullptr);
    RunReport r;
    r.name = c.name;
    r.value = m.modulus;
    r.reciprocal_error = m.reciprocal_error;
    r.reference = c.reference;
    r.tolerance = c.tolerance;
    r.certified = c.certified;
    r.dofs = m.n_dofs + m.n_elements * (g.p - 1) * (g.p - 1);
    r.elements = m.n_elements;
    r.p = g.p;
    r.alpha = g.alpha;
    r.nu = g.nu;
    r.wall_time = clock.seconds();
    finish_report(r);
    if (inspect) inspect(graded, sys, primal);
    return r;
}

inline RunReport run_ring(const RingCase& c, const GradingParams& g,
                          const InspectHook& inspect = {}) {
    validate_params(g);
    detail::WallClock clock;
    std::vector<int> ids;
    for (Point t : c.targets) {
        int vid = c.base.find_vertex(t, 1e-9 * std::max(1.0, c.base.diameter()));
        if (vid < 0) throw std::invalid_argument("ring preset: grading corner is not a mesh vertex");
        ids.push_back(vid);
    }
    Mesh graded = refine_geometric(c.base, g.alpha, g.nu, ids);
    HpSystem sys = assemble(graded, FemOptions{.p = g.p});
    SolveStats st;
    Field field;
    double cap = c.multiplier * dirichlet_energy(sys, c.chains, &st, inspect ? &field : nullptr);
    RunReport r;
    r.name = c.name;
    r.value = cap;
    r.ring_modulus = 2.0 * pi / cap;
    r.reference = c.reference;
    r.tolerance = c.tolerance;
    r.dofs = detail::total_dofs(st, g.p, st.n_elements);
    r.elements = st.n_elements;
    r.p = g.p;
    r.alpha = g.alpha;
    r.nu = g.nu;
    r.wall_time = clock.seconds();
    finish_report(r);
    if (inspect) inspect(graded, sys, field);
    return r;
}

// ---------------------------------------------------------------------------
// Convex-quadrilateral sweep: vertices (a, b, 0, 1), b fixed, a over a grid.
// The validation functional multiplies the modulus of (a, b, 0, 1) by the
// modulus of the independently meshed normalized conjugate
// ((b-1)/(a-1), 1/(1-a), 0, 1); it vanishes for the exact values.

struct SweepOptions {
    GradingParams params{};
    bool figure_grid = false;  // false: [0.5,1.5]x[0.2,1.2]; true: [0.1,2]x[0.1,2]
    int steps_re = 6;
    int steps_im = 6;
    Point b{-0.2, 1.2};
};

inline std::vector<RunReport> sweep_convex(const SweepOptions& opt,
                                           std::ostream* log = nullptr) {
    validate_params(opt.params);
    if (opt.steps_re < 1 || opt.steps_im < 1)
        throw std::invalid_argument("sweep: need at least one grid step per direction");
    double re0 = opt.figure_grid ? 0.1 : 0.5, re1 = opt.figure_grid ? 2.0 : 1.5;
    double im0 = opt.figure_grid ? 0.1 : 0.2, im1 = opt.figure_grid ? 2.0 : 1.2;
    std::vector<RunReport> out;
    for (int j = 0; j < opt.steps_im; ++j) {
        for (int i = 0; i < opt.steps_re; ++i) {
            Point a{re0 + (re1 - re0) * i / std::max(1, opt.steps_re - 1),
                    im0 + (im1 - im0) * j / std::max(1, opt.steps_im - 1)};
            detail::WallClock clock;
            try {
                QuadCase primal = quad_convex(a, opt.b);
                // closed-form reference exists only for convex positions
                try {
                    primal.reference = hvv_quad_modulus(a, opt.b);
                } catch (const std::exception&) {
                }
                QuadCase conj =
                    quad_convex((opt.b - 1.0) / (a - 1.0), 1.0 / (1.0 - a));
                RunReport r = run_quad(primal, opt.params, false);
                RunReport r2 = run_quad(conj, opt.params, false);
                r.reciprocal_error = std::abs(r.value * r2.value - 1.0);
                r.dofs = std::max(r.dofs, r2.dofs);
                r.wall_time = clock.seconds();
                finish_report(r);
                out.push_back(std::move(r));
            } catch (const std::exception& e) {
                if (log)
                    *log << "sweep: skipping a=(" << a.real() << "," << a.imag()
                         << "): " << e.what() << "\n";
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Flower table runs

inline std::vector<RunReport> flower_cases(bool type2, const GradingParams& g) {
    std::vector<RunReport> out;
    for (int n : {4, 6, 8})
        for (double t : {0.1, 0.2}) out.push_back(run_quad(quad_flower(n, t, type2), g));
    return out;
}

// ---------------------------------------------------------------------------
// Convergence studies on a fixed case: p sweep at fixed nu, or nu sweep at
// fixed p.  Reports carry the reciprocal error as the observable.

inline std::vector<RunReport> convergence_study(const QuadCase& c, const std::vector<int>& ps,
                                                const std::vector<int>& nus, double alpha) {
    std::vector<RunReport> out;
    for (int nu : nus)
        for (int p : ps) out.push_back(run_quad(c, GradingParams{p, alpha, nu}));
    return out;
}

// ---------------------------------------------------------------------------
// Frozen reference tables (12 significant digits or better), used by the
// `validate` subcommand.  Tolerances are declared per case: far above the
// reported reference accuracy, far below the leading digits being checked.

struct TableRows {
    std::string id;
    std::vector<RunReport> (*run)(std::ostream* log);
};

namespace tables {

inline std::vector<RunReport> square_in_square(std::ostream*) {
    // capacity rows for a = 0.1 .. 0.9, computed at p = 16 with (0.15,16)
    static const double rows[9][2] = {
        {0.1, 2.83977741905223},   {0.2, 4.134487024234081},  {0.3, 5.632828000941654},
        {0.4, 7.5615315398105745}, {0.5, 10.23409256936805},  {0.6, 14.234879675824363},
        {0.7, 20.901581676413954}, {0.8, 34.23491519877346},  {0.9, 74.23491519877882}};
    std::vector<RunReport> out;
    for (auto& row : rows) {
        RingCase c = ring_square_in_square(row[0]);
        c.reference = row[1];
        c.tolerance = 1e-10 * std::max(1.0, row[1]);
        out.push_back(run_ring(c, GradingParams{16, 0.15, 16}));
    }
    return out;
}

inline std::vector<RunReport> cross_in_square(std::ostream*) {
    // last column: relative tolerance (the final row's is pinned externally)
    static const double rows[6][5] = {
        {0.5, 1.2, 1.5, 21.94721953515577, 1e-10}, {0.5, 1.0, 1.5, 14.00279904484109, 1e-10},
        {0.2, 0.7, 1.2, 9.186926595881525, 1e-10}, {0.1, 0.8, 1.1, 11.256582318490889, 1e-10},
        {0.5, 0.6, 1.5, 7.323269585567927, 1e-10}, {0.1, 1.2, 1.3, 23.13861453810529, 1e-11}};
    std::vector<RunReport> out;
    for (auto& row : rows) {
        RingCase c = ring_cross_in_square(row[0], row[1], row[2]);
        c.reference = row[3];
        c.tolerance = row[4] * row[3];
        out.push_back(run_ring(c, GradingParams{16, 0.15, 16}));
    }
    return out;
}

inline std::vector<RunReport> rect_in_rect(std::ostream*) {
    static const double rows[15][6] = {
        {1, 1, 2, 2, 20, 5.210320385649294}, {1, 1, 3, 2, 19, 6.746053277945276},
        {1, 1, 4, 2, 20, 8.27007839293125},  {1, 1, 5, 2, 19, 9.86240917550835},
        {1, 1, 6, 2, 17, 11.89718127369752}, {2, 1, 3, 2, 18, 4.692072335693745},
        {2, 1, 4, 2, 18, 6.232078709256309}, {2, 1, 5, 2, 20, 7.827105378062926},
        {2, 1, 6, 2, 17, 9.86240917550835},  {3, 1, 4, 2, 17, 4.621123827863167},
        {3, 1, 5, 2, 20, 6.232078709256313}, {3, 1, 6, 2, 18, 8.2700783929313},
        {4, 1, 5, 2, 19, 4.69207233569376},  {4, 1, 6, 2, 20, 6.746053277945233},
        {5, 1, 6, 2, 20, 5.210320385649318}};
    std::vector<RunReport> out;
    for (auto& row : rows) {
        RingCase c = ring_rect_in_rect(row[0], row[1], row[2], row[3]);
        c.reference = row[5];
        c.tolerance = 1e-10;
        out.push_back(run_ring(c, GradingParams{static_cast<int>(row[4]), 0.15, 16}));
    }
    return out;
}

// Circular-arc families: the analytic value is checked against the frozen
// reference first (tight), then the solver against the analytic value.
inline std::vector<RunReport> circular(bool type_b, std::ostream*) {
    static const double rows_a[5][4] = {{2, 10, 12, 0.7071508111121534},
                                        {2, 10, 14, 0.8074514311467651},
                                        {4, 12, 18, 1.0383251171675787},
                                        {6, 16, 24, 1.170060906774661},
                                        {8, 22, 32, 1.313262425617007}};
    static const double rows_b[5][4] = {{2, 10, 12, 0.5389714947317054},
                                        {2, 10, 14, 0.5953434982171909},
                                        {4, 12, 18, 0.7121629047455362},
                                        {6, 16, 24, 0.7718690862645192},
                                        {8, 22, 32, 0.8319009599091923}};
    const double s = pi / 24.0;
    std::vector<RunReport> out;
    for (auto& row : (type_b ? rows_b : rows_a)) {
        double a = row[0] * s, b = row[1] * s, c = row[2] * s;
        double analytic = type_b ? circular_quad_type_b(a, b, c) : circular_quad_type_a(a, b, c);
        RunReport formula;
        formula.name = std::string(type_b ? "type-b" : "type-a") + " closed form (" +
                       std::to_string(static_cast<int>(row[0])) + "," +
                       std::to_string(static_cast<int>(row[1])) + "," +
                       std::to_string(static_cast<int>(row[2])) + ")";
        formula.value = analytic;
        formula.reference = row[3];
        formula.tolerance = 1e-12;
        finish_report(formula);
        out.push_back(formula);
        QuadCase c2 = type_b ? quad_circular_b(a, b, c) : quad_circular_a(a, b, c);
        out.push_back(run_quad(c2, GradingParams{type_b ? 16 : 14, 0.15, 12}));
    }
    return out;
}

inline std::vector<RunReport> type_a(std::ostream* log) { return circular(false, log); }
inline std::vector<RunReport> type_b(std::ostream* log) { return circular(true, log); }

inline std::vector<RunReport> flower_i(std::ostream*) {
    // reference modulus 1 by symmetry; tolerances floor at 1e-10 and widen to
    // 500x the reference table's own error where that error dominates
    static const double tol[3][2] = {{1e-10, 1e-10}, {1.9e-8, 4.3e-8}, {1e-10, 3.2e-8}};
    std::vector<RunReport> out;
    int i = 0;
    for (int n : {4, 6, 8}) {
        int j = 0;
        for (double t : {0.1, 0.2}) {
            QuadCase c = quad_flower(n, t, false);
            c.tolerance = tol[i][j];
            out.push_back(run_quad(c, GradingParams{16, 0.15, 12}));
            ++j;
        }
        ++i;
    }
    return out;
}

inline std::vector<RunReport> flower_ii(std::ostream*) {
    // The (4, 0.1) reference is pinned at 1e-9 although it is inconsistent
    // with the other rows: for frequencies divisible by 4 every marked point
    // lies on a reflection axis, making the modulus independent of t, yet
    // that row differs from its siblings by 2.6e-8.
    static const double rows[6][4] = {{4, 0.1, 0.8196442147286799, 1e-9},
                                      {4, 0.2, 0.8196441884805612, 1e-9},
                                      {6, 0.1, 0.7896695654987764, 1e-9},
                                      {6, 0.2, 0.7690460663235661, 1e-7},
                                      {8, 0.1, 0.8196441884804566, 1e-9},
                                      {8, 0.2, 0.8196441885295815, 7e-8}};
    std::vector<RunReport> out;
    for (auto& row : rows) {
        QuadCase c = quad_flower(static_cast<int>(row[0]), row[1], true);
        c.reference = row[2];
        c.tolerance = row[3];
        out.push_back(run_quad(c, GradingParams{16, 0.15, 12}));
    }
    return out;
}

inline std::vector<RunReport> l_shape(std::ostream*) {
    // For each degree: one row checking the frozen point value, one synthetic
    // row checking the reciprocal identity against a generous error bound.
    std::vector<RunReport> out;
    for (auto [p, bound] : {std::pair<int, double>{12, 1e-7}, {16, 1e-9}}) {
        QuadCase c = quad_lshape63();
        c.tolerance = (p >= 16) ? 1e-9 : 1e-7;
        RunReport r = run_quad(c, GradingParams{p, 0.15, 12});
        RunReport rec;
        rec.name = r.name + " p=" + std::to_string(p) + " reciprocal identity";
        rec.value = r.reciprocal_error.value_or(0.0);
        rec.reference = 0.0;
        rec.tolerance = bound;
        rec.p = p;
        finish_report(rec);
        r.name += " p=" + std::to_string(p);
        out.push_back(std::move(r));
        out.push_back(std::move(rec));
    }
    return out;
}

// Degree ladder on the circular-arc benchmark.  Each row reports the
// reciprocal-identity error at p with (0.15,12) grading; the bound is ten
// times the historical error at the same degree (an upper band: a denser
// base mesh makes the measured errors far smaller than the historical ones).
inline std::vector<RunReport> timing(std::ostream*) {
    static const double band[4][2] = {
        {8, 1.6e-5}, {12, 2.2e-7}, {16, 2.8e-9}, {20, 4.5e-11}};
    const double s = pi / 24.0;
    std::vector<RunReport> out;
    for (auto& row : band) {
        int p = static_cast<int>(row[0]);
        RunReport r =
            run_quad(quad_circular_b(2 * s, 24 * s, 36 * s), GradingParams{p, 0.15, 12});
        RunReport band_row;
        band_row.name = "benchmark p=" + std::to_string(p) + " reciprocal identity";
        band_row.value = r.reciprocal_error.value_or(0.0);
        band_row.reference = 0.0;
        band_row.tolerance = 10.0 * row[1];
        band_row.dofs = r.dofs;
        band_row.elements = r.elements;
        band_row.p = p;
        band_row.alpha = r.alpha;
        band_row.nu = r.nu;
        band_row.wall_time = r.wall_time;
        finish_report(band_row);
        out.push_back(std::move(band_row));
    }
    return out;
}

inline std::vector<RunReport> convex_sweep(std::ostream* log) {
    std::vector<RunReport> out;
    for (auto [p, bound] : {std::pair<int, double>{12, 5e-8}, {18, 5e-11}}) {
        SweepOptions opt;
        opt.params = GradingParams{p, 0.15, p};
        std::vector<RunReport> pts = sweep_convex(opt, log);
        for (RunReport& r : pts) {
            r.name = "p=" + std::to_string(p) + " " + r.name;
            r.tolerance = bound;
            r.deviation = r.reciprocal_error;  // the sweep's pass criterion
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace tables

inline const std::vector<TableRows>& validation_tables() {
    static const std::vector<TableRows> t = {
        {"square-in-square", &tables::square_in_square},
        {"cross-in-square", &tables::cross_in_square},
        {"rectangle-in-rectangle", &tables::rect_in_rect},
        {"type-a", &tables::type_a},
        {"type-b", &tables::type_b},
        {"flower-i", &tables::flower_i},
        {"flower-ii", &tables::flower_ii},
        {"l-shape", &tables::l_shape},
        {"timing", &tables::timing},
        {"convex-sweep", &tables::convex_sweep},
    };
    return t;
}

}  // namespace conmod
