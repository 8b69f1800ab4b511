#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "conmod/analytic.hpp"
#include "conmod/basis.hpp"
#include "conmod/fem.hpp"
#include "conmod/mesh.hpp"
#include "conmod/mesh_templates.hpp"

using namespace conmod;

namespace {

Mesh rectangle_mesh(double w, double h) {
    Mesh m;
    m.vertices = {{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}};
    Element el;
    el.v = {0, 1, 2, 3};
    m.elements.push_back(el);
    m.finalize();
    return m;
}

QuadrilateralProblem rectangle_problem(double w, double h) {
    QuadrilateralProblem q;
    q.domain.outer = {CurveSegment::line_between({0, 0}, {w, 0}),
                      CurveSegment::line_between({w, 0}, {w, h}),
                      CurveSegment::line_between({w, h}, {0, h}),
                      CurveSegment::line_between({0, h}, {0, 0})};
    q.marked = {Point{w, h}, Point{0.0, h}, Point{0.0, 0.0}, Point{w, 0.0}};
    return q;
}

// Annulus r1 < |z| < r2 as eight curved quadrilateral sectors.
Mesh annulus_mesh(double r1, double r2) {
    Mesh m;
    std::vector<int> in(8), out(8);
    for (int k = 0; k < 8; ++k) {
        double th = k * pi / 4.0;
        in[k] = m.add_vertex(r1 * Point{std::cos(th), std::sin(th)});
        out[k] = m.add_vertex(r2 * Point{std::cos(th), std::sin(th)});
    }
    for (int k = 0; k < 8; ++k) {
        int k1 = (k + 1) & 7;
        double a0 = k * pi / 4.0, a1 = (k + 1) * pi / 4.0;
        Element el;
        el.v = {in[k], out[k], out[k1], in[k1]};
        el.side[1] = CurveSegment::circular_arc({0, 0}, r2, a0, a1);
        el.side[3] = CurveSegment::circular_arc({0, 0}, r1, a1, a0);
        m.elements.push_back(el);
    }
    m.finalize();
    return m;
}

RingProblem annulus_problem(double r1, double r2) {
    RingProblem r;
    for (int k = 0; k < 8; ++k)
        r.domain.outer.push_back(
            CurveSegment::circular_arc({0, 0}, r2, k * pi / 4.0, (k + 1) * pi / 4.0));
    for (int k = 0; k < 8; ++k)
        r.domain.inner.push_back(
            CurveSegment::circular_arc({0, 0}, r1, -k * pi / 4.0, -(k + 1) * pi / 4.0));
    validate_domain(r.domain);
    return r;
}

}  // namespace

TEST_CASE("shape functions partition unity and obey side parity", "[props]") {
    const int p = 7;
    const int nt = shape_count(p);
    std::vector<double> val(nt), gx(nt), gy(nt);
    for (double xi : {-0.77, 0.0, 0.41}) {
        for (double eta : {-0.3, 0.55, 0.9}) {
            shape_eval(p, xi, eta, val.data(), gx.data(), gy.data());
            double sum = val[0] + val[1] + val[2] + val[3];
            double dsx = gx[0] + gx[1] + gx[2] + gx[3];
            CHECK(sum == Catch::Approx(1.0).margin(1e-14));
            CHECK(dsx == Catch::Approx(0.0).margin(1e-14));
        }
    }
    // Side traces: side 0 functions vanish on the other three sides and
    // reduce to the 1D hierarchy on eta = -1; odd ones are odd in xi.
    std::vector<double> fx, dfx;
    for (int i = 2; i <= p; ++i) {
        int n = 4 + (i - 2);
        double s = 0.63;
        shape_eval(p, s, -1.0, val.data(), nullptr, nullptr);
        integrated_legendre_all(p, s, fx, dfx);
        CHECK(val[n] == Catch::Approx(fx[i - 2]).margin(1e-14));
        double plus = val[n];
        shape_eval(p, -s, -1.0, val.data(), nullptr, nullptr);
        double minus = val[n];
        CHECK(plus == Catch::Approx((i % 2 == 0 ? 1.0 : -1.0) * minus).margin(1e-14));
        shape_eval(p, s, 1.0, val.data(), nullptr, nullptr);
        CHECK(std::abs(val[n]) < 1e-14);  // vanishes on the opposite side
        // All side and internal functions vanish at the corners.
        shape_eval(p, 1.0, -1.0, val.data(), nullptr, nullptr);
        for (int k = 4; k < nt; ++k) CHECK(std::abs(val[k]) < 1e-14);
    }
}

TEST_CASE("rectangle moduli are exact at every degree") {
    for (double h : {0.5, 1.0, 2.0}) {
        Mesh m = rectangle_mesh(1.0, h);
        QuadrilateralProblem q = rectangle_problem(1.0, h);
        validate_marked(q);
        FemOptions opt;
        opt.p = 4;
        HpSystem sys = assemble(m, opt);
        ModulusResult r = quad_modulus(q, sys);
        CHECK(r.modulus == Catch::Approx(h).margin(1e-12));
        REQUIRE(r.conjugate_modulus.has_value());
        CHECK(*r.conjugate_modulus == Catch::Approx(1.0 / h).margin(1e-12));
        CHECK(*r.reciprocal_error < 1e-12);
        CHECK(r.energy_mismatch < 1e-12);
        CHECK(r.max_principle_excess < 1e-12);
    }
    // Refined, higher degree, multiple elements: still exact.
    Mesh grid = grid_mesh({0.0, 0.4, 1.0}, {0.0, 0.7, 1.3, 2.0},
                          [](double, double) { return true; });
    QuadrilateralProblem q = rectangle_problem(1.0, 2.0);
    HpSystem sys = assemble(grid, FemOptions{.p = 6});
    ModulusResult r = quad_modulus(q, sys);
    CHECK(r.modulus == Catch::Approx(2.0).margin(1e-12));
    CHECK(*r.reciprocal_error < 1e-12);
}

TEST_CASE("constant data has zero energy and solves are deterministic", "[props]") {
    Mesh m = grid_mesh({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}, [](double, double) { return true; });
    HpSystem sys = assemble(m, FemOptions{.p = 5});
    std::vector<DirichletChain> both_one = {{{1, 0}, {1, 1}, 1.0}, {{0, 1}, {0, 0}, 1.0}};
    SolveStats st;
    solve_field(sys, both_one, &st);
    CHECK(std::abs(st.energy) < 1e-12);
    CHECK(st.u_min == Catch::Approx(1.0).margin(1e-10));
    CHECK(st.u_max == Catch::Approx(1.0).margin(1e-10));

    QuadrilateralProblem q = rectangle_problem(1.0, 1.0);
    ModulusResult r1 = quad_modulus(q, sys);
    ModulusResult r2 = quad_modulus(q, assemble(m, FemOptions{.p = 5}));
    CHECK(std::memcmp(&r1.modulus, &r2.modulus, sizeof(double)) == 0);
    CHECK(std::memcmp(&*r1.reciprocal_error, &*r2.reciprocal_error, sizeof(double)) == 0);
}

TEST_CASE("annulus capacity matches the closed form") {
    double r1 = 1.0, r2 = 2.0;
    Mesh m = annulus_mesh(r1, r2);
    RingProblem ring = annulus_problem(r1, r2);
    HpSystem sys = assemble(m, FemOptions{.p = 12});
    SolveStats st;
    double cap = ring_capacity(ring, sys, &st);
    double exact = 2.0 * pi / std::log(r2 / r1);
    CHECK(cap == Catch::Approx(exact).epsilon(1e-9));
    CHECK(st.energy_mismatch < 1e-11 * cap);
    CHECK(st.u_min > -1e-9);
    CHECK(st.u_max < 1.0 + 1e-9);
}

TEST_CASE("nonconvex quadrilateral domain converges to the reference modulus") {
    // L-shaped hexagon with marked corners (z2, z4, z6, z1).
    std::vector<Point> z = {{0, 0}, {3, 0}, {3, 1}, {2, 1}, {2, 2}, {0, 2}};
    Mesh base = polygon_mesh(z);
    int reentrant = base.find_vertex({2.0, 1.0}, 1e-12);
    REQUIRE(reentrant >= 0);
    Mesh graded = refine_geometric(base, 0.15, 8, {reentrant});
    QuadrilateralProblem q;
    for (std::size_t i = 0; i < z.size(); ++i)
        q.domain.outer.push_back(CurveSegment::line_between(z[i], z[(i + 1) % z.size()]));
    q.marked = {z[1], z[3], z[5], z[0]};
    validate_marked(q);
    HpSystem sys = assemble(graded, FemOptions{.p = 8});
    ModulusResult r = quad_modulus(q, sys);
    CHECK(r.modulus == Catch::Approx(1.5081540958548603).margin(2e-7));
    CHECK(*r.reciprocal_error < 1e-6);
    CHECK(r.energy_mismatch < 1e-10);
}

TEST_CASE("convex quadrilateral modulus agrees with the hypergeometric formula") {
    Point A{1.2, 1.1}, B{0.3, 0.9};
    double reference = hvv_quad_modulus(A, B);
    std::vector<Point> z = {{0, 0}, {1, 0}, A, B};
    Mesh base = polygon_mesh(z);
    std::vector<int> targets;
    for (const Point& c : z) targets.push_back(base.find_vertex(c, 1e-12));
    Mesh graded = refine_geometric(base, 0.15, 8, targets);
    QuadrilateralProblem q;
    for (std::size_t i = 0; i < 4; ++i)
        q.domain.outer.push_back(CurveSegment::line_between(z[i], z[(i + 1) % 4]));
    q.marked = {z[0], z[1], z[2], z[3]};
    HpSystem sys = assemble(graded, FemOptions{.p = 10});
    ModulusResult r = quad_modulus(q, sys);
    CHECK(r.modulus == Catch::Approx(reference).epsilon(1e-7));
    CHECK(*r.reciprocal_error < 1e-7);
}

TEST_CASE("quarter-symmetric ring capacities approach the analytic values") {
    // Square in square, a = 0.5: cap computed on one quarter with natural
    // conditions on the symmetry cuts.
    double a = 0.5;
    Mesh base = grid_mesh({0.0, a, 1.0}, {0.0, a, 1.0},
                          [a](double x, double y) { return !(x < a && y < a); });
    int notch = base.find_vertex({a, a}, 1e-12);
    REQUIRE(notch >= 0);
    Mesh graded = refine_geometric(base, 0.15, 8, {notch});
    HpSystem sys = assemble(graded, FemOptions{.p = 8});
    std::vector<DirichletChain> chains = {{{0.0, a}, {a, 0.0}, 1.0}, {{1.0, 0.0}, {0.0, 1.0}, 0.0}};
    SolveStats st;
    double cap = 4.0 * dirichlet_energy(sys, chains, &st);
    CHECK(cap == Catch::Approx(square_in_square_capacity(a)).epsilon(1e-7));
    CHECK(st.u_min > -1e-8);
    CHECK(st.u_max < 1.0 + 1e-8);
}

TEST_CASE("curved wave strip modulus approaches the reference value") {
    Mesh base = wave_mesh();
    std::vector<int> targets;
    for (Point c : {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}})
        targets.push_back(base.find_vertex(c, 1e-12));
    Mesh graded = refine_geometric(base, 0.15, 6, targets);
    QuadrilateralProblem q;
    q.domain = wave_domain();
    q.marked = {Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{0, 0}};
    HpSystem sys = assemble(graded, FemOptions{.p = 6});
    ModulusResult r = quad_modulus(q, sys);
    CHECK(r.modulus == Catch::Approx(1.285385932609546).margin(2e-4));
    CHECK(*r.reciprocal_error < 2e-4);
}

TEST_CASE("circular-arc quadrilateral moduli match their closed forms") {
    const double s = pi / 24.0;

    SECTION("orthogonal-cut family converges without grading") {
        QuadrilateralProblem qp = circular_a_problem(4 * s, 12 * s, 18 * s);
        Mesh m = circular_a_mesh(4 * s, 12 * s, 18 * s);
        HpSystem sys = assemble(m, FemOptions{.p = 12});
        ModulusResult r = quad_modulus(qp, sys);
        CHECK(r.modulus == Catch::Approx(circular_quad_type_a(4 * s, 12 * s, 18 * s)).margin(1e-9));
        CHECK(*r.reciprocal_error < 1e-9);
    }

    SECTION("whole-disk family needs grading at the marked points") {
        QuadrilateralProblem qp = circular_b_problem(4 * s, 12 * s, 18 * s);
        Mesh base = circular_b_mesh(4 * s, 12 * s, 18 * s);
        std::vector<int> targets;
        for (Point zm : qp.marked) targets.push_back(base.find_vertex(zm, 1e-9));
        Mesh graded = refine_geometric(base, 0.15, 8, targets);
        HpSystem sys = assemble(graded, FemOptions{.p = 10});
        ModulusResult r = quad_modulus(qp, sys);
        CHECK(r.modulus == Catch::Approx(circular_quad_type_b(4 * s, 12 * s, 18 * s)).margin(1e-7));
        CHECK(*r.reciprocal_error < 1e-7);
    }
}

TEST_CASE("boundary chain application rejects malformed input") {
    Mesh m = rectangle_mesh(1.0, 1.0);
    HpSystem sys = assemble(m, FemOptions{.p = 3});
    // Endpoint off the boundary mesh.
    CHECK_THROWS_AS(
        solve_field(sys, {{{0.37, 0.42}, {1.0, 0.0}, 1.0}, {{1, 1}, {0, 1}, 0.0}}),
        std::invalid_argument);
    // Conflicting values on overlapping chains.
    CHECK_THROWS_AS(
        solve_field(sys, {{{0, 0}, {1, 0}, 1.0}, {{0, 0}, {1, 0}, 0.0}}),
        std::invalid_argument);
    // Field sampling produces boundary-exact values.
    std::vector<DirichletChain> chains = {{{1, 0}, {1, 1}, 1.0}, {{0, 1}, {0, 0}, 0.0}};
    Field f;
    dirichlet_energy(sys, chains, nullptr, &f);
    auto samples = sample_field(sys, f, 5);
    CHECK(samples.size() == 25);
    for (const auto& s : samples) {
        CHECK(s.u == Catch::Approx(s.x.real()).margin(1e-12));  // exact solution u = x
        CHECK(s.ux == Catch::Approx(1.0).margin(1e-10));
        CHECK(s.uy == Catch::Approx(0.0).margin(1e-10));
    }
}
