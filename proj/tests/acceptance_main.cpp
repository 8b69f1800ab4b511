// Acceptance gate: nine numbered criteria, one PASS/FAIL line each, with all
// tolerances and runtime budgets pinned in this file.  Exit code 0 only if
// every criterion passes.
//
// Criterion 6 (per-step factor-30 decrease of the reciprocal error on the
// circular-arc benchmark) is checked exactly as stated.  On this
// implementation the p=16 and p=20 errors sit at the double-precision noise
// floor (~5e-14 for a 145k-dof condensed solve), so the final step cannot
// show a further factor 30 and the criterion reports FAIL; the first two
// steps exceed the bound by factors 34 and 7.  The printed sequence makes the
// saturation visible.

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conmod/harness.hpp"

namespace {

using namespace conmod;

struct Criterion {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget = 0.0;
};

std::string sci(double v) {
    std::ostringstream os;
    os << std::setprecision(2) << std::scientific << v;
    return os.str();
}

Criterion criterion_1() {
    Criterion c{1, "analytic closed forms match frozen tables"};
    c.budget = 5.0;
    detail::WallClock clock;
    static const double sq[9][2] = {
        {0.1, 2.83977741905223},   {0.2, 4.134487024234081},  {0.3, 5.632828000941654},
        {0.4, 7.5615315398105745}, {0.5, 10.23409256936805},  {0.6, 14.234879675824363},
        {0.7, 20.901581676413954}, {0.8, 34.23491519877346},  {0.9, 74.23491519877882}};
    static const double arc_a[5][4] = {{2, 10, 12, 0.7071508111121534},
                                       {2, 10, 14, 0.8074514311467651},
                                       {4, 12, 18, 1.0383251171675787},
                                       {6, 16, 24, 1.170060906774661},
                                       {8, 22, 32, 1.313262425617007}};
    static const double arc_b[5][4] = {{2, 10, 12, 0.5389714947317054},
                                       {2, 10, 14, 0.5953434982171909},
                                       {4, 12, 18, 0.7121629047455362},
                                       {6, 16, 24, 0.7718690862645192},
                                       {8, 22, 32, 0.8319009599091923}};
    const double s = pi / 24.0;
    double max_rel = 0.0, max_abs = 0.0;
    for (auto& row : sq)
        max_rel = std::max(max_rel,
                           std::abs(square_in_square_capacity(row[0]) - row[1]) / row[1]);
    for (auto& row : arc_a)
        max_abs = std::max(
            max_abs,
            std::abs(circular_quad_type_a(row[0] * s, row[1] * s, row[2] * s) - row[3]));
    for (auto& row : arc_b)
        max_abs = std::max(
            max_abs,
            std::abs(circular_quad_type_b(row[0] * s, row[1] * s, row[2] * s) - row[3]));
    c.seconds = clock.seconds();
    c.pass = max_rel <= 1e-11 && max_abs <= 1e-12 && c.seconds < c.budget;
    c.detail = "square-in-square rel " + sci(max_rel) + " <= 1e-11, circular-arc abs " +
               sci(max_abs) + " <= 1e-12";
    return c;
}

Criterion criterion_2() {
    Criterion c{2, "rectangle moduli exact at p=4"};
    c.budget = 5.0;
    detail::WallClock clock;
    double max_dev = 0.0;
    for (double h : {0.5, 1.0, 2.0}) {
        RunReport r = run_quad(quad_rectangle(h), GradingParams{4, 0.15, 0});
        max_dev = std::max(max_dev, std::abs(r.value - h));
    }
    c.seconds = clock.seconds();
    c.pass = max_dev <= 1e-12 && c.seconds < c.budget;
    c.detail = "max |modulus - h| = " + sci(max_dev) + " <= 1e-12 over h in {0.5, 1, 2}";
    return c;
}

Criterion criterion_3() {
    Criterion c{3, "curved-boundary modulus vs closed form"};
    c.budget = 120.0;
    detail::WallClock clock;
    const double s = pi / 24.0;
    RunReport r = run_quad(quad_circular_a(4 * s, 12 * s, 18 * s), GradingParams{16, 0.15, 12});
    double dev = std::abs(r.value - 1.0383251171675787);
    c.seconds = clock.seconds();
    c.pass = dev <= 1e-9 && c.seconds < c.budget;
    c.detail = "deviation " + sci(dev) + " <= 1e-9 at p=16, (0.15,12)-mesh";
    return c;
}

Criterion criterion_4() {
    Criterion c{4, "ring capacities vs frozen references"};
    c.budget = 240.0;  // two cases, each budgeted at 2 min
    detail::WallClock clock;
    RunReport r1 = run_ring(ring_square_in_square(0.5), GradingParams{16, 0.15, 16});
    double t1 = clock.seconds();
    double d1 = std::abs(r1.value - 10.23409256936805);
    RunReport r2 = run_ring(ring_cross_in_square(0.5, 1.0, 1.5), GradingParams{16, 0.15, 16});
    c.seconds = clock.seconds();
    double t2 = c.seconds - t1;
    double d2 = std::abs(r2.value - 14.00279904484109);
    c.pass = d1 <= 1e-10 && d2 <= 1e-9 && t1 < 120.0 && t2 < 120.0;
    c.detail = "square-in-square dev " + sci(d1) + " <= 1e-10, cross-in-square dev " + sci(d2) +
               " <= 1e-9";
    return c;
}

Criterion criterion_5() {
    Criterion c{5, "reciprocal-identity sweep bounds"};
    c.budget = 900.0;
    detail::WallClock clock;
    std::ostringstream log;
    double worst12 = 0.0, worst18 = 0.0;
    std::size_t n12 = 0, n18 = 0;
    {
        SweepOptions opt;
        opt.params = GradingParams{12, 0.15, 12};
        std::vector<RunReport> rows = sweep_convex(opt, &log);
        n12 = rows.size();
        for (const RunReport& r : rows) worst12 = std::max(worst12, r.reciprocal_error.value_or(0.0));
    }
    {
        SweepOptions opt;
        opt.params = GradingParams{18, 0.15, 12};
        std::vector<RunReport> rows = sweep_convex(opt, &log);
        n18 = rows.size();
        for (const RunReport& r : rows) worst18 = std::max(worst18, r.reciprocal_error.value_or(0.0));
    }
    c.seconds = clock.seconds();
    c.pass = n12 == 36 && n18 == 36 && worst12 <= 5e-8 && worst18 <= 5e-11 &&
             c.seconds < c.budget;
    c.detail = "p=12 max test " + sci(worst12) + " <= 5e-8 (" + std::to_string(n12) +
               "/36 points), p=18 max test " + sci(worst18) + " <= 5e-11 (" +
               std::to_string(n18) + "/36 points)";
    if (!log.str().empty()) c.detail += "; skipped: " + log.str();
    return c;
}

Criterion criterion_6() {
    Criterion c{6, "exponential p-convergence on the circular-arc benchmark"};
    c.budget = 600.0;
    detail::WallClock clock;
    const double s = pi / 24.0;
    std::vector<double> errs;
    for (int p : {8, 12, 16, 20}) {
        RunReport r =
            run_quad(quad_circular_b(2 * s, 24 * s, 36 * s), GradingParams{p, 0.15, 12});
        errs.push_back(r.reciprocal_error.value_or(0.0));
    }
    c.seconds = clock.seconds();
    bool steps_ok = true;
    std::string seq = "errors";
    for (std::size_t i = 0; i < errs.size(); ++i) seq += " " + sci(errs[i]);
    seq += "; ratios";
    for (std::size_t i = 1; i < errs.size(); ++i) {
        double ratio = errs[i - 1] / errs[i];
        seq += " " + sci(ratio);
        steps_ok = steps_ok && ratio >= 30.0;
    }
    c.pass = steps_ok && c.seconds < c.budget;
    c.detail = seq + " (each step must shrink >= 30x)";
    if (!steps_ok && errs[2] < 1e-11 && errs[3] < 1e-12)
        c.detail += "; final errors are at the double-precision floor";
    return c;
}

Criterion criterion_7() {
    Criterion c{7, "wave and L-shape point values"};
    c.budget = 240.0;  // two cases, each budgeted at 2 min
    detail::WallClock clock;
    RunReport w = run_quad(quad_wave(), GradingParams{20, 0.15, 12});
    double t1 = clock.seconds();
    double dw = std::abs(w.value - 1.285385932609546);
    RunReport l = run_quad(quad_lshape63(), GradingParams{20, 0.15, 16});
    c.seconds = clock.seconds();
    double t2 = c.seconds - t1;
    double dl = std::abs(l.value - 1.5081540958548603);
    c.pass = dw <= 1e-9 && dl <= 1e-9 && t1 < 120.0 && t2 < 120.0;
    c.detail = "wave dev " + sci(dw) + " <= 1e-9, L-shape dev " + sci(dl) + " <= 1e-9";
    return c;
}

Criterion criterion_8() {
    Criterion c{8, "unit and property suites pass standalone"};
    c.budget = 120.0;
    detail::WallClock clock;
    std::string cmd = std::string(TESTS_BIN) + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    c.seconds = clock.seconds();
    c.pass = rc == 0 && c.seconds < c.budget;
    c.detail = std::string("test binary exit ") + (rc == 0 ? "0" : std::to_string(rc));
    return c;
}

Criterion criterion_9() {
    Criterion c{9, "rectangle-in-rectangle symmetry"};
    c.budget = 180.0;
    detail::WallClock clock;
    RunReport a = run_ring(ring_rect_in_rect(1, 1, 3, 2), GradingParams{16, 0.15, 16});
    RunReport b = run_ring(ring_rect_in_rect(4, 1, 6, 2), GradingParams{16, 0.15, 16});
    double diff = std::abs(a.value - b.value);
    c.seconds = clock.seconds();
    c.pass = diff <= 1e-10 && c.seconds < c.budget;
    c.detail = "|cap(1,1,3,2) - cap(4,1,6,2)| = " + sci(diff) + " <= 1e-10";
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion (*)()> checks = {criterion_1, criterion_2, criterion_3,
                                           criterion_4, criterion_5, criterion_6,
                                           criterion_7, criterion_8, criterion_9};
    std::vector<Criterion> results;
    for (auto fn : checks) {
        Criterion c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            // recover the id from position; the criterion itself never ran
            c.id = static_cast<int>(results.size()) + 1;
            c.title = "criterion aborted";
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        std::ostringstream line;
        line << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title
             << " — " << c.detail << "  [" << std::setprecision(1) << std::fixed << c.seconds
             << " s / budget " << c.budget << " s]";
        std::cout << line.str() << std::endl;
        results.push_back(std::move(c));
    }

    int passed = 0;
    std::vector<int> failing;
    for (const Criterion& c : results)
        if (c.pass)
            ++passed;
        else
            failing.push_back(c.id);

    if (passed == 9) {
        std::cout << "acceptance: 9/9 criteria passed" << std::endl;
    } else if (failing == std::vector<int>{6} &&
               results[5].detail.find("double-precision floor") != std::string::npos) {
        std::cout << "acceptance: 8/9 criteria passed; criterion 6 fails only at the "
                     "double-precision floor"
                  << std::endl;
    } else {
        std::cout << "acceptance: " << passed << "/9 criteria passed (failing:";
        for (int id : failing) std::cout << " " << id;
        std::cout << ")" << std::endl;
    }
    return passed == 9 ? 0 : 1;
}
