#pragma once

// Domain descriptions: boundary cycles of curve segments, corner bookkeeping,
// quadrilateral and ring problem statements, and the structured-text domain
// file parser.

#include <array>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conmod/geometry.hpp"
#include "conmod/specfun.hpp"

namespace conmod {

struct Corner {
    Point location;
    double interior_angle = 0.0;  // radians, in (0, 2 pi)
    int cycle = 0;                // 0 = outer, 1 = inner
    int junction = 0;             // index of the segment starting at this corner
};

struct DomainSpec {
    std::vector<CurveSegment> outer;  // closed, positively oriented
    std::vector<CurveSegment> inner;  // closed, negatively oriented; empty unless ring
};

// Quadrilateral (domain; z1, z2, z3, z4): marked points in positive boundary
// order.  Boundary data for the modulus problem: u = 1 on arc (z4, z1),
// u = 0 on arc (z2, z3), vanishing normal derivative on the other two arcs.
struct QuadrilateralProblem {
    DomainSpec domain;
    std::array<Point, 4> marked;
};

// Ring: u = 1 on the inner boundary component, u = 0 on the outer one.
struct RingProblem {
    DomainSpec domain;
};

// Conjugate quadrilateral (domain; z2, z3, z4, z1): markings rotate by one.
inline QuadrilateralProblem conjugate_problem(const QuadrilateralProblem& q) {
    return QuadrilateralProblem{q.domain,
                                {q.marked[1], q.marked[2], q.marked[3], q.marked[0]}};
}

namespace detail {

inline double cycle_diameter(const std::vector<CurveSegment>& cycle) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const CurveSegment& s : cycle) {
        for (double t = -1.0; t <= 1.0; t += 0.25) {
            Point p = s.eval(t);
            xmin = std::min(xmin, p.real());
            xmax = std::max(xmax, p.real());
            ymin = std::min(ymin, p.imag());
            ymax = std::max(ymax, p.imag());
        }
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace detail

// Signed area of one closed cycle by Green's theorem, A = 1/2 * integral of
// cross(z, dz); Gauss quadrature per segment (exact for lines, near machine
// precision for the parametric kinds).
inline double cycle_signed_area(const std::vector<CurveSegment>& cycle) {
    const QuadratureRule& rule = gauss_rule(32);
    double area = 0.0;
    for (const CurveSegment& s : cycle) {
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            area += 0.5 * rule.weights[i] * cross(s.eval(rule.nodes[i]), s.deriv(rule.nodes[i]));
        }
    }
    return area;
}

inline double domain_area(const DomainSpec& d) {
    double a = cycle_signed_area(d.outer);
    if (!d.inner.empty()) a += cycle_signed_area(d.inner);
    return a;
}

// Corners of a cycle: junctions where the tangent direction turns.  The
// interior angle is measured on the left of the traversal direction, so the
// same formula serves the outer cycle (counterclockwise) and the inner cycle
// (clockwise around the hole).
inline std::vector<Corner> cycle_corners(const std::vector<CurveSegment>& cycle, int cycle_id) {
    std::vector<Corner> out;
    const std::size_t n = cycle.size();
    for (std::size_t j = 0; j < n; ++j) {
        const CurveSegment& prev = cycle[(j + n - 1) % n];
        const CurveSegment& next = cycle[j];
        Point din = prev.deriv(1.0), dout = next.deriv(-1.0);
        double theta = wrap_angle(std::arg(-din / dout));
        if (std::abs(theta - pi) <= 1e-9) continue;  // smooth junction
        out.push_back(Corner{next.start(), theta, cycle_id, static_cast<int>(j)});
    }
    return out;
}

inline std::vector<Corner> domain_corners(const DomainSpec& d) {
    std::vector<Corner> out = cycle_corners(d.outer, 0);
    std::vector<Corner> in = cycle_corners(d.inner, 1);
    out.insert(out.end(), in.begin(), in.end());
    return out;
}

// Structural validation: cycles are closed and oriented as documented
// (positive signed area outside, negative inside).
inline void validate_domain(const DomainSpec& d) {
    auto check_closed = [](const std::vector<CurveSegment>& cycle, const char* name) {
        if (cycle.empty()) throw std::invalid_argument(std::string(name) + " cycle is empty");
        double diam = detail::cycle_diameter(cycle);
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            Point gap = cycle[j].end() - cycle[(j + 1) % cycle.size()].start();
            if (std::abs(gap) > 1e-12 * std::max(1.0, diam))
                throw std::invalid_argument(std::string(name) + " cycle is not closed at junction " +
                                            std::to_string((j + 1) % cycle.size()));
        }
    };
    check_closed(d.outer, "outer");
    if (cycle_signed_area(d.outer) <= 0.0)
        throw std::invalid_argument("outer cycle must be positively oriented");
    if (!d.inner.empty()) {
        check_closed(d.inner, "inner");
        if (cycle_signed_area(d.inner) >= 0.0)
            throw std::invalid_argument("inner cycle must be negatively oriented");
    }
}

// Marked points must be distinct, sit on the outer boundary, and appear in
// positive cyclic order.
inline void validate_marked(const QuadrilateralProblem& q) {
    validate_domain(q.domain);
    double diam = detail::cycle_diameter(q.domain.outer);
    double tol = 1e-9 * std::max(1.0, diam);
    std::array<double, 4> pos{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(q.marked[i] - q.marked[j]) <= tol)
                throw std::invalid_argument("marked points must be distinct");
        // Locate the point on the outer cycle by sampling.
        double best = 1e300, key = -1.0;
        for (std::size_t s = 0; s < q.domain.outer.size(); ++s) {
            for (int k = 0; k <= 64; ++k) {
                double t = -1.0 + 2.0 * k / 64.0;
                double dist = std::abs(q.domain.outer[s].eval(t) - q.marked[i]);
                if (dist < best) {
                    best = dist;
                    key = static_cast<double>(s) + 0.5 * (t + 1.0);
                }
            }
        }
        if (best > 0.05 * std::max(1.0, diam))
            throw std::invalid_argument("marked point " + std::to_string(i + 1) +
                                        " does not lie on the outer boundary");
        pos[i] = key;
    }
    // Positive cyclic order: exactly one descent around the cycle.
    int descents = 0;
    for (int i = 0; i < 4; ++i)
        if (pos[(i + 1) % 4] < pos[i]) ++descents;
    if (descents != 1)
        throw std::invalid_argument("marked points must be in positive boundary order");
}

// ---------------------------------------------------------------------------
// Domain file parser
//
//   # comment
//   preset <name> [args...]          -- defer to a named preset (exclusive)
//   outer | inner                    -- select the cycle under construction
//   line x0 y0 x1 y1
//   arc cx cy radius ang0 ang1
//   wave x0 x1 ybase amplitude omega
//   polar rbase amplitude frequency th0 th1
//   corner <junction-index>          -- force a grading target at an outer junction
//   marked j1 j2 j3 j4               -- outer junction indices of z1..z4

struct ParsedDomain {
    std::string preset;
    std::vector<std::string> preset_args;
    DomainSpec domain;
    std::vector<int> marked;          // outer junction indices (empty for rings)
    std::vector<int> refine_corners;  // forced grading targets (outer junctions)
};

inline ParsedDomain parse_domain_text(std::istream& in) {
    ParsedDomain out;
    std::vector<CurveSegment>* current = &out.domain.outer;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("domain file line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        auto need = [&](int n) {
            std::vector<double> v(n);
            for (int i = 0; i < n; ++i)
                if (!(ls >> v[i])) fail("expected " + std::to_string(n) + " numbers after '" + tag + "'");
            return v;
        };
        if (tag == "preset") {
            if (!(ls >> out.preset)) fail("preset needs a name");
            std::string arg;
            while (ls >> arg) out.preset_args.push_back(arg);
        } else if (tag == "outer") {
            current = &out.domain.outer;
        } else if (tag == "inner") {
            current = &out.domain.inner;
        } else if (tag == "line") {
            auto v = need(4);
            current->push_back(CurveSegment::line_between({v[0], v[1]}, {v[2], v[3]}));
        } else if (tag == "arc") {
            auto v = need(5);
            current->push_back(CurveSegment::circular_arc({v[0], v[1]}, v[2], v[3], v[4]));
        } else if (tag == "wave") {
            auto v = need(5);
            current->push_back(CurveSegment::sine_wave(v[0], v[1], v[2], v[3], v[4]));
        } else if (tag == "polar") {
            auto v = need(5);
            current->push_back(CurveSegment::polar_curve(v[0], v[1], v[2], v[3], v[4]));
        } else if (tag == "corner") {
            int j;
            if (!(ls >> j)) fail("corner needs a junction index");
            out.refine_corners.push_back(j);
        } else if (tag == "marked") {
            int j;
            while (ls >> j) out.marked.push_back(j);
            if (out.marked.size() != 4) fail("marked needs exactly 4 junction indices");
        } else {
            fail("unknown tag '" + tag + "'");
        }
    }
    if (out.preset.empty()) {
        if (out.domain.outer.empty()) throw std::invalid_argument("domain file: no boundary segments");
        validate_domain(out.domain);
        for (int j : out.marked)
            if (j < 0 || j >= static_cast<int>(out.domain.outer.size()))
                throw std::invalid_argument("domain file: marked junction out of range");
        for (int j : out.refine_corners)
            if (j < 0 || j >= static_cast<int>(out.domain.outer.size()))
                throw std::invalid_argument("domain file: corner junction out of range");
    }
    return out;
}

inline Point junction_point(const DomainSpec& d, int j) { return d.outer[j].start(); }

}  // namespace conmod
