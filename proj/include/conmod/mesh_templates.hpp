#pragma once

// Minimal-mesh builders: tensor grids for rectilinear domains, corner-fan
// isolation plus core triangulation for general simple polygons, the global
// triangle -> three-quadrilateral conversion, and the hand-tuned templates
// for the curved built-in domains (wave strip, flower).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conmod/analytic.hpp"
#include "conmod/domain.hpp"
#include "conmod/geometry.hpp"
#include "conmod/mesh.hpp"

namespace conmod {

// ---------------------------------------------------------------------------
// Tensor-product grid over sorted coordinate lines; keeps every cell whose
// center passes the inside predicate.  Serves all rectilinear presets.

inline Mesh grid_mesh(const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::function<bool(double, double)>& inside) {
    if (xs.size() < 2 || ys.size() < 2) throw std::invalid_argument("grid_mesh: need at least one cell");
    Mesh m;
    std::map<std::pair<int, int>, int> ids;
    auto vertex = [&](int i, int j) {
        auto [it, inserted] = ids.emplace(std::make_pair(i, j), -1);
        if (inserted) it->second = m.add_vertex({xs[i], ys[j]});
        return it->second;
    };
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (!inside(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]))) continue;
            Element el;
            int a = static_cast<int>(i), b = static_cast<int>(j);
            el.v = {vertex(a, b), vertex(a + 1, b), vertex(a + 1, b + 1), vertex(a, b + 1)};
            m.elements.push_back(el);
        }
    }
    if (m.elements.empty()) throw std::runtime_error("grid_mesh: no cells inside the domain");
    m.finalize();
    return m;
}

// Even-odd point-in-polygon test (query points never on the boundary here).
inline bool point_in_polygon(const std::vector<Point>& poly, Point p) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        bool straddles = (poly[i].imag() > p.imag()) != (poly[j].imag() > p.imag());
        if (straddles) {
            double xcut = poly[j].real() + (p.imag() - poly[j].imag()) /
                                               (poly[i].imag() - poly[j].imag()) *
                                               (poly[i].real() - poly[j].real());
            if (p.real() < xcut) in = !in;
        }
    }
    return in;
}

// ---------------------------------------------------------------------------
// Triangle soup -> all-quadrilateral mesh: each triangle splits into three
// quadrilaterals through its centroid and edge midpoints.  Midpoints are
// shared through an undirected-edge table, so conforming triangulations stay
// conforming.  Boundary edges may carry exact curve geometry.

struct TriMesh {
    std::vector<Point> verts;
    std::vector<std::array<int, 3>> tris;                    // counterclockwise
    std::map<std::pair<int, int>, CurveSegment> curves;      // (low, high) -> curve low->high
};

inline Mesh tris_to_quads(const TriMesh& tm) {
    Mesh m;
    m.vertices = tm.verts;
    std::map<std::pair<int, int>, int> mids;
    auto curve_of = [&](int a, int b) -> const CurveSegment* {
        auto it = tm.curves.find(std::minmax(a, b));
        return it == tm.curves.end() ? nullptr : &it->second;
    };
    auto midpoint = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = mids.find(key);
        if (it != mids.end()) return it->second;
        const CurveSegment* c = curve_of(a, b);
        Point p = c ? c->eval(0.0) : 0.5 * (m.vertices[a] + m.vertices[b]);
        int vid = m.add_vertex(p);
        mids.emplace(key, vid);
        return vid;
    };
    // Curve piece from vertex a to the midpoint of (a, b), and its partner
    // from the midpoint to b.
    auto half_from = [&](int a, int b) -> std::optional<CurveSegment> {
        const CurveSegment* c = curve_of(a, b);
        if (!c) return std::nullopt;
        return (a <= b) ? c->subsegment(-1.0, 0.0) : c->subsegment(1.0, 0.0);
    };
    auto half_to = [&](int a, int b) -> std::optional<CurveSegment> {
        const CurveSegment* c = curve_of(a, b);
        if (!c) return std::nullopt;
        return (a <= b) ? c->subsegment(0.0, 1.0) : c->subsegment(0.0, -1.0);
    };
    for (const auto& t : tm.tris) {
        int a = t[0], b = t[1], c = t[2];
        int g = m.add_vertex((tm.verts[a] + tm.verts[b] + tm.verts[c]) / 3.0);
        int mab = midpoint(a, b), mbc = midpoint(b, c), mca = midpoint(c, a);
        Element q1, q2, q3;
        q1.v = {a, mab, g, mca};
        q1.side[0] = half_from(a, b);
        q1.side[3] = half_to(c, a);
        q2.v = {b, mbc, g, mab};
        q2.side[0] = half_from(b, c);
        q2.side[3] = half_to(a, b);
        q3.v = {c, mca, g, mbc};
        q3.side[0] = half_from(c, a);
        q3.side[3] = half_to(b, c);
        m.elements.push_back(q1);
        m.elements.push_back(q2);
        m.elements.push_back(q3);
    }
    m.finalize();
    return m;
}

// ---------------------------------------------------------------------------
// General simple polygon: isolate each corner with one to three fan
// triangles (by interior angle), triangulate the remaining core, and convert
// everything to quadrilaterals.

namespace detail {

inline double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
}

inline bool point_in_triangle(Point p, Point a, Point b, Point c) {
    double d1 = cross(b - a, p - a);
    double d2 = cross(c - b, p - b);
    double d3 = cross(a - c, p - c);
    return (d1 > 0.0 && d2 > 0.0 && d3 > 0.0) || (d1 < 0.0 && d2 < 0.0 && d3 < 0.0);
}

// Ear-clipping triangulation of a simple polygon given as vertex ids into a
// shared vertex table; appends counterclockwise triangles.
inline void ear_clip(const std::vector<Point>& verts, std::vector<int> idx,
                     std::vector<std::array<int, 3>>& tris) {
    double scale = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        scale = std::max(scale, std::abs(verts[idx[i]] - verts[idx[(i + 1) % idx.size()]]));
    while (idx.size() > 3) {
        bool clipped = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            int ia = idx[(i + idx.size() - 1) % idx.size()];
            int ib = idx[i];
            int ic = idx[(i + 1) % idx.size()];
            Point a = verts[ia], b = verts[ib], c = verts[ic];
            if (cross(b - a, c - b) <= 1e-12 * scale * scale) continue;  // reflex or flat
            bool blocked = false;
            for (int other : idx) {
                if (other == ia || other == ib || other == ic) continue;
                if (point_in_triangle(verts[other], a, b, c)) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            tris.push_back({ia, ib, ic});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
            break;
        }
        if (!clipped) throw std::runtime_error("polygon_mesh: triangulation failed (self-intersecting input?)");
    }
    tris.push_back({idx[0], idx[1], idx[2]});
}

}  // namespace detail

inline Mesh polygon_mesh(const std::vector<Point>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) throw std::invalid_argument("polygon_mesh: need at least 3 corners");
    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) area2 += cross(poly[i], poly[(i + 1) % n]);
    if (area2 <= 0.0) throw std::invalid_argument("polygon_mesh: polygon must be counterclockwise");

    TriMesh tm;
    for (const Point& p : poly) tm.verts.push_back(p);

    // Fan radii: well inside both adjacent edges and clear of the rest of the
    // boundary, so fans at distinct corners never collide.
    std::vector<double> radius(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point prev = poly[(i + n - 1) % n], next = poly[(i + 1) % n];
        double r = 0.45 * std::min(std::abs(poly[i] - prev), std::abs(poly[i] - next));
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || (j + 1) % n == i) continue;  // skip the two incident edges
            r = std::min(r, 0.35 * detail::point_segment_distance(poly[i], poly[j], poly[(j + 1) % n]));
        }
        if (!(r > 0.0)) throw std::runtime_error("polygon_mesh: degenerate corner spacing");
        radius[i] = r;
    }

    // Corner fans: rim runs from the outgoing-edge point b_i over the
    // interior rays to the incoming-edge point a_i.
    std::vector<int> a_id(n), b_id(n);
    std::vector<std::vector<int>> rays(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point prev = poly[(i + n - 1) % n], next = poly[(i + 1) % n];
        Point din = (prev - poly[i]) / std::abs(prev - poly[i]);
        Point dout = (next - poly[i]) / std::abs(next - poly[i]);
        double theta = wrap_angle(std::arg(din / dout));
        a_id[i] = static_cast<int>(tm.verts.size());
        tm.verts.push_back(poly[i] + radius[i] * din);
        b_id[i] = static_cast<int>(tm.verts.size());
        tm.verts.push_back(poly[i] + radius[i] * dout);
        int nrays = theta <= 0.5 * pi + 1e-12 ? 0 : (theta <= pi + 1e-12 ? 1 : 2);
        for (int k = 1; k <= nrays; ++k) {
            double phi = theta * k / (nrays + 1);
            rays[i].push_back(static_cast<int>(tm.verts.size()));
            tm.verts.push_back(poly[i] + radius[i] * dout * std::polar(1.0, phi));
        }
        // Fan triangles, counterclockwise from the outgoing side.
        std::vector<int> rim;
        rim.push_back(b_id[i]);
        for (int rid : rays[i]) rim.push_back(rid);
        rim.push_back(a_id[i]);
        for (std::size_t k = 0; k + 1 < rim.size(); ++k)
            tm.tris.push_back({static_cast<int>(i), rim[k], rim[k + 1]});
    }

    // Core polygon: the boundary with every corner wedge cut off.
    std::vector<int> core;
    for (std::size_t i = 0; i < n; ++i) {
        core.push_back(b_id[i]);
        std::size_t next = (i + 1) % n;
        core.push_back(a_id[next]);
        for (std::size_t k = rays[next].size(); k-- > 0;) core.push_back(rays[next][k]);
    }
    bool convex = true;
    for (std::size_t i = 0; i < core.size() && convex; ++i) {
        Point a = tm.verts[core[i]];
        Point b = tm.verts[core[(i + 1) % core.size()]];
        Point c = tm.verts[core[(i + 2) % core.size()]];
        if (cross(b - a, c - b) <= 0.0) convex = false;
    }
    if (convex) {
        Point g{0.0, 0.0};
        for (int id : core) g += tm.verts[id];
        g /= static_cast<double>(core.size());
        int gid = static_cast<int>(tm.verts.size());
        tm.verts.push_back(g);
        for (std::size_t i = 0; i < core.size(); ++i)
            tm.tris.push_back({gid, core[i], core[(i + 1) % core.size()]});
    } else {
        detail::ear_clip(tm.verts, core, tm.tris);
    }
    return tris_to_quads(tm);
}

// ---------------------------------------------------------------------------
// Wave strip  { 0 < x < 1,  sin(2 pi x)/4 < y < 1 + sin(2 pi x)/4 }:
// a 3x3 grid of cells whose horizontal sides are vertical translates of the
// boundary wave, so the geometry is exact on every row.

inline DomainSpec wave_domain() {
    DomainSpec d;
    d.outer.push_back(CurveSegment::sine_wave(0.0, 1.0, 0.0, 0.25, 2.0 * pi));
    d.outer.push_back(CurveSegment::line_between({1.0, 0.0}, {1.0, 1.0}));
    d.outer.push_back(CurveSegment::sine_wave(1.0, 0.0, 1.0, 0.25, 2.0 * pi));
    d.outer.push_back(CurveSegment::line_between({0.0, 1.0}, {0.0, 0.0}));
    return d;
}

inline Mesh wave_mesh() {
    Mesh m;
    const int nx = 3, ny = 3;
    auto pt = [&](int i, int j) -> Point {
        double x = static_cast<double>(i) / nx;
        double y = static_cast<double>(j) / ny + 0.25 * std::sin(2.0 * pi * x);
        return {x, y};
    };
    std::vector<std::vector<int>> id(nx + 1, std::vector<int>(ny + 1));
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j) id[i][j] = m.add_vertex(pt(i, j));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            Element el;
            el.v = {id[i][j], id[i + 1][j], id[i + 1][j + 1], id[i][j + 1]};
            double xa = static_cast<double>(i) / nx, xb = static_cast<double>(i + 1) / nx;
            el.side[0] = CurveSegment::sine_wave(xa, xb, static_cast<double>(j) / ny, 0.25, 2.0 * pi);
            el.side[2] = CurveSegment::sine_wave(xb, xa, static_cast<double>(j + 1) / ny, 0.25, 2.0 * pi);
            m.elements.push_back(el);
        }
    }
    m.finalize();
    return m;
}

// ---------------------------------------------------------------------------
// Flower domains r(theta) = rbase + amp cos(freq theta): a 4x4 core grid
// (16 rim points), a 16-gon intermediate ring, and a 16-sector outer ring
// whose outer sides follow the exact polar curve.  All multiples of pi/4 --
// hence every marked angle used by the presets -- are template vertices.

inline DomainSpec flower_domain(double rbase, double amp, double freq) {
    DomainSpec d;
    for (int k = 0; k < 16; ++k)
        d.outer.push_back(
            CurveSegment::polar_curve(rbase, amp, freq, k * pi / 8.0, (k + 1) * pi / 8.0));
    return d;
}

inline Mesh flower_mesh(double rbase, double amp, double freq) {
    if (!(rbase - std::abs(amp) > 0.55))
        throw std::invalid_argument("flower_mesh: boundary must stay outside the template rings");
    Mesh m;
    const double s = 0.25;       // core half-width
    const double ring = 0.5;     // 16-gon radius
    // 5x5 core lattice over [-s, s]^2.
    std::vector<std::vector<int>> core(5, std::vector<int>(5));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            core[i][j] = m.add_vertex({-s + 0.5 * s * i, -s + 0.5 * s * j});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Element el;
            el.v = {core[i][j], core[i + 1][j], core[i + 1][j + 1], core[i][j + 1]};
            m.elements.push_back(el);
        }
    // Core rim in angular order starting at (s, 0).
    std::vector<int> rim;
    for (int j = 2; j <= 4; ++j) rim.push_back(core[4][j]);          // right edge upward
    for (int i = 3; i >= 0; --i) rim.push_back(core[i][4]);          // top edge leftward
    for (int j = 3; j >= 0; --j) rim.push_back(core[0][j]);          // left edge downward
    for (int i = 1; i <= 4; ++i) rim.push_back(core[i][0]);          // bottom edge rightward
    for (int j = 1; j < 2; ++j) rim.push_back(core[4][j]);           // back up to start
    if (rim.size() != 16) throw std::logic_error("flower_mesh: rim enumeration");
    // Intermediate 16-gon and boundary vertices at multiples of pi/8.
    std::vector<int> gon(16), bnd(16);
    for (int k = 0; k < 16; ++k) {
        double th = k * pi / 8.0;
        gon[k] = m.add_vertex(ring * Point{std::cos(th), std::sin(th)});
        double r = rbase + amp * std::cos(freq * th);
        bnd[k] = m.add_vertex(r * Point{std::cos(th), std::sin(th)});
    }
    for (int k = 0; k < 16; ++k) {
        int k1 = (k + 1) & 15;
        Element inner;
        inner.v = {rim[k], gon[k], gon[k1], rim[k1]};
        m.elements.push_back(inner);
        Element outer;
        outer.v = {gon[k], bnd[k], bnd[k1], gon[k1]};
        outer.side[1] =
            CurveSegment::polar_curve(rbase, amp, freq, k * pi / 8.0, (k + 1) * pi / 8.0);
        m.elements.push_back(outer);
    }
    m.finalize();
    return m;
}

// ---------------------------------------------------------------------------
// Circular-arc quadrilaterals on the unit disk.
//
// Both families place marked points (e^{ia}, e^{ib}, e^{ic}, 1) on the unit
// circle, 0 < a < b < c < 2 pi.  Family "orthogonal": the sides through
// (1, e^{ia}) and (e^{ib}, e^{ic}) are arcs of circles orthogonal to the unit
// circle (all interior angles pi/2).  Family "disk": the domain is the whole
// disk and all four sides are unit-circle arcs (interior angles pi).

namespace detail {

// Center of the circle through two unit-circle points orthogonal to the unit
// circle; false when the points are antipodal (the locus is their diameter).
inline bool orthocircle_center(Point za, Point zb, Point* center) {
    double det = cross(za, zb);
    if (std::abs(det) < 1e-12) return false;
    *center = Point{(zb.imag() - za.imag()) / det, (za.real() - zb.real()) / det};
    return true;
}

}  // namespace detail

// The arc inside the unit disk joining two unit-circle points along the
// circle orthogonal to the unit circle (their chord when antipodal).
inline CurveSegment disk_cut(Point za, Point zb) {
    Point m;
    if (!detail::orthocircle_center(za, zb, &m)) return CurveSegment::line_between(za, zb);
    double r = std::sqrt(std::norm(m) - 1.0);
    Point nearest = m * (1.0 - r / std::abs(m));
    return segment_through(za, nearest, zb);
}

inline QuadrilateralProblem circular_a_problem(double a, double b, double c) {
    detail::circular_quad_u(a, b, c);  // validates ordering and absolute ratio
    Point z1 = std::polar(1.0, a), z2 = std::polar(1.0, b), z3 = std::polar(1.0, c);
    Point z4{1.0, 0.0};
    DomainSpec d;
    d.outer = {disk_cut(z4, z1), CurveSegment::circular_arc({0.0, 0.0}, 1.0, a, b),
               disk_cut(z2, z3), CurveSegment::circular_arc({0.0, 0.0}, 1.0, c, 2.0 * pi)};
    return {std::move(d), {z1, z2, z3, z4}};
}

// The two cut circles span a coaxial pencil with limit points p, q; both lie
// on the unit circle (it is orthogonal to the pencil) where the line through
// the cut centers crosses it.  w = (z - p)/(z - q) then sends the cuts to
// concentric circles and the unit circle to a line through the origin, i.e.
// the domain to an exact half-annulus, which is meshed as a log-polar grid
// and pulled back: every cell side is again a circular arc or a segment.
inline Mesh circular_a_mesh(double a, double b, double c) {
    detail::circular_quad_u(a, b, c);
    const Point z1 = std::polar(1.0, a), z2 = std::polar(1.0, b), z3 = std::polar(1.0, c);
    const Point z4{1.0, 0.0};
    Point m1, m2;
    const bool f1 = detail::orthocircle_center(z4, z1, &m1);
    const bool f2 = detail::orthocircle_center(z2, z3, &m2);
    if (!f1 && !f2) throw std::domain_error("circular_a_mesh: both cuts are diameters");
    Point base, dir;
    if (f1 && f2) {
        base = m1;
        dir = m2 - m1;
    } else if (f1) {  // second cut is a diameter; the center line runs
        base = m1;    // through the finite center, orthogonal to it
        dir = Point{0.0, 1.0} * (z3 - z2);
    } else {
        base = m2;
        dir = Point{0.0, 1.0} * (z1 - z4);
    }
    dir /= std::abs(dir);
    // |base + s dir| = 1 at the limit points
    const double h = dot(base, dir), cc = std::norm(base) - 1.0;
    const double disc = h * h - cc;
    if (!(disc > 0.0)) throw std::domain_error("circular_a_mesh: cut circles intersect");
    const Point p = base + (-h + std::sqrt(disc)) * dir;
    const Point q = base + (-h - std::sqrt(disc)) * dir;
    auto fwd = [&](Point z) { return (z - p) / (z - q); };
    auto inv = [&](Point w) { return (p - w * q) / (1.0 - w); };

    // radii of the concentric cut images (any cut point determines its circle)
    auto cut_radius = [&](bool finite, Point center) {
        Point sample =
            finite ? center * (1.0 - std::sqrt(std::norm(center) - 1.0) / std::abs(center))
                   : Point{0.0, 0.0};
        return std::abs(fwd(sample));
    };
    const double rc1 = cut_radius(f1, m1), rc2 = cut_radius(f2, m2);
    const double rlo = std::min(rc1, rc2), rhi = std::max(rc1, rc2);
    // ray direction of the first boundary arc's image, and the sweep sign
    // that keeps the domain (rather than its reflection) inside the disk
    const double phi1 = std::arg(fwd(std::polar(1.0, 0.5 * (a + b))));
    const Point probe = std::sqrt(rlo * rhi) * std::polar(1.0, phi1 + 0.5 * pi);
    const double sigma = std::abs(inv(probe)) < 1.0 ? 1.0 : -1.0;

    const double span = std::log(rhi / rlo);
    const int nr = std::max(1, static_cast<int>(std::lround(span / 0.55)));
    const int nth = 6;
    auto wat = [&](double i, double j) {
        return std::exp(std::log(rlo) + span * i / nr) *
               std::polar(1.0, phi1 + sigma * pi * j / nth);
    };

    Mesh m;
    std::vector<std::vector<int>> vid(nr + 1, std::vector<int>(nth + 1));
    const std::array<Point, 4> marked{z1, z2, z3, z4};
    for (int i = 0; i <= nr; ++i)
        for (int j = 0; j <= nth; ++j) {
            Point z = inv(wat(i, j));
            if ((i == 0 || i == nr) && (j == 0 || j == nth))
                for (Point zm : marked)
                    if (std::abs(z - zm) < 1e-8) z = zm;  // snap corners exactly
            vid[i][j] = m.add_vertex(z);
        }
    auto side_arc = [&](int i0, int j0, int i1, int j1) -> std::optional<CurveSegment> {
        Point za = m.vertices[vid[i0][j0]], zb = m.vertices[vid[i1][j1]];
        Point zm = inv(wat(0.5 * (i0 + i1), 0.5 * (j0 + j1)));
        CurveSegment s = segment_through(za, zm, zb);
        if (s.is_line()) return std::nullopt;
        return s;
    };
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nth; ++j) {
            Element el;
            // grid corners in positive orientation for either sweep sign
            std::array<std::array<int, 2>, 4> g;
            if (sigma > 0.0)
                g = {{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
            else
                g = {{{i, j + 1}, {i + 1, j + 1}, {i + 1, j}, {i, j}}};
            for (int k = 0; k < 4; ++k) el.v[k] = vid[g[k][0]][g[k][1]];
            for (int k = 0; k < 4; ++k) {
                auto& ga = g[k];
                auto& gb = g[(k + 1) & 3];
                el.side[k] = side_arc(ga[0], ga[1], gb[0], gb[1]);
            }
            m.elements.push_back(el);
        }
    m.finalize();
    return m;
}

inline QuadrilateralProblem circular_b_problem(double a, double b, double c) {
    detail::circular_quad_u(a, b, c);
    Point z1 = std::polar(1.0, a), z2 = std::polar(1.0, b), z3 = std::polar(1.0, c);
    Point z4{1.0, 0.0};
    auto arc = [](double a0, double a1) {
        return CurveSegment::circular_arc({0.0, 0.0}, 1.0, a0, a1);
    };
    DomainSpec d;
    d.outer = {arc(0.0, a), arc(a, b), arc(b, c), arc(c, 2.0 * pi)};
    return {std::move(d), {z1, z2, z3, z4}};
}

// Disk-family mesh: the unit disk is covered directly by boundary arcs, a
// concentric ring, and a center fan (triangles converted to conforming
// quadrilaterals).  Boundary nodes sit at the marked angles plus a
// near-uniform subdivision of each gap, keeping every arc span small;
// interior edges are straight chords of the convex disk, so the geometry
// stays exact without any normalizing map.
inline Mesh circular_b_mesh(double a, double b, double c) {
    detail::circular_quad_u(a, b, c);

    // boundary node angles: 0 (the fourth marked point) and each further
    // marked angle starts a gap, subdivided to pieces of at most ~0.9 rad
    const std::array<double, 4> mark{a, b, c, 2.0 * pi};
    std::vector<double> th;
    for (int g = 0; g < 4; ++g) {
        double lo = (g == 0) ? 0.0 : mark[g - 1];
        double hi = mark[g];
        int pieces = std::max(1, static_cast<int>(std::lround((hi - lo) / 0.9)));
        for (int k = 0; k < pieces; ++k) th.push_back(lo + (hi - lo) * k / pieces);
    }
    const int nb = static_cast<int>(th.size());
    th.push_back(2.0 * pi);

    const double ring = 0.55;
    TriMesh tm;
    for (int k = 0; k < nb; ++k) tm.verts.push_back(std::polar(1.0, th[k]));
    for (int k = 0; k < nb; ++k) tm.verts.push_back(ring * std::polar(1.0, th[k]));
    tm.verts.push_back({0.0, 0.0});
    const int center = 2 * nb;

    for (int k = 0; k < nb; ++k) {
        int k1 = (k + 1) % nb;
        // curve keys run from the lower vertex id, so the wrap-around arc
        // starts at vertex 0 (angle 2 pi) and sweeps backwards
        CurveSegment barc =
            (k1 > k) ? CurveSegment::circular_arc({0.0, 0.0}, 1.0, th[k], th[k + 1])
                     : CurveSegment::circular_arc({0.0, 0.0}, 1.0, th[nb], th[k]);
        tm.curves.emplace(std::minmax(k, k1), barc);
        tm.tris.push_back({k, k1, nb + k1});
        tm.tris.push_back({k, nb + k1, nb + k});
        tm.tris.push_back({center, nb + k, nb + k1});
    }
    return tris_to_quads(tm);
}

}  // namespace conmod
