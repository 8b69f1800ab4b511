#pragma once

// Curvilinear quadrilateral meshes: transfinite (Gordon-Hall) element maps,
// edge orientation with parity flags, conformity and quality validation, and
// geometric (alpha, nu) refinement toward corner vertices.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conmod/geometry.hpp"
#include "conmod/specfun.hpp"

namespace conmod {

// Columns are the xi- and eta-derivatives of the element map:
// [ dx/dxi  dx/deta ; dy/dxi  dy/deta ].
struct Mat2 {
    double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;
    double det() const { return xx * yy - xy * yx; }
};

struct Element {
    std::array<int, 4> v{};  // counterclockwise vertex ids
    // side k runs v[k] -> v[(k+1)%4]; nullopt means the straight chord
    std::array<std::optional<CurveSegment>, 4> side{};
    int layer = 0;  // number of geometric refinement splits in the ancestry
};

struct Mesh {
    std::vector<Point> vertices;
    std::vector<Element> elements;

    // Derived connectivity, rebuilt by finalize():
    std::vector<std::array<int, 2>> edges;                       // canonical (low, high)
    std::vector<std::array<int, 4>> elem_edge;                   // edge id per element side
    std::vector<std::array<int, 4>> elem_parity;                 // +1 if side runs low->high
    std::vector<std::vector<std::array<int, 2>>> edge_elements;  // per edge: (element, side)

    int add_vertex(Point p) {
        vertices.push_back(p);
        return static_cast<int>(vertices.size()) - 1;
    }

    CurveSegment side_curve(int e, int k) const {
        const Element& el = elements[e];
        if (el.side[k]) return *el.side[k];
        return CurveSegment::line_between(vertices[el.v[k]], vertices[el.v[(k + 1) & 3]]);
    }

    double diameter() const {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const Point& p : vertices) {
            xmin = std::min(xmin, p.real());
            xmax = std::max(xmax, p.real());
            ymin = std::min(ymin, p.imag());
            ymax = std::max(ymax, p.imag());
        }
        return std::hypot(xmax - xmin, ymax - ymin);
    }

    void map_eval(int e, double xi, double eta, Point* x, Mat2* jac) const;
    Point map_point(int e, double xi, double eta) const {
        Point p;
        map_eval(e, xi, eta, &p, nullptr);
        return p;
    }

    void finalize();

    double element_area(int e, int n) const;
    double min_det_jacobian(int e, int n) const;
    double total_area(int n) const {
        double a = 0.0;
        for (std::size_t e = 0; e < elements.size(); ++e)
            a += element_area(static_cast<int>(e), n);
        return a;
    }

    std::vector<std::array<int, 2>> boundary_sides() const {
        std::vector<std::array<int, 2>> out;
        for (const auto& inc : edge_elements)
            if (inc.size() == 1) out.push_back(inc[0]);
        return out;
    }

    int find_vertex(Point p, double tol) const {
        int best = -1;
        double dist = tol;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            double d = std::abs(vertices[i] - p);
            if (d <= dist) {
                dist = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    }
};

namespace detail {

// Transfinite blending of the four side curves.  Sides are stored cyclically
// (side k: v[k] -> v[k+1]), so the top and left sides are traversed against
// the reference coordinate and are evaluated at negated parameters.
inline void blend_eval(const Mesh& m, const Element& el, double xi, double eta, Point* x,
                       Mat2* jac) {
    const Point p0 = m.vertices[el.v[0]], p1 = m.vertices[el.v[1]];
    const Point p2 = m.vertices[el.v[2]], p3 = m.vertices[el.v[3]];
    const bool straight = !el.side[0] && !el.side[1] && !el.side[2] && !el.side[3];
    if (straight) {
        Point dxi = 0.25 * ((1.0 - eta) * (p1 - p0) + (1.0 + eta) * (p2 - p3));
        Point deta = 0.25 * ((1.0 - xi) * (p3 - p0) + (1.0 + xi) * (p2 - p1));
        if (x)
            *x = 0.25 * ((1.0 - xi) * (1.0 - eta) * p0 + (1.0 + xi) * (1.0 - eta) * p1 +
                         (1.0 + xi) * (1.0 + eta) * p2 + (1.0 - xi) * (1.0 + eta) * p3);
        if (jac) *jac = Mat2{dxi.real(), deta.real(), dxi.imag(), deta.imag()};
        return;
    }
    auto curve = [&](int k) {
        if (el.side[k]) return *el.side[k];
        return CurveSegment::line_between(m.vertices[el.v[k]], m.vertices[el.v[(k + 1) & 3]]);
    };
    const CurveSegment c0 = curve(0), c1 = curve(1), c2 = curve(2), c3 = curve(3);
    // Side values oriented with the reference square: bottom(xi), right(eta),
    // top(xi) left-to-right, left(eta) bottom-to-top.
    Point b = c0.eval(xi), r = c1.eval(eta), t = c2.eval(-xi), l = c3.eval(-eta);
    Point db = c0.deriv(xi), dr = c1.deriv(eta), dt = -c2.deriv(-xi), dl = -c3.deriv(-eta);
    if (x) {
        Point blend = 0.5 * ((1.0 - eta) * b + (1.0 + xi) * r + (1.0 + eta) * t + (1.0 - xi) * l);
        Point corner = 0.25 * ((1.0 - xi) * (1.0 - eta) * p0 + (1.0 + xi) * (1.0 - eta) * p1 +
                               (1.0 + xi) * (1.0 + eta) * p2 + (1.0 - xi) * (1.0 + eta) * p3);
        *x = blend - corner;
    }
    if (jac) {
        Point dxi = 0.5 * ((1.0 - eta) * db + r + (1.0 + eta) * dt - l) -
                    0.25 * ((1.0 - eta) * (p1 - p0) + (1.0 + eta) * (p2 - p3));
        Point deta = 0.5 * (-b + (1.0 + xi) * dr + t + (1.0 - xi) * dl) -
                     0.25 * ((1.0 - xi) * (p3 - p0) + (1.0 + xi) * (p2 - p1));
        *jac = Mat2{dxi.real(), deta.real(), dxi.imag(), deta.imag()};
    }
}

}  // namespace detail

inline void Mesh::map_eval(int e, double xi, double eta, Point* x, Mat2* jac) const {
    detail::blend_eval(*this, elements[e], xi, eta, x, jac);
}

inline double Mesh::element_area(int e, int n) const {
    const QuadratureRule& rule = gauss_rule(n);
    double a = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            Mat2 jac;
            map_eval(e, rule.nodes[i], rule.nodes[j], nullptr, &jac);
            a += rule.weights[i] * rule.weights[j] * jac.det();
        }
    }
    return a;
}

inline double Mesh::min_det_jacobian(int e, int n) const {
    const QuadratureRule& rule = gauss_rule(n);
    double dmin = 1e300;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            Mat2 jac;
            map_eval(e, rule.nodes[i], rule.nodes[j], nullptr, &jac);
            dmin = std::min(dmin, jac.det());
        }
    }
    return dmin;
}

inline void Mesh::finalize() {
    const std::size_t ne = elements.size();
    edges.clear();
    elem_edge.assign(ne, {-1, -1, -1, -1});
    elem_parity.assign(ne, {0, 0, 0, 0});
    edge_elements.clear();
    std::map<std::pair<int, int>, int> lookup;
    const double scale = std::max(1.0, diameter());
    for (std::size_t e = 0; e < ne; ++e) {
        const Element& el = elements[e];
        for (int k = 0; k < 4; ++k) {
            int a = el.v[k], b = el.v[(k + 1) & 3];
            if (a == b) throw std::runtime_error("mesh: degenerate element side");
            auto key = std::minmax(a, b);
            auto [it, inserted] = lookup.emplace(key, static_cast<int>(edges.size()));
            if (inserted) {
                edges.push_back({key.first, key.second});
                edge_elements.emplace_back();
            }
            elem_edge[e][k] = it->second;
            elem_parity[e][k] = (a < b) ? 1 : -1;
            edge_elements[it->second].push_back({static_cast<int>(e), k});
            // Side geometry must interpolate its vertices.
            CurveSegment c = side_curve(static_cast<int>(e), k);
            if (std::abs(c.start() - vertices[a]) > 1e-10 * scale ||
                std::abs(c.end() - vertices[b]) > 1e-10 * scale)
                throw std::runtime_error("mesh: side curve does not match its vertices");
        }
    }
    for (std::size_t id = 0; id < edges.size(); ++id) {
        const auto& inc = edge_elements[id];
        if (inc.size() < 1 || inc.size() > 2)
            throw std::runtime_error("mesh: edge with incidence " + std::to_string(inc.size()));
        if (inc.size() == 2) {
            if (elem_parity[inc[0][0]][inc[0][1]] == elem_parity[inc[1][0]][inc[1][1]])
                throw std::runtime_error("mesh: inconsistent element orientations across an edge");
            // Shared curved sides must describe the same locus.
            CurveSegment a = side_curve(inc[0][0], inc[0][1]);
            CurveSegment b = side_curve(inc[1][0], inc[1][1]);
            for (double t : {-0.6, 0.0, 0.6}) {
                if (std::abs(a.eval(t) - b.eval(-t)) > 1e-10 * scale)
                    throw std::runtime_error("mesh: incompatible shared-side geometry");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Mesh validation used by tests and builders

struct MeshQuality {
    double min_det = 0.0;       // minimal Jacobian determinant over all elements
    double total_area = 0.0;    // quadrature area
    int boundary_edges = 0;
    int interior_edges = 0;
};

inline MeshQuality validate_mesh(const Mesh& m, int n = 8) {
    MeshQuality q;
    q.min_det = 1e300;
    for (std::size_t e = 0; e < m.elements.size(); ++e) {
        double area = m.element_area(static_cast<int>(e), n);
        double dmin = m.min_det_jacobian(static_cast<int>(e), n);
        if (!(area > 0.0)) throw std::runtime_error("mesh: non-positive element area");
        if (dmin < 1e-10 * area)
            throw std::runtime_error("mesh: degenerate element (min det J " + std::to_string(dmin) +
                                     " vs area " + std::to_string(area) + ")");
        q.min_det = std::min(q.min_det, dmin);
        q.total_area += area;
    }
    for (const auto& inc : m.edge_elements) {
        if (inc.size() == 1) ++q.boundary_edges;
        else ++q.interior_edges;
    }
    return q;
}

// ---------------------------------------------------------------------------
// Geometric (alpha, nu) refinement toward target corner vertices
//
// Every element incident to a target vertex is replaced by 2 nu + 1
// quadrilaterals: nested rings shrinking geometrically toward the corner plus
// one tip element keeping it.  All rings are carved in the frame of the
// original element — ring k is bounded by the element edges split at
// parameter fraction alpha^k from the corner, and its interior cuts are the
// images of straight reference-square segments under the element's blending
// chart.  Carrying the cuts as exact chart images (rather than straight
// chords between their endpoints) matters for strongly curved elements,
// where a chord can leave the element; chart images cannot.

inline Mesh refine_geometric(const Mesh& base, double alpha, int nu,
                             std::vector<int> targets) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("refine_geometric: need 0 < alpha < 1");
    if (nu < 0) throw std::invalid_argument("refine_geometric: need nu >= 0");
    Mesh m = base;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int t : targets)
        if (t < 0 || t >= static_cast<int>(m.vertices.size()))
            throw std::invalid_argument("refine_geometric: target vertex out of range");
    // Below ~1e-13 relative the split points are no longer reliably distinct
    // in double precision; cap the depth rather than degenerate.
    std::vector<double> frac;  // frac[k-1] = alpha^k for ring k = 1..levels
    for (double f = alpha; static_cast<int>(frac.size()) < nu && f >= 1e-13; f *= alpha)
        frac.push_back(f);
    const int levels = static_cast<int>(frac.size());
    if (levels == 0 || targets.empty()) {
        m.finalize();
        return m;
    }

    // (edge lo, edge hi, ring) -> (split vertex, corner the split is measured from)
    std::map<std::tuple<int, int, int>, std::pair<int, int>> cache;
    std::vector<Element> done;
    done.reserve(m.elements.size() + 8 * levels);

    auto split_edge = [&](const Element& el, int k, int corner_vertex, int ring) {
        int a = el.v[k], b = el.v[(k + 1) & 3];
        auto lohi = std::minmax(a, b);
        auto key = std::make_tuple(lohi.first, lohi.second, ring);
        auto it = cache.find(key);
        if (it != cache.end()) {
            if (it->second.second != corner_vertex)
                throw std::runtime_error("refine_geometric: conflicting splits on one edge");
            return it->second.first;
        }
        double f = frac[ring - 1];
        double t = (corner_vertex == a) ? (-1.0 + 2.0 * f) : (1.0 - 2.0 * f);
        Point p = el.side[k] ? el.side[k]->eval(t)
                             : 0.5 * (1.0 - t) * m.vertices[a] + 0.5 * (1.0 + t) * m.vertices[b];
        int vid = m.add_vertex(p);
        cache.emplace(key, std::make_pair(vid, corner_vertex));
        return vid;
    };
    auto sub = [](const std::optional<CurveSegment>& s, double ta, double tb)
        -> std::optional<CurveSegment> {
        if (!s) return std::nullopt;
        return s->subsegment(ta, tb);
    };
    auto rev = [](const std::optional<CurveSegment>& s) -> std::optional<CurveSegment> {
        if (!s) return std::nullopt;
        return s->reversed();
    };

    std::function<void(Element, std::size_t)> emit = [&](Element el, std::size_t from) {
        std::size_t pos = targets.size();
        int corner = -1;
        for (std::size_t i = from; i < targets.size() && corner < 0; ++i)
            for (int k = 0; k < 4; ++k)
                if (el.v[k] == targets[i]) {
                    pos = i;
                    corner = k;
                    break;
                }
        if (corner < 0) {
            done.push_back(std::move(el));
            return;
        }
        Element r;  // rotate so the target corner is local vertex 0
        for (int k = 0; k < 4; ++k) {
            r.v[k] = el.v[(k + corner) & 3];
            r.side[k] = el.side[(k + corner) & 3];
        }
        r.layer = el.layer;

        std::shared_ptr<const BlendChart> chart;
        if (r.side[0] || r.side[1] || r.side[2] || r.side[3]) {
            auto ch = std::make_shared<BlendChart>();
            for (int k = 0; k < 4; ++k) {
                ch->p[k] = m.vertices[r.v[k]];
                ch->side[k] = r.side[k] ? *r.side[k]
                                        : CurveSegment::line_between(
                                              m.vertices[r.v[k]], m.vertices[r.v[(k + 1) & 3]]);
            }
            chart = std::move(ch);
        }
        auto at = [&](double xi, double eta) -> Point {
            if (chart) {
                Point x;
                chart->eval(xi, eta, &x, nullptr, nullptr);
                return x;
            }
            const Point p0 = m.vertices[r.v[0]], p1 = m.vertices[r.v[1]];
            const Point p2 = m.vertices[r.v[2]], p3 = m.vertices[r.v[3]];
            return 0.25 * ((1.0 - xi) * (1.0 - eta) * p0 + (1.0 + xi) * (1.0 - eta) * p1 +
                           (1.0 + xi) * (1.0 + eta) * p2 + (1.0 - xi) * (1.0 + eta) * p3);
        };
        // Interior cut between two reference points.  Children of a straight
        // quadrilateral keep straight chords (they tile it exactly); children
        // of a curved one carry the exact chart image.
        auto cut = [&](Point a, Point b) -> std::optional<CurveSegment> {
            if (!chart) return std::nullopt;
            return CurveSegment::mapped_segment(chart, a, b);
        };

        double s_prev = 1.0;
        int e0_prev = r.v[1], d_prev = r.v[2], e3_prev = r.v[3];
        std::optional<CurveSegment> v_prev, h_prev;
        for (int k = 1; k <= levels; ++k) {
            const double s = -1.0 + 2.0 * frac[k - 1];
            const int e0 = split_edge(r, 0, r.v[0], k);
            const int e3 = split_edge(r, 3, r.v[0], k);
            const int d = m.add_vertex(at(s, s));
            auto v_cut = cut({s, -1.0}, {s, s});   // along xi = s, upward
            auto h_cut = cut({-1.0, s}, {s, s});   // along eta = s, rightward
            auto d_cut = cut({s_prev, s_prev}, {s, s});

            Element right, left;
            right.layer = left.layer = el.layer + k;
            right.v = {e0, e0_prev, d_prev, d};
            right.side[0] = sub(r.side[0], s, s_prev);
            right.side[1] = (k == 1) ? r.side[1] : v_prev;
            right.side[2] = d_cut;
            right.side[3] = rev(v_cut);
            left.v = {e3, d, d_prev, e3_prev};
            left.side[0] = h_cut;
            left.side[1] = rev(d_cut);
            left.side[2] = (k == 1) ? r.side[2] : rev(h_prev);
            left.side[3] = sub(r.side[3], -s_prev, -s);
            emit(std::move(right), pos + 1);
            emit(std::move(left), pos + 1);

            s_prev = s;
            e0_prev = e0;
            d_prev = d;
            e3_prev = e3;
            v_prev = std::move(v_cut);
            h_prev = std::move(h_cut);
        }
        Element tip;
        tip.layer = el.layer + levels;
        tip.v = {r.v[0], e0_prev, d_prev, e3_prev};
        tip.side[0] = sub(r.side[0], -1.0, s_prev);
        tip.side[1] = v_prev;
        tip.side[2] = rev(h_prev);
        tip.side[3] = sub(r.side[3], -s_prev, 1.0);
        emit(std::move(tip), pos + 1);
    };

    std::vector<Element> current = std::move(m.elements);
    for (Element& el : current) emit(std::move(el), 0);
    m.elements = std::move(done);
    m.finalize();
    return m;
}

}  // namespace conmod
