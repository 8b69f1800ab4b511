#pragma once

// Hierarchic shape functions on the reference square [-1, 1]^2.
//
// The set of degree p holds 4 bilinear vertex functions, p-1 functions per
// side built from integrated Legendre polynomials, and (p-1)^2 internal
// bubbles:
//
//   vertex k : the usual bilinear corner hats (counterclockwise from (-1,-1))
//   side 0   : (1 - eta)/2 phi_i(xi)     trace direction v0 -> v1
//   side 1   : (1 + xi)/2  phi_i(eta)    trace direction v1 -> v2
//   side 2   : (1 + eta)/2 phi_i(xi)     trace direction v3 -> v2
//   side 3   : (1 - xi)/2  phi_i(eta)    trace direction v0 -> v3
//   internal : phi_i(xi) phi_j(eta),  i, j = 2..p
//
// with phi_n = (P_n - P_{n-2}) / sqrt(2(2n-1)).  Note sides 2 and 3 run
// against the counterclockwise element cycle; gluing across elements must
// flip odd-order side functions whenever the local trace direction opposes
// the canonical (ascending vertex id) edge direction, since
// phi_i(-s) = (-1)^i phi_i(s).

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conmod/specfun.hpp"

namespace conmod {

inline int shape_count(int p) { return 4 + 4 * (p - 1) + (p - 1) * (p - 1); }
inline int external_count(int p) { return 4 * p; }

// Values and (optionally) reference gradients of all shape functions at one
// point; arrays must hold shape_count(p) entries.  Ordering: vertices, then
// side 0..3 blocks (i ascending), then internal (i-major).
inline void shape_eval(int p, double xi, double eta, double* val, double* gx, double* gy) {
    if (p < 1) throw std::domain_error("shape_eval: degree must be >= 1");
    static thread_local std::vector<double> fx, dfx, fy, dfy;
    integrated_legendre_all(p, xi, fx, dfx);
    integrated_legendre_all(p, eta, fy, dfy);
    const double lx0 = 0.5 * (1.0 - xi), lx1 = 0.5 * (1.0 + xi);
    const double ly0 = 0.5 * (1.0 - eta), ly1 = 0.5 * (1.0 + eta);
    auto put = [&](int n, double v, double dx, double dy) {
        if (val) val[n] = v;
        if (gx) gx[n] = dx;
        if (gy) gy[n] = dy;
    };
    put(0, lx0 * ly0, -0.5 * ly0, -0.5 * lx0);
    put(1, lx1 * ly0, 0.5 * ly0, -0.5 * lx1);
    put(2, lx1 * ly1, 0.5 * ly1, 0.5 * lx1);
    put(3, lx0 * ly1, -0.5 * ly1, 0.5 * lx0);
    int n = 4;
    const int m = p - 1;
    for (int i = 0; i < m; ++i) put(n++, ly0 * fx[i], ly0 * dfx[i], -0.5 * fx[i]);
    for (int i = 0; i < m; ++i) put(n++, lx1 * fy[i], 0.5 * fy[i], lx1 * dfy[i]);
    for (int i = 0; i < m; ++i) put(n++, ly1 * fx[i], ly1 * dfx[i], 0.5 * fx[i]);
    for (int i = 0; i < m; ++i) put(n++, lx0 * fy[i], -0.5 * fy[i], lx0 * dfy[i]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) put(n++, fx[i] * fy[j], dfx[i] * fy[j], fx[i] * dfy[j]);
}

// Tabulated basis at an nq x nq tensor Gauss grid; rows are shapes, column
// q = j*nq + i refers to the node (nodes[i], nodes[j]).
struct ShapeBasis {
    int p = 1;
    int nq = 2;
    QuadratureRule rule;
    int n_total = 4;
    int n_external = 4;
    Eigen::MatrixXd val, gx, gy;
};

inline const ShapeBasis& shape_basis(int p, int nq) {
    static std::map<std::pair<int, int>, std::unique_ptr<ShapeBasis>> cache;
    auto key = std::make_pair(p, nq);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto b = std::make_unique<ShapeBasis>();
    b->p = p;
    b->nq = nq;
    b->rule = gauss_rule(nq);
    b->n_total = shape_count(p);
    b->n_external = external_count(p);
    b->val.resize(b->n_total, nq * nq);
    b->gx.resize(b->n_total, nq * nq);
    b->gy.resize(b->n_total, nq * nq);
    std::vector<double> v(b->n_total), dx(b->n_total), dy(b->n_total);
    for (int j = 0; j < nq; ++j) {
        for (int i = 0; i < nq; ++i) {
            shape_eval(p, b->rule.nodes[i], b->rule.nodes[j], v.data(), dx.data(), dy.data());
            int q = j * nq + i;
            for (int n = 0; n < b->n_total; ++n) {
                b->val(n, q) = v[n];
                b->gx(n, q) = dx[n];
                b->gy(n, q) = dy[n];
            }
        }
    }
    const ShapeBasis& ref = *b;
    cache.emplace(key, std::move(b));
    return ref;
}

}  // namespace conmod
