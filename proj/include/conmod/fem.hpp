#pragma once

// High-order conforming FEM for the Laplace Dirichlet energy on curved
// quadrilateral meshes.
//
// Pipeline: per-element stiffness by tensor Gauss quadrature (symmetric
// rank-k accumulation), static condensation of internal modes, sparse
// skeleton assembly, Dirichlet data applied along boundary vertex chains,
// SimplicialLDLT solve with iterative refinement, and an independent
// energy evaluation by direct quadrature of the solved gradient field that
// must agree with the assembled quadratic form to 1e-11.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conmod/basis.hpp"
#include "conmod/domain.hpp"
#include "conmod/mesh.hpp"

namespace conmod {

struct FemOptions {
    int p = 8;                   // polynomial degree
    int quad_extra_straight = 2; // 1D Gauss points = p + extra
    int quad_extra_curved = 4;
};

struct HpSystem {
    const Mesh* mesh = nullptr;
    FemOptions opt;
    int n_skel = 0;  // vertex dofs + (p-1) per edge
    std::vector<Eigen::VectorXi> gdof;   // per element: external globals
    std::vector<Eigen::VectorXd> gsign;  // per element: gluing signs
    std::vector<Eigen::MatrixXd> S;      // condensed external stiffness
    std::vector<Eigen::MatrixXd> R;      // internal recovery u_I = R u_E
    std::vector<int> nq;                 // per element 1D quadrature size
    Eigen::SparseMatrix<double> A;       // assembled skeleton stiffness
};

namespace detail {

// Scatter sign of side function i (i = 2..p): the basis trace directions run
// with the element cycle on sides 0,1 and against it on sides 2,3, and odd
// integrated Legendre functions flip under direction reversal.
inline double side_sign(const Mesh& m, std::size_t e, int k, int i) {
    int dir = (k < 2) ? m.elem_parity[e][k] : -m.elem_parity[e][k];
    return (dir == 1 || i % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

inline HpSystem assemble(const Mesh& mesh, const FemOptions& opt) {
    if (opt.p < 1) throw std::invalid_argument("assemble: degree must be >= 1");
    if (mesh.edges.empty() && !mesh.elements.empty())
        throw std::invalid_argument("assemble: mesh is not finalized");
    const int p = opt.p;
    const int m1 = p - 1;
    const int nv = static_cast<int>(mesh.vertices.size());
    const int nE = external_count(p);
    const int nI = m1 * m1;
    HpSystem sys;
    sys.mesh = &mesh;
    sys.opt = opt;
    sys.n_skel = nv + static_cast<int>(mesh.edges.size()) * m1;
    const std::size_t ne = mesh.elements.size();
    sys.gdof.resize(ne);
    sys.gsign.resize(ne);
    sys.S.resize(ne);
    sys.R.resize(ne);
    sys.nq.resize(ne);

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(ne * static_cast<std::size_t>(nE) * nE);
    for (std::size_t e = 0; e < ne; ++e) {
        const Element& el = mesh.elements[e];
        bool curved = el.side[0] || el.side[1] || el.side[2] || el.side[3];
        int nq = p + (curved ? opt.quad_extra_curved : opt.quad_extra_straight);
        nq = std::min(nq, 64);
        sys.nq[e] = nq;
        const ShapeBasis& basis = shape_basis(p, nq);
        const int nt = basis.n_total;
        const int nQ = nq * nq;
        Eigen::MatrixXd Dx(nt, nQ), Dy(nt, nQ);
        for (int j = 0; j < nq; ++j) {
            for (int i = 0; i < nq; ++i) {
                int q = j * nq + i;
                Point x;
                Mat2 jac;
                mesh.map_eval(static_cast<int>(e), basis.rule.nodes[i], basis.rule.nodes[j], &x, &jac);
                double det = jac.det();
                if (!(det > 0.0))
                    throw std::runtime_error("assemble: non-positive Jacobian in element " +
                                             std::to_string(e));
                double w = basis.rule.weights[i] * basis.rule.weights[j] * det;
                double s = std::sqrt(w) / det;
                // rows of J^{-T} scaled by sqrt(weight * det)
                double axx = s * jac.yy, axy = -s * jac.yx;
                double ayx = -s * jac.xy, ayy = s * jac.xx;
                Dx.col(q) = axx * basis.gx.col(q) + axy * basis.gy.col(q);
                Dy.col(q) = ayx * basis.gx.col(q) + ayy * basis.gy.col(q);
            }
        }
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nt, nt);
        K.selfadjointView<Eigen::Lower>().rankUpdate(Dx);
        K.selfadjointView<Eigen::Lower>().rankUpdate(Dy);
        K = K.selfadjointView<Eigen::Lower>();

        Eigen::MatrixXd S;
        if (nI > 0) {
            Eigen::LLT<Eigen::MatrixXd> llt(K.bottomRightCorner(nI, nI));
            if (llt.info() != Eigen::Success)
                throw std::runtime_error("assemble: internal block is not positive definite");
            sys.R[e] = -llt.solve(K.bottomLeftCorner(nI, nE));
            S = K.topLeftCorner(nE, nE) + K.topRightCorner(nE, nI) * sys.R[e];
            S = 0.5 * (S + S.transpose()).eval();
        } else {
            S = K;
        }
        sys.S[e] = std::move(S);

        Eigen::VectorXi g(nE);
        Eigen::VectorXd sg(nE);
        for (int k = 0; k < 4; ++k) {
            g[k] = el.v[k];
            sg[k] = 1.0;
        }
        for (int k = 0; k < 4; ++k) {
            int base = nv + mesh.elem_edge[e][k] * m1;
            for (int i = 2; i <= p; ++i) {
                int loc = 4 + k * m1 + (i - 2);
                g[loc] = base + (i - 2);
                sg[loc] = detail::side_sign(mesh, e, k, i);
            }
        }
        for (int i = 0; i < nE; ++i)
            for (int j = 0; j < nE; ++j)
                trips.emplace_back(g[i], g[j], sg[i] * sg[j] * sys.S[e](i, j));
        sys.gdof[e] = std::move(g);
        sys.gsign[e] = std::move(sg);
    }
    sys.A.resize(sys.n_skel, sys.n_skel);
    sys.A.setFromTriplets(trips.begin(), trips.end());
    return sys;
}

// ---------------------------------------------------------------------------
// Dirichlet data along boundary chains
//
// A chain runs from one boundary vertex to another following the positive
// boundary orientation (counterclockwise on the outer cycle, clockwise on
// holes); from == to selects the entire boundary loop through that vertex.

struct DirichletChain {
    Point from, to;
    double value = 0.0;
};

namespace detail {

struct BoundaryStep {
    int to, elem, side;
};

inline std::map<int, BoundaryStep> boundary_next(const Mesh& m) {
    std::map<int, BoundaryStep> next;
    for (auto [e, k] : m.boundary_sides()) {
        int a = m.elements[e].v[k], b = m.elements[e].v[(k + 1) & 3];
        if (!next.emplace(a, BoundaryStep{b, e, k}).second)
            throw std::runtime_error("boundary walk: vertex with two outgoing boundary sides");
    }
    return next;
}

}  // namespace detail

// Resolves chains to fixed skeleton dofs: vertex dofs carry the chain value,
// side dofs on chain edges vanish (the trace of a constant is captured by the
// vertex functions alone).
inline void apply_chains(const HpSystem& sys, const std::vector<DirichletChain>& chains,
                         std::vector<char>& fixed, Eigen::VectorXd& value) {
    const Mesh& m = *sys.mesh;
    const int p = sys.opt.p;
    const int nv = static_cast<int>(m.vertices.size());
    const double tol = 1e-9 * (1.0 + m.diameter());
    fixed.assign(static_cast<std::size_t>(sys.n_skel), 0);
    value = Eigen::VectorXd::Zero(sys.n_skel);
    auto next = detail::boundary_next(m);
    auto fix = [&](int dof, double v) {
        if (fixed[static_cast<std::size_t>(dof)] && value[dof] != v)
            throw std::invalid_argument("Dirichlet chains assign conflicting values");
        fixed[static_cast<std::size_t>(dof)] = 1;
        value[dof] = v;
    };
    for (const DirichletChain& c : chains) {
        int va = m.find_vertex(c.from, tol);
        int vb = m.find_vertex(c.to, tol);
        if (va < 0 || vb < 0)
            throw std::invalid_argument("Dirichlet chain endpoint is not a mesh vertex");
        fix(va, c.value);
        int cur = va;
        std::size_t steps = 0;
        do {
            auto it = next.find(cur);
            if (it == next.end())
                throw std::invalid_argument("Dirichlet chain endpoint is not on the boundary");
            int edge = m.elem_edge[it->second.elem][it->second.side];
            for (int i = 0; i < p - 1; ++i) fix(nv + edge * (p - 1) + i, 0.0);
            cur = it->second.to;
            fix(cur, c.value);
            if (++steps > next.size())
                throw std::invalid_argument("Dirichlet chain endpoints lie on different boundary loops");
        } while (cur != vb);
    }
}

// ---------------------------------------------------------------------------
// Solve and energy

struct SolveStats {
    double energy = 0.0;            // assembled quadratic form
    double energy_quadrature = 0.0; // independent gradient-field integral
    double energy_mismatch = 0.0;
    double residual = 0.0;
    int n_dofs = 0;   // skeleton dofs
    int n_free = 0;
    int n_elements = 0;
    double u_min = 0.0, u_max = 0.0;  // solution range at quadrature points
};

struct Field {
    Eigen::VectorXd skel;                      // all skeleton dofs
    std::vector<Eigen::VectorXd> coeffs;       // per element: external + internal
};

inline Field solve_field(const HpSystem& sys, const std::vector<DirichletChain>& chains,
                         SolveStats* stats = nullptr) {
    const Mesh& mesh = *sys.mesh;
    const int p = sys.opt.p;
    std::vector<char> fixed;
    Eigen::VectorXd fixval;
    apply_chains(sys, chains, fixed, fixval);

    std::vector<int> to_free(static_cast<std::size_t>(sys.n_skel), -1);
    int nf = 0;
    for (int i = 0; i < sys.n_skel; ++i)
        if (!fixed[static_cast<std::size_t>(i)]) to_free[static_cast<std::size_t>(i)] = nf++;

    Eigen::VectorXd u = fixval;  // fixed entries hold data, free start at zero
    if (nf > 0) {
        Eigen::VectorXd coupling = sys.A * fixval;
        Eigen::VectorXd rhs(nf);
        for (int i = 0; i < sys.n_skel; ++i)
            if (to_free[static_cast<std::size_t>(i)] >= 0)
                rhs[to_free[static_cast<std::size_t>(i)]] = -coupling[i];
        std::vector<Eigen::Triplet<double>> trips;
        for (int col = 0; col < sys.A.outerSize(); ++col) {
            int fc = to_free[static_cast<std::size_t>(col)];
            if (fc < 0) continue;
            for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it) {
                int fr = to_free[static_cast<std::size_t>(it.row())];
                if (fr >= 0) trips.emplace_back(fr, fc, it.value());
            }
        }
        Eigen::SparseMatrix<double> Aff(nf, nf);
        Aff.setFromTriplets(trips.begin(), trips.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Aff);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("solve: factorization failed (singular system?)");
        Eigen::VectorXd x = ldlt.solve(rhs);
        x += ldlt.solve(rhs - Aff * x);  // one refinement pass
        double res = (Aff * x - rhs).norm();
        if (!(res <= 1e-11 * std::max(1.0, rhs.norm())))
            throw std::runtime_error("solve: residual " + std::to_string(res) + " too large");
        if (stats) stats->residual = res;
        for (int i = 0; i < sys.n_skel; ++i)
            if (to_free[static_cast<std::size_t>(i)] >= 0) u[i] = x[to_free[static_cast<std::size_t>(i)]];
    }

    Field f;
    f.skel = u;
    f.coeffs.resize(mesh.elements.size());
    double e1 = u.dot(sys.A * u);
    double e2 = 0.0;
    double umin = 1e300, umax = -1e300;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const int nE = external_count(p);
        Eigen::VectorXd ue(nE);
        for (int i = 0; i < nE; ++i) ue[i] = sys.gsign[e][i] * u[sys.gdof[e][i]];
        Eigen::VectorXd c(shape_count(p));
        c.head(nE) = ue;
        if (sys.R[e].size() > 0) c.tail(sys.R[e].rows()) = sys.R[e] * ue;
        const ShapeBasis& basis = shape_basis(p, sys.nq[e]);
        Eigen::VectorXd uv = basis.val.transpose() * c;
        Eigen::VectorXd gxi = basis.gx.transpose() * c;
        Eigen::VectorXd geta = basis.gy.transpose() * c;
        int nq = sys.nq[e];
        for (int j = 0; j < nq; ++j) {
            for (int i = 0; i < nq; ++i) {
                int q = j * nq + i;
                Point x;
                Mat2 jac;
                mesh.map_eval(static_cast<int>(e), basis.rule.nodes[i], basis.rule.nodes[j], &x, &jac);
                double det = jac.det();
                double ux = (jac.yy * gxi[q] - jac.yx * geta[q]) / det;
                double uy = (-jac.xy * gxi[q] + jac.xx * geta[q]) / det;
                e2 += basis.rule.weights[i] * basis.rule.weights[j] * det * (ux * ux + uy * uy);
                umin = std::min(umin, uv[q]);
                umax = std::max(umax, uv[q]);
            }
        }
        f.coeffs[e] = std::move(c);
    }
    double mismatch = std::abs(e1 - e2);
    if (!(mismatch <= 1e-11 * std::max(1.0, std::abs(e1))))
        throw std::runtime_error("solve: energy routes disagree by " + std::to_string(mismatch));
    if (stats) {
        stats->energy = e1;
        stats->energy_quadrature = e2;
        stats->energy_mismatch = mismatch;
        stats->n_dofs = sys.n_skel;
        stats->n_free = nf;
        stats->n_elements = static_cast<int>(mesh.elements.size());
        stats->u_min = umin;
        stats->u_max = umax;
    }
    return f;
}

inline double dirichlet_energy(const HpSystem& sys, const std::vector<DirichletChain>& chains,
                               SolveStats* stats = nullptr, Field* field = nullptr) {
    SolveStats local;
    Field f = solve_field(sys, chains, &local);
    if (stats) *stats = local;
    if (field) *field = std::move(f);
    return local.energy;
}

// ---------------------------------------------------------------------------
// Problem drivers

struct ModulusResult {
    double modulus = 0.0;
    std::optional<double> conjugate_modulus;
    std::optional<double> reciprocal_error;  // |M * M_conjugate - 1|
    int n_dofs = 0;
    int n_elements = 0;
    double energy_mismatch = 0.0;
    double max_principle_excess = 0.0;  // how far u leaves [0, 1]
};

// Boundary conditions of the primal problem: u = 1 on the arc (z4, z1),
// u = 0 on (z2, z3), natural elsewhere.  The conjugate problem rotates the
// marked tuple by one, exchanging Dirichlet and Neumann arcs.
inline std::vector<DirichletChain> modulus_chains(const std::array<Point, 4>& z) {
    return {{z[3], z[0], 1.0}, {z[1], z[2], 0.0}};
}

inline ModulusResult quad_modulus(const QuadrilateralProblem& q, const HpSystem& sys,
                                  bool reciprocal = true, Field* primal = nullptr) {
    ModulusResult out;
    SolveStats st;
    Field f = solve_field(sys, modulus_chains(q.marked), &st);
    out.modulus = st.energy;
    out.n_dofs = st.n_dofs;
    out.n_elements = st.n_elements;
    out.energy_mismatch = st.energy_mismatch;
    out.max_principle_excess = std::max(0.0, std::max(st.u_max - 1.0, -st.u_min));
    if (primal) *primal = std::move(f);
    if (reciprocal) {
        QuadrilateralProblem c = conjugate_problem(q);
        SolveStats st2;
        solve_field(sys, modulus_chains(c.marked), &st2);
        out.conjugate_modulus = st2.energy;
        out.reciprocal_error = std::abs(st.energy * st2.energy - 1.0);
        out.energy_mismatch = std::max(out.energy_mismatch, st2.energy_mismatch);
        out.max_principle_excess = std::max(
            out.max_principle_excess, std::max(0.0, std::max(st2.u_max - 1.0, -st2.u_min)));
    }
    return out;
}

// Capacity of a ring domain: u = 1 on the inner boundary loop, u = 0 on the
// outer one; the capacity is the Dirichlet energy.
inline double ring_capacity(const RingProblem& r, const HpSystem& sys,
                            SolveStats* stats = nullptr, Field* field = nullptr) {
    if (r.domain.inner.empty())
        throw std::invalid_argument("ring_capacity: domain has no inner boundary");
    std::vector<DirichletChain> chains = {{r.domain.outer[0].start(), r.domain.outer[0].start(), 0.0},
                                          {r.domain.inner[0].start(), r.domain.inner[0].start(), 1.0}};
    return dirichlet_energy(sys, chains, stats, field);
}

// ---------------------------------------------------------------------------
// Field sampling (per-element reference lattice) for exports

struct FieldSample {
    int elem = 0;
    double xi = 0.0, eta = 0.0;
    Point x;
    double u = 0.0, ux = 0.0, uy = 0.0;
};

inline std::vector<FieldSample> sample_field(const HpSystem& sys, const Field& f, int n) {
    if (n < 2) throw std::invalid_argument("sample_field: need at least 2 points per direction");
    const Mesh& mesh = *sys.mesh;
    const int p = sys.opt.p;
    const int nt = shape_count(p);
    std::vector<double> val(nt), gx(nt), gy(nt);
    std::vector<FieldSample> out;
    out.reserve(mesh.elements.size() * static_cast<std::size_t>(n) * n);
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                FieldSample s;
                s.elem = static_cast<int>(e);
                s.xi = -1.0 + 2.0 * i / (n - 1);
                s.eta = -1.0 + 2.0 * j / (n - 1);
                Mat2 jac;
                mesh.map_eval(static_cast<int>(e), s.xi, s.eta, &s.x, &jac);
                shape_eval(p, s.xi, s.eta, val.data(), gx.data(), gy.data());
                double uu = 0.0, uxi = 0.0, ueta = 0.0;
                for (int k = 0; k < nt; ++k) {
                    uu += f.coeffs[e][k] * val[k];
                    uxi += f.coeffs[e][k] * gx[k];
                    ueta += f.coeffs[e][k] * gy[k];
                }
                double det = jac.det();
                s.u = uu;
                s.ux = (jac.yy * uxi - jac.yx * ueta) / det;
                s.uy = (-jac.xy * uxi + jac.xx * ueta) / det;
                out.push_back(s);
            }
        }
    }
    return out;
}

}  // namespace conmod
