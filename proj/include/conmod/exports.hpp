#pragma once

// Plain-text exports of solution fields and meshes, for plotting and for
// inspecting what the solver actually assembled.

#include <iomanip>
#include <ostream>

#include "conmod/fem.hpp"

namespace conmod {

// One "x y u" line per sample point.  Points are a per-element n x n lattice
// in reference coordinates pushed through each element's geometry map, so the
// cloud covers the whole domain (curved elements included) without any point
// location.  Lines are grouped by element in element order; a blank line
// separates elements so gnuplot-style consumers can draw surface patches.
inline void write_field(std::ostream& os, const HpSystem& sys, const Field& f, int n = 8) {
    const std::vector<FieldSample> samples = sample_field(sys, f, n);
    os << std::setprecision(17);
    int current = samples.empty() ? 0 : samples.front().elem;
    for (const FieldSample& s : samples) {
        if (s.elem != current) {
            os << "\n";
            current = s.elem;
        }
        os << s.x.real() << " " << s.x.imag() << " " << s.u << "\n";
    }
}

// Mesh dump: vertex coordinates, element connectivity with per-side edge ids
// and orientation parity, per-element refinement layer, and which sides carry
// a curved description.  Enough to reconstruct the skeleton and audit the
// geometric grading.
inline void write_mesh(std::ostream& os, const Mesh& mesh) {
    os << std::setprecision(17);
    os << "vertices " << mesh.vertices.size() << "\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        os << i << " " << mesh.vertices[i].real() << " " << mesh.vertices[i].imag() << "\n";
    os << "edges " << mesh.edges.size() << "\n";
    for (std::size_t i = 0; i < mesh.edges.size(); ++i)
        os << i << " " << mesh.edges[i][0] << " " << mesh.edges[i][1] << "\n";
    os << "elements " << mesh.elements.size() << "\n";
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const Element& el = mesh.elements[e];
        os << e << " v";
        for (int k = 0; k < 4; ++k) os << " " << el.v[k];
        os << " edge";
        for (int k = 0; k < 4; ++k) os << " " << mesh.elem_edge[e][k];
        os << " parity";
        for (int k = 0; k < 4; ++k) os << " " << mesh.elem_parity[e][k];
        os << " layer " << el.layer << " curved";
        for (int k = 0; k < 4; ++k) os << " " << (el.side[k] ? 1 : 0);
        os << "\n";
    }
}

}  // namespace conmod
