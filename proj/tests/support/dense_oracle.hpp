// Test-only reference solver: assembles the full stencil system of
// Lap(u) - c*u = f with Dirichlet rows and solves it by dense Gaussian
// elimination with partial pivoting. Independent of the library's solve path.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/grid.hpp"

namespace seglab::testsupport {

inline ScalarField solve_dense_stencil(const Grid& grid, const ScalarField* c,
                                       const ScalarField* f,
                                       const std::vector<double>& g) {
    const int n = grid.node_count();
    std::vector<double> A(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    std::vector<double> b(static_cast<size_t>(n), 0.0);
    auto at = [&](int r, int col) -> double& {
        return A[static_cast<size_t>(r) * static_cast<size_t>(n) + static_cast<size_t>(col)];
    };
    const double ax = 1.0 / (grid.hx * grid.hx);
    const double ay = grid.dim == 2 ? 1.0 / (grid.hy * grid.hy) : 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            int r = grid.index(i, j);
            if (grid.is_boundary(i, j)) {
                at(r, r) = 1.0;
                b[static_cast<size_t>(r)] = g[static_cast<size_t>(r)];
                continue;
            }
            double cv = c ? c->v[static_cast<size_t>(r)] : 0.0;
            at(r, r) = -(2.0 * ax + 2.0 * ay + cv);
            at(r, grid.index(i - 1, j)) = ax;
            at(r, grid.index(i + 1, j)) = ax;
            if (grid.dim == 2) {
                at(r, grid.index(i, j - 1)) = ay;
                at(r, grid.index(i, j + 1)) = ay;
            }
            b[static_cast<size_t>(r)] = f ? f->v[static_cast<size_t>(r)] : 0.0;
        }
    }

    // partial-pivoted elimination
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(at(k, k));
        for (int r = k + 1; r < n; ++r) {
            double v = std::abs(at(r, k));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("dense oracle: singular matrix");
        if (piv != k) {
            for (int col = 0; col < n; ++col) std::swap(at(k, col), at(piv, col));
            std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(piv)]);
        }
        for (int r = k + 1; r < n; ++r) {
            double w = at(r, k) / at(k, k);
            if (w == 0.0) continue;
            for (int col = k; col < n; ++col) at(r, col) -= w * at(k, col);
            b[static_cast<size_t>(r)] -= w * b[static_cast<size_t>(k)];
        }
    }
    ScalarField u(grid);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<size_t>(r)];
        for (int col = r + 1; col < n; ++col)
            s -= at(r, col) * u.v[static_cast<size_t>(col)];
        u.v[static_cast<size_t>(r)] = s / at(r, r);
    }
    return u;
}

} // namespace seglab::testsupport
