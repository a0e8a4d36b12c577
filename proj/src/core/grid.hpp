#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "core/error.hpp"

namespace seglab {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Uniform node-centered grid on [x0,x1] (1D) or [x0,x1]x[y0,y1] (2D).
/// Nodes include the boundary; spacing is (b-a)/(n-1) per axis.
struct Grid {
    int dim = 2;
    int nx = 0;
    int ny = 1; // 1 in 1D
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 0.0;
    double hx = 0.0;
    double hy = 0.0;

    int node_count() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }

    double x(int i) const { return (i == nx - 1) ? x1 : x0 + i * hx; }
    double y(int j) const {
        if (dim == 1) return 0.0;
        return (j == ny - 1) ? y1 : y0 + j * hy;
    }

    bool is_boundary(int i, int j) const {
        if (dim == 1) return i == 0 || i == nx - 1;
        return i == 0 || i == nx - 1 || j == 0 || j == ny - 1;
    }

    int boundary_count() const {
        if (dim == 1) return 2;
        return 2 * nx + 2 * ny - 4;
    }
    int interior_count() const { return node_count() - boundary_count(); }

    /// Row-major list of boundary node indices (deterministic order).
    std::vector<int> boundary_indices() const;

    /// Edge membership bitmask for a node: 1 x=x0, 2 x=x1, 4 y=y0, 8 y=y1.
    unsigned edge_mask(int i, int j) const {
        unsigned m = 0;
        if (i == 0) m |= 1u;
        if (i == nx - 1) m |= 2u;
        if (dim == 2) {
            if (j == 0) m |= 4u;
            if (j == ny - 1) m |= 8u;
        }
        return m;
    }

    /// Nearest node to a point (clamped to the grid).
    std::array<int, 2> nearest_node(double px, double py) const;

    bool operator==(const Grid& o) const {
        return dim == o.dim && nx == o.nx && ny == o.ny && x0 == o.x0 &&
               x1 == o.x1 && y0 == o.y0 && y1 == o.y1;
    }
};

Grid make_grid_1d(double a, double b, int n);
Grid make_grid_2d(double x0, double x1, double y0, double y1, int nx, int ny);

/// One real value per grid node, row-major (j*nx + i).
struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), v(static_cast<size_t>(g.node_count()), fill) {}

    double& at(int i, int j) { return v[static_cast<size_t>(grid.index(i, j))]; }
    double at(int i, int j) const { return v[static_cast<size_t>(grid.index(i, j))]; }

    double max_abs() const;
    double min_value() const;
    double max_value() const;

    /// Throws invariant_violation if any value is NaN or infinite.
    void ensure_finite(const char* what) const;
};

template <typename F>
ScalarField sample(const Grid& g, F&& f) {
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i, j) = f(g.x(i), g.y(j));
    return out;
}

} // namespace seglab
