#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace seglab {

std::vector<int> Grid::boundary_indices() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(boundary_count()));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (is_boundary(i, j)) out.push_back(index(i, j));
    return out;
}

std::array<int, 2> Grid::nearest_node(double px, double py) const {
    int i = static_cast<int>(std::lround((px - x0) / hx));
    i = std::clamp(i, 0, nx - 1);
    int j = 0;
    if (dim == 2) {
        j = static_cast<int>(std::lround((py - y0) / hy));
        j = std::clamp(j, 0, ny - 1);
    }
    return {i, j};
}

Grid make_grid_1d(double a, double b, int n) {
    require(n >= 3, ErrorKind::invalid_argument,
            "grid: need at least 3 nodes per axis, got " + std::to_string(n));
    require(b > a, ErrorKind::invalid_argument, "grid: inverted or empty interval");
    Grid g;
    g.dim = 1;
    g.nx = n;
    g.ny = 1;
    g.x0 = a;
    g.x1 = b;
    g.y0 = g.y1 = 0.0;
    g.hx = (b - a) / (n - 1);
    g.hy = 0.0;
    return g;
}

Grid make_grid_2d(double x0, double x1, double y0, double y1, int nx, int ny) {
    require(nx >= 3 && ny >= 3, ErrorKind::invalid_argument,
            "grid: need at least 3 nodes per axis");
    require(x1 > x0 && y1 > y0, ErrorKind::invalid_argument,
            "grid: inverted or empty extents");
    Grid g;
    g.dim = 2;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    g.hx = (x1 - x0) / (nx - 1);
    g.hy = (y1 - y0) / (ny - 1);
    return g;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double ScalarField::min_value() const {
    double m = v.empty() ? 0.0 : v[0];
    for (double x : v) m = std::min(m, x);
    return m;
}

double ScalarField::max_value() const {
    double m = v.empty() ? 0.0 : v[0];
    for (double x : v) m = std::max(m, x);
    return m;
}

void ScalarField::ensure_finite(const char* what) const {
    for (size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k])) {
            int i = static_cast<int>(k) % grid.nx;
            int j = static_cast<int>(k) / grid.nx;
            fail(ErrorKind::invariant_violation,
                 std::string(what) + ": non-finite value at node (" +
                     std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

} // namespace seglab
