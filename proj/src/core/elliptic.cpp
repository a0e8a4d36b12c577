#include "core/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace seglab {

namespace {

void check_config(const LinearSolveConfig& cfg) {
    require(cfg.tol > 0.0, ErrorKind::invalid_argument, "solver: tol must be positive");
    require(cfg.omega == 0.0 || (cfg.omega > 0.0 && cfg.omega < 2.0),
            ErrorKind::invalid_argument, "solver: omega must lie in (0,2)");
    require(cfg.max_iter > 0, ErrorKind::invalid_argument,
            "solver: max_iter must be positive");
}

double boundary_max_abs(const std::vector<double>& g, const Grid& grid) {
    double m = 0.0;
    for (int idx : grid.boundary_indices()) {
        double v = g[static_cast<size_t>(idx)];
        require(std::isfinite(v), ErrorKind::invalid_argument,
                "solver: non-finite boundary value");
        m = std::max(m, std::abs(v));
    }
    return m;
}

// Transfinite (Coons) blend of the boundary data; boundary nodes are exact.
ScalarField initial_guess(const std::vector<double>& g, const Grid& grid) {
    ScalarField u(grid);
    if (grid.dim == 1) {
        double gl = g[0];
        double gr = g[static_cast<size_t>(grid.nx - 1)];
        for (int i = 0; i < grid.nx; ++i) {
            double s = static_cast<double>(i) / (grid.nx - 1);
            u.at(i, 0) = (1.0 - s) * gl + s * gr;
        }
        return u;
    }
    const int nx = grid.nx, ny = grid.ny;
    auto G = [&](int i, int j) { return g[static_cast<size_t>(grid.index(i, j))]; };
    for (int j = 0; j < ny; ++j) {
        double t = static_cast<double>(j) / (ny - 1);
        for (int i = 0; i < nx; ++i) {
            double s = static_cast<double>(i) / (nx - 1);
            double v = (1.0 - s) * G(0, j) + s * G(nx - 1, j) +
                       (1.0 - t) * G(i, 0) + t * G(i, ny - 1) -
                       ((1.0 - s) * (1.0 - t) * G(0, 0) + s * (1.0 - t) * G(nx - 1, 0) +
                        (1.0 - s) * t * G(0, ny - 1) + s * t * G(nx - 1, ny - 1));
            u.at(i, j) = v;
        }
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (grid.is_boundary(i, j)) u.at(i, j) = G(i, j);
    return u;
}

// Direct tridiagonal solve of the 1D stencil system.
void solve_thomas(ScalarField& u, const ScalarField* c, const ScalarField* f,
                  const std::vector<double>& g) {
    const Grid& grid = u.grid;
    const int n = grid.nx;
    const double ax = 1.0 / (grid.hx * grid.hx);
    const int m = n - 2;
    std::vector<double> diag(static_cast<size_t>(m)), rhs(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
        int i = k + 1;
        double cv = c ? c->v[static_cast<size_t>(i)] : 0.0;
        diag[static_cast<size_t>(k)] = 2.0 * ax + cv;
        double fv = f ? f->v[static_cast<size_t>(i)] : 0.0;
        rhs[static_cast<size_t>(k)] = -fv;
    }
    rhs[0] += ax * g[0];
    rhs[static_cast<size_t>(m - 1)] += ax * g[static_cast<size_t>(n - 1)];
    // forward elimination; both off-diagonals are -ax
    for (int k = 1; k < m; ++k) {
        double w = ax / diag[static_cast<size_t>(k - 1)];
        diag[static_cast<size_t>(k)] -= w * ax;
        rhs[static_cast<size_t>(k)] += w * rhs[static_cast<size_t>(k - 1)];
    }
    // back substitution
    u.v[0] = g[0];
    u.v[static_cast<size_t>(n - 1)] = g[static_cast<size_t>(n - 1)];
    u.v[static_cast<size_t>(n - 2)] =
        rhs[static_cast<size_t>(m - 1)] / diag[static_cast<size_t>(m - 1)];
    for (int k = m - 2; k >= 0; --k) {
        u.v[static_cast<size_t>(k + 1)] =
            (rhs[static_cast<size_t>(k)] + ax * u.v[static_cast<size_t>(k + 2)]) /
            diag[static_cast<size_t>(k)];
    }
}

double auto_omega(const Grid& grid, const ScalarField* c) {
    const double ax = 1.0 / (grid.hx * grid.hx);
    const double ay = grid.dim == 2 ? 1.0 / (grid.hy * grid.hy) : 0.0;
    double rho = ax * std::cos(std::numbers::pi * grid.hx / (grid.x1 - grid.x0));
    if (grid.dim == 2)
        rho += ay * std::cos(std::numbers::pi * grid.hy / (grid.y1 - grid.y0));
    rho /= (ax + ay);
    if (c) {
        double cmin = 0.0;
        bool first = true;
        for (int j = 1; j < grid.ny - 1; ++j)
            for (int i = 1; i < grid.nx - 1; ++i) {
                double v = c->at(i, j);
                cmin = first ? v : std::min(cmin, v);
                first = false;
            }
        if (!first && cmin > 0.0)
            rho *= (2.0 * ax + 2.0 * ay) / (2.0 * ax + 2.0 * ay + cmin);
    }
    rho = std::clamp(rho, 0.0, 1.0 - 1e-15);
    double omega = 2.0 / (1.0 + std::sqrt(1.0 - rho * rho));
    return std::clamp(omega, 1.0, 1.97);
}

double residual_2d(const ScalarField& u, const ScalarField* c,
                   const ScalarField* f) {
    const Grid& grid = u.grid;
    const double ax = 1.0 / (grid.hx * grid.hx);
    const double ay = 1.0 / (grid.hy * grid.hy);
    const int nx = grid.nx;
    double rmax = 0.0;
    for (int j = 1; j < grid.ny - 1; ++j) {
        for (int i = 1; i < nx - 1; ++i) {
            size_t k = static_cast<size_t>(j * nx + i);
            double cv = c ? c->v[k] : 0.0;
            double fv = f ? f->v[k] : 0.0;
            double r = ax * (u.v[k - 1] + u.v[k + 1]) +
                       ay * (u.v[k - static_cast<size_t>(nx)] + u.v[k + static_cast<size_t>(nx)]) -
                       (2.0 * ax + 2.0 * ay + cv) * u.v[k] - fv;
            rmax = std::max(rmax, std::abs(r));
        }
    }
    return rmax;
}

void solve_rbsor(ScalarField& u, const ScalarField* c, const ScalarField* f,
                 const LinearSolveConfig& cfg, double tol_abs, SolveStats* stats) {
    const Grid& grid = u.grid;
    const double ax = 1.0 / (grid.hx * grid.hx);
    const double ay = 1.0 / (grid.hy * grid.hy);
    const int nx = grid.nx, ny = grid.ny;
    const double omega = cfg.omega > 0.0 ? cfg.omega : auto_omega(grid, c);

    double res = residual_2d(u, c, f);
    int sweep = 0;
    while (res > tol_abs && sweep < cfg.max_iter) {
        for (int color = 0; color < 2; ++color) {
            for (int j = 1; j < ny - 1; ++j) {
                int i0 = 1 + ((1 + j + color) & 1);
                for (int i = i0; i < nx - 1; i += 2) {
                    size_t k = static_cast<size_t>(j * nx + i);
                    double cv = c ? c->v[k] : 0.0;
                    double fv = f ? f->v[k] : 0.0;
                    double gs = (ax * (u.v[k - 1] + u.v[k + 1]) +
                                 ay * (u.v[k - static_cast<size_t>(nx)] +
                                       u.v[k + static_cast<size_t>(nx)]) -
                                 fv) /
                                (2.0 * ax + 2.0 * ay + cv);
                    u.v[k] = (1.0 - omega) * u.v[k] + omega * gs;
                }
            }
        }
        ++sweep;
        if ((sweep & 3) == 0 || sweep >= cfg.max_iter) {
            res = residual_2d(u, c, f);
            if (!std::isfinite(res))
                fail(ErrorKind::convergence_failure,
                     "solver: residual became non-finite at sweep " +
                         std::to_string(sweep));
        }
    }
    res = residual_2d(u, c, f);
    if (stats) {
        stats->iterations = sweep;
        stats->residual = res;
    }
    if (res > tol_abs) {
        std::ostringstream os;
        os << "solver: no convergence within " << cfg.max_iter
           << " sweeps (residual " << res << ", target " << tol_abs << ")";
        fail(ErrorKind::convergence_failure, os.str());
    }
}

ScalarField solve_kernel(const ScalarField* c, const ScalarField* f,
                         const std::vector<double>& g, const Grid& grid,
                         const LinearSolveConfig& cfg, const ScalarField* warm,
                         SolveStats* stats) {
    check_config(cfg);
    require(g.size() == static_cast<size_t>(grid.node_count()),
            ErrorKind::invalid_argument,
            "solver: boundary vector size does not match the grid");
    if (c) {
        require(c->grid == grid, ErrorKind::invalid_argument, "solver: c grid mismatch");
        c->ensure_finite("screened coefficient");
        require(c->min_value() >= 0.0, ErrorKind::invalid_argument,
                "solver: negative screening coefficient rejected");
    }
    if (f) {
        require(f->grid == grid, ErrorKind::invalid_argument, "solver: f grid mismatch");
        f->ensure_finite("right-hand side");
    }
    double gmax = boundary_max_abs(g, grid);
    double fmax = f ? f->max_abs() : 0.0;

    ScalarField u = warm ? *warm : initial_guess(g, grid);
    if (warm) {
        require(warm->grid == grid, ErrorKind::invalid_argument,
                "solver: warm start grid mismatch");
        for (int idx : grid.boundary_indices())
            u.v[static_cast<size_t>(idx)] = g[static_cast<size_t>(idx)];
    }

    if (grid.dim == 1) {
        solve_thomas(u, c, f, g);
        if (stats) {
            stats->iterations = 1;
            stats->residual = stencil_residual(u, c, f);
        }
    } else {
        double tol_abs = cfg.tol_abs;
        if (tol_abs <= 0.0) {
            // Data scale: |u| <= |g| + C|f| with C a coarse Green bound.
            double lx = grid.x1 - grid.x0, ly = grid.y1 - grid.y0;
            double green = (lx * lx + ly * ly) / 16.0;
            double scale = gmax + green * fmax;
            if (scale <= 0.0) scale = 1.0;
            tol_abs = cfg.tol * scale;
        }
        solve_rbsor(u, c, f, cfg, tol_abs, stats);
    }
    u.ensure_finite("solver output");
    return u;
}

} // namespace

double discrete_laplacian(const ScalarField& u, int i, int j) {
    const Grid& grid = u.grid;
    const double ax = 1.0 / (grid.hx * grid.hx);
    if (grid.dim == 1)
        return ax * (u.at(i - 1, 0) - 2.0 * u.at(i, 0) + u.at(i + 1, 0));
    const double ay = 1.0 / (grid.hy * grid.hy);
    return ax * (u.at(i - 1, j) - 2.0 * u.at(i, j) + u.at(i + 1, j)) +
           ay * (u.at(i, j - 1) - 2.0 * u.at(i, j) + u.at(i, j + 1));
}

double stencil_residual(const ScalarField& u, const ScalarField* c,
                        const ScalarField* f) {
    const Grid& grid = u.grid;
    if (grid.dim == 2) return residual_2d(u, c, f);
    double rmax = 0.0;
    for (int i = 1; i < grid.nx - 1; ++i) {
        double cv = c ? c->v[static_cast<size_t>(i)] : 0.0;
        double fv = f ? f->v[static_cast<size_t>(i)] : 0.0;
        double r = discrete_laplacian(u, i, 0) - cv * u.v[static_cast<size_t>(i)] - fv;
        rmax = std::max(rmax, std::abs(r));
    }
    return rmax;
}

ScalarField harmonic_extend(const std::vector<double>& boundary_values,
                            const Grid& grid, const LinearSolveConfig& cfg,
                            SolveStats* stats) {
    return solve_kernel(nullptr, nullptr, boundary_values, grid, cfg, nullptr, stats);
}

ScalarField screened_solve(const ScalarField& c, const ScalarField& f,
                           const std::vector<double>& boundary_values,
                           const Grid& grid, const LinearSolveConfig& cfg,
                           const ScalarField* warm_start, SolveStats* stats) {
    return solve_kernel(&c, &f, boundary_values, grid, cfg, warm_start, stats);
}

HarmonicTriple harmonic_triple_from_data(const std::vector<double>& data12,
                                         const std::vector<double>& data13,
                                         const Grid& grid,
                                         const LinearSolveConfig& cfg) {
    HarmonicTriple h;
    h.h12 = harmonic_extend(data12, grid, cfg);
    h.h13 = harmonic_extend(data13, grid, cfg);
    h.h23 = ScalarField(grid);
    for (size_t k = 0; k < h.h23.v.size(); ++k)
        h.h23.v[k] = h.h13.v[k] - h.h12.v[k];
    return h;
}

HarmonicTriple harmonic_differences(const BoundarySpec& spec, const Grid& grid,
                                    const LinearSolveConfig& cfg) {
    BoundarySample s = sample_boundary(spec, grid);
    std::vector<double> d12(s.phi[0].size()), d13(s.phi[0].size());
    for (size_t k = 0; k < d12.size(); ++k) {
        d12[k] = s.phi[0][k] - s.phi[1][k];
        d13[k] = s.phi[0][k] - s.phi[2][k];
    }
    return harmonic_triple_from_data(d12, d13, grid, cfg);
}

double cocycle_residual(const HarmonicTriple& h) {
    double m = 0.0;
    for (size_t k = 0; k < h.h12.v.size(); ++k)
        m = std::max(m, std::abs((h.h13.v[k] - h.h12.v[k]) - h.h23.v[k]));
    return m;
}

} // namespace seglab
