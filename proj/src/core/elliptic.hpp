#pragma once

#include <vector>

#include "core/boundary.hpp"
#include "core/grid.hpp"

namespace seglab {

struct LinearSolveConfig {
    double tol = 1e-10; // relative residual tolerance
    double tol_abs = 0.0; // >0: absolute Delta-metric residual target instead
    int max_iter = 200000; // sweep cap for the iterative 2D path
    double omega = 0.0; // SOR relaxation in (0,2); 0 selects the auto tuning
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0; // final residual, Delta metric
};

/// Discrete Laplacian (3/5-point stencil, 1/h^2 scaling) at an interior node.
double discrete_laplacian(const ScalarField& u, int i, int j);

/// Max interior residual of  Lap(u) - c*u - f  in the Delta metric.
/// Null c or f mean identically zero.
double stencil_residual(const ScalarField& u, const ScalarField* c,
                        const ScalarField* f);

/// Dirichlet solve of Lap(u) = 0. boundary_values is node-indexed; only
/// boundary entries are read and they are imposed exactly.
ScalarField harmonic_extend(const std::vector<double>& boundary_values,
                            const Grid& grid, const LinearSolveConfig& cfg = {},
                            SolveStats* stats = nullptr);

/// Dirichlet solve of the screened problem Lap(u) - c*u = f with c >= 0.
/// 1D grids use a direct tridiagonal solve, 2D grids red-black SOR.
ScalarField screened_solve(const ScalarField& c, const ScalarField& f,
                           const std::vector<double>& boundary_values,
                           const Grid& grid, const LinearSolveConfig& cfg = {},
                           const ScalarField* warm_start = nullptr,
                           SolveStats* stats = nullptr);

/// Harmonic extensions of the pairwise trace differences. h12 and h13 are
/// solved; h23 is their node-wise difference h13 - h12, so the cocycle
/// identity (h13 - h12) - h23 holds exactly and sign tests on h23 agree
/// bit-for-bit with the explicit limit construction.
struct HarmonicTriple {
    ScalarField h12, h13, h23;
};

HarmonicTriple harmonic_differences(const BoundarySpec& spec, const Grid& grid,
                                    const LinearSolveConfig& cfg = {});

/// Same construction from raw Dirichlet data for phi1-phi2 and phi1-phi3.
HarmonicTriple harmonic_triple_from_data(const std::vector<double>& data12,
                                         const std::vector<double>& data13,
                                         const Grid& grid,
                                         const LinearSolveConfig& cfg = {});

/// max node |(h13 - h12) - h23|.
double cocycle_residual(const HarmonicTriple& h);

} // namespace seglab
