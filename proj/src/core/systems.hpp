#pragma once

#include <array>
#include <vector>

#include "core/elliptic.hpp"

namespace seglab {

enum class SystemTag { A, B, LimitA };

const char* to_string(SystemTag tag);

struct EpsSolveConfig {
    double epsilon = 1e-10; // target penalty parameter
    double eps_start = 1e-2; // first continuation stage
    double eps_ratio = 0.1; // geometric stage ratio
    double outer_tol = 1e-10; // max node update across one outer sweep
    int outer_max = 20000; // outer sweep cap per stage
    LinearSolveConfig inner;
};

struct StageStat {
    double epsilon = 0.0;
    int outer_iters = 0;
    double final_update = 0.0;
    double product_l2 = 0.0; // integral of (u1 u2 u3)^2
    std::vector<double> energy_trace; // edge-form energy per outer sweep
};

struct TripleField {
    std::array<ScalarField, 3> u;
    double epsilon = 0.0;
    SystemTag system = SystemTag::A;
    int iters = 0; // total outer sweeps across all stages
    double final_update = 0.0;
    std::array<double, 3> system_residual{0.0, 0.0, 0.0}; // Delta-metric
    std::vector<StageStat> stages;

    const Grid& grid() const { return u[0].grid; }
};

struct EnergyReport {
    double dirichlet = 0.0; // sum_i int |grad u_i|^2
    double penalty = 0.0; // (1/eps) int (u1 u2 u3)^2
    double total = 0.0;
    double product_l2 = 0.0; // int (u1 u2 u3)^2
};

/// Coupled solve of  Lap(u_i) = (1/eps) u1 u2 u3  by eps-continuation with
/// outer Gauss-Seidel over components; each step freezes the partner product
/// into a nonnegative screening coefficient.
TripleField solve_system_a(const BoundarySpec& spec, const Grid& grid,
                           const EpsSolveConfig& cfg = {});

/// Same outer scheme for  Lap(u_i) = (u_i/eps) prod_{j!=i} u_j^2 , the
/// Euler-Lagrange system of the penalized Dirichlet energy. Each component
/// step is an exact coordinate descent, so the edge-form energy trace is
/// non-increasing within every stage.
TripleField solve_system_b(const BoundarySpec& spec, const Grid& grid,
                           const EpsSolveConfig& cfg = {});

/// Closed-form limit of System A:
///   u1 = max(max(h12,h13),0),  u2 = u1 - h12,  u3 = u1 - h13.
/// The construction identities (u2 == u1 - h12, u3 == u1 - h13,
/// u2 - u3 == h23, u1*u2*u3 == 0) hold exactly in floating point.
TripleField limit_a_explicit(const HarmonicTriple& h);

/// Central-difference / trapezoid energy of a triple at a given epsilon.
/// epsilon <= 0 reports a zero penalty (limit objects).
EnergyReport energy(const TripleField& t, double epsilon);

/// Trapezoid integral of (u1 u2 u3)^2.
double product_l2_integral(const std::array<ScalarField, 3>& u);

/// Edge-difference Dirichlet form plus penalty; the Lyapunov function of the
/// System B iteration.
double edge_energy(const std::array<ScalarField, 3>& u, double epsilon);

/// Exact limiting triples of the interval example on [0,1]:
///   A: ((1-2x)+, (2x-1)+, max(1-x,x));  B: ((1-2x)+, (2x-1)+, 1).
struct LineExample {
    TripleField limit_a;
    TripleField limit_b;
};
LineExample line_example(int n);

} // namespace seglab
