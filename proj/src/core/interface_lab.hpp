#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "core/partition.hpp"
#include "core/systems.hpp"

namespace seglab {

enum class SourceTag { SysA, SysB, Predicted };

const char* to_string(SourceTag tag);

/// Free boundary sample of one component: midpoints of grid edges whose
/// endpoint values straddle the activity threshold, plus the node activity
/// mask (u > delta) the points were derived from.
struct InterfaceSet {
    int component = 0; // 1..3
    SourceTag source = SourceTag::SysA;
    Grid grid;
    std::vector<Point> points;
    std::vector<std::uint8_t> active;
};

std::array<InterfaceSet, 3> extract_interfaces(const TripleField& t, double delta,
                                               SourceTag source);

struct ComparisonMetrics {
    double hausdorff = 0.0;
    double mean_nn = 0.0; // mean nearest-neighbor distance (symmetric)
    double area_sym_diff = 0.0; // node-counted area of activity mismatch
    bool empty_mismatch = false; // one side empty -> distances are +inf
};

/// Symmetric point-set metrics between two interface sets of the same
/// component. Empty vs empty compares as all-zero; empty vs non-empty yields
/// infinite distances with the mismatch flag set.
ComparisonMetrics compare(const InterfaceSet& a, const InterfaceSet& b);

struct ComponentDiagnostics {
    double sandwich_violation = 0.0; // max of (-u_i) and (u_i - h_i)
    double bulk_max_laplacian = 0.0; // over nodes with u_i and neighbors > sqrt(eps)
    int bulk_nodes = 0;
};

struct PairDiagnostics {
    int i = 0, j = 0; // component pair, 1-based
    double max_dev_from_h = 0.0; // max |(u_i - u_j) - h_ij| over mutual bulk
    int bulk_nodes = 0;
};

struct Diagnostics {
    std::array<ComponentDiagnostics, 3> component;
    std::array<PairDiagnostics, 3> pair;
    double product_l2 = 0.0; // int (u1 u2 u3)^2
    double boundary_mismatch = 0.0; // max |u_i - phi_i| over boundary nodes
};

/// The solution health checks: sandwich bounds against the harmonic
/// extensions, penalty integral, bulk discrete harmonicity, and deviation of
/// pairwise differences from the harmonic differences.
Diagnostics diagnostics(const TripleField& t,
                        const std::array<ScalarField, 3>& h_ext,
                        const HarmonicTriple& h,
                        const std::array<std::vector<double>, 3>& phi,
                        double epsilon);

} // namespace seglab
