#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace seglab {

/// Dirichlet trace triple (phi1, phi2, phi3) on the domain boundary.
/// The evaluator receives the point and the edge-membership bitmask of the
/// node (see Grid::edge_mask); corner nodes carry two bits.
///
/// Admissible data: phi_i >= 0 and phi1*phi2*phi3 = 0 at every boundary node.
struct BoundarySpec {
    std::string label;
    std::function<std::array<double, 3>(double x, double y, unsigned edges)> traces;

    std::array<double, 3> eval(double x, double y, unsigned edges) const {
        return traces(x, y, edges);
    }
};

inline constexpr double kBoundaryProductTol = 1e-12;

/// Sampled traces, node-indexed (zero away from the boundary), plus the
/// validation extrema over boundary nodes.
struct BoundarySample {
    std::array<std::vector<double>, 3> phi;
    double max_product = 0.0;
    double min_value = 0.0;
    int worst_product_node = -1;
    int worst_negative_node = -1;

    bool valid() const {
        return min_value >= 0.0 && max_product <= kBoundaryProductTol;
    }
};

/// Evaluates the traces at every boundary node without throwing.
BoundarySample sample_boundary_report(const BoundarySpec& spec, const Grid& grid);

/// As above, but throws invariant_violation naming the offending node when a
/// trace is negative or the product condition fails beyond tolerance.
BoundarySample sample_boundary(const BoundarySpec& spec, const Grid& grid);

// --- piecewise construction -------------------------------------------------

enum class Edge { XNeg, XPos, YNeg, YPos, All };

struct EdgePiece {
    Edge edge;
    std::function<double(double, double)> f;
};

/// Builds a spec from per-component edge pieces. A component's value at a node
/// is the maximum over pieces whose edge contains the node (0 if none), which
/// also resolves corner ownership. If the triple product at a corner is still
/// positive, the smallest trace there is zeroed (ties zero the highest
/// component index).
BoundarySpec make_edge_spec(std::string label,
                            std::array<std::vector<EdgePiece>, 3> pieces);

/// Spec for a 1D interval: component values at the two endpoints.
BoundarySpec make_interval_spec(std::string label,
                                std::array<double, 3> at_left,
                                std::array<double, 3> at_right);

} // namespace seglab
