#include "core/boundary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace seglab {

namespace {

bool piece_matches(Edge e, unsigned mask) {
    switch (e) {
        case Edge::XNeg: return (mask & 1u) != 0;
        case Edge::XPos: return (mask & 2u) != 0;
        case Edge::YNeg: return (mask & 4u) != 0;
        case Edge::YPos: return (mask & 8u) != 0;
        case Edge::All: return mask != 0;
    }
    return false;
}

std::string node_text(const Grid& g, int i, int j) {
    std::ostringstream os;
    os << "node (" << i << "," << j << ") at x=" << g.x(i);
    if (g.dim == 2) os << ", y=" << g.y(j);
    return os.str();
}

BoundarySample sample_impl(const BoundarySpec& spec, const Grid& grid) {
    BoundarySample s;
    for (auto& c : s.phi) c.assign(static_cast<size_t>(grid.node_count()), 0.0);
    bool first = true;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            if (!grid.is_boundary(i, j)) continue;
            unsigned mask = grid.edge_mask(i, j);
            auto t = spec.eval(grid.x(i), grid.y(j), mask);
            int idx = grid.index(i, j);
            double mn = std::min({t[0], t[1], t[2]});
            double prod = t[0] * t[1] * t[2];
            for (int c = 0; c < 3; ++c) s.phi[c][static_cast<size_t>(idx)] = t[c];
            if (first || mn < s.min_value) {
                s.min_value = mn;
                if (mn < 0.0) s.worst_negative_node = idx;
            }
            if (first || prod > s.max_product) {
                s.max_product = prod;
                s.worst_product_node = idx;
            }
            first = false;
        }
    }
    return s;
}

} // namespace

BoundarySample sample_boundary_report(const BoundarySpec& spec, const Grid& grid) {
    return sample_impl(spec, grid);
}

BoundarySample sample_boundary(const BoundarySpec& spec, const Grid& grid) {
    BoundarySample s = sample_impl(spec, grid);
    if (s.min_value < 0.0) {
        int idx = s.worst_negative_node;
        fail(ErrorKind::invariant_violation,
             "boundary spec '" + spec.label + "': negative trace " +
                 std::to_string(s.min_value) + " at " +
                 node_text(grid, idx % grid.nx, idx / grid.nx));
    }
    if (s.max_product > kBoundaryProductTol) {
        int idx = s.worst_product_node;
        fail(ErrorKind::invariant_violation,
             "boundary spec '" + spec.label + "': trace product " +
                 std::to_string(s.max_product) + " exceeds tolerance at " +
                 node_text(grid, idx % grid.nx, idx / grid.nx));
    }
    return s;
}

BoundarySpec make_edge_spec(std::string label,
                            std::array<std::vector<EdgePiece>, 3> pieces) {
    BoundarySpec spec;
    spec.label = std::move(label);
    spec.traces = [pieces = std::move(pieces)](double x, double y, unsigned mask) {
        std::array<double, 3> t{0.0, 0.0, 0.0};
        for (int c = 0; c < 3; ++c) {
            bool any = false;
            double best = 0.0;
            for (const auto& p : pieces[static_cast<size_t>(c)]) {
                if (!piece_matches(p.edge, mask)) continue;
                double val = p.f(x, y);
                best = any ? std::max(best, val) : val;
                any = true;
            }
            t[static_cast<size_t>(c)] = any ? best : 0.0;
        }
        // Corner convention: if per-edge ownership leaves the triple product
        // positive at a two-edge node, zero the smallest trace there.
        if (std::popcount(mask) >= 2 && t[0] * t[1] * t[2] > 0.0) {
            int smallest = 0;
            for (int c = 1; c < 3; ++c)
                if (t[static_cast<size_t>(c)] <= t[static_cast<size_t>(smallest)])
                    smallest = c;
            t[static_cast<size_t>(smallest)] = 0.0;
        }
        return t;
    };
    return spec;
}

BoundarySpec make_interval_spec(std::string label,
                                std::array<double, 3> at_left,
                                std::array<double, 3> at_right) {
    BoundarySpec spec;
    spec.label = std::move(label);
    spec.traces = [at_left, at_right](double, double, unsigned mask) {
        return (mask & 1u) ? at_left : at_right;
    };
    return spec;
}

} // namespace seglab
