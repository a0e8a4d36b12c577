#include "core/interface_lab.hpp"

#include <algorithm>
#include <cmath>

namespace seglab {

const char* to_string(SourceTag tag) {
    switch (tag) {
        case SourceTag::SysA: return "sysa";
        case SourceTag::SysB: return "sysb";
        case SourceTag::Predicted: return "predicted";
    }
    return "?";
}

std::array<InterfaceSet, 3> extract_interfaces(const TripleField& t, double delta,
                                               SourceTag source) {
    require(delta > 0.0, ErrorKind::invalid_argument,
            "extract_interfaces: delta must be positive");
    const Grid& g = t.u[0].grid;
    std::array<InterfaceSet, 3> out;
    for (int c = 0; c < 3; ++c) {
        InterfaceSet& set = out[static_cast<size_t>(c)];
        set.component = c + 1;
        set.source = source;
        set.grid = g;
        const ScalarField& u = t.u[static_cast<size_t>(c)];
        set.active.assign(u.v.size(), 0);
        for (size_t k = 0; k < u.v.size(); ++k) set.active[k] = u.v[k] > delta ? 1 : 0;
        // x-edges then y-edges, row-major: deterministic ordering
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i + 1 < g.nx; ++i)
                if (set.active[static_cast<size_t>(g.index(i, j))] !=
                    set.active[static_cast<size_t>(g.index(i + 1, j))])
                    set.points.push_back({0.5 * (g.x(i) + g.x(i + 1)), g.y(j)});
        if (g.dim == 2)
            for (int j = 0; j + 1 < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    if (set.active[static_cast<size_t>(g.index(i, j))] !=
                        set.active[static_cast<size_t>(g.index(i, j + 1))])
                        set.points.push_back({g.x(i), 0.5 * (g.y(j) + g.y(j + 1))});
    }
    return out;
}

namespace {

double directed_sup(const std::vector<Point>& from, const std::vector<Point>& to,
                    double& nn_sum) {
    double sup = 0.0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : to) best = std::min(best, dist(p, q));
        nn_sum += best;
        sup = std::max(sup, best);
    }
    return sup;
}

} // namespace

ComparisonMetrics compare(const InterfaceSet& a, const InterfaceSet& b) {
    require(a.component == b.component, ErrorKind::invalid_argument,
            "compare: interface sets belong to different components");
    ComparisonMetrics m;
    const bool ea = a.points.empty(), eb = b.points.empty();

    if (a.grid == b.grid && !a.active.empty() && !b.active.empty()) {
        const Grid& g = a.grid;
        double cell = g.hx * (g.dim == 2 ? g.hy : 1.0);
        long mismatch = 0;
        for (size_t k = 0; k < a.active.size(); ++k)
            if (a.active[k] != b.active[k]) ++mismatch;
        m.area_sym_diff = static_cast<double>(mismatch) * cell;
    }

    if (ea && eb) return m; // identical empty boundaries
    if (ea != eb) {
        m.empty_mismatch = true;
        m.hausdorff = m.mean_nn = m.area_sym_diff =
            std::numeric_limits<double>::infinity();
        return m;
    }
    double nn_sum = 0.0;
    double sup_ab = directed_sup(a.points, b.points, nn_sum);
    double sup_ba = directed_sup(b.points, a.points, nn_sum);
    m.hausdorff = std::max(sup_ab, sup_ba);
    m.mean_nn = nn_sum / static_cast<double>(a.points.size() + b.points.size());
    return m;
}

Diagnostics diagnostics(const TripleField& t,
                        const std::array<ScalarField, 3>& h_ext,
                        const HarmonicTriple& h,
                        const std::array<std::vector<double>, 3>& phi,
                        double epsilon) {
    const Grid& g = t.u[0].grid;
    for (const auto& f : h_ext)
        require(f.grid == g, ErrorKind::invalid_argument, "diagnostics: grid mismatch");
    Diagnostics d;
    d.product_l2 = product_l2_integral(t.u);

    for (int idx : g.boundary_indices())
        for (int c = 0; c < 3; ++c)
            d.boundary_mismatch = std::max(
                d.boundary_mismatch,
                std::abs(t.u[static_cast<size_t>(c)].v[static_cast<size_t>(idx)] -
                         phi[static_cast<size_t>(c)][static_cast<size_t>(idx)]));

    const double bulk_thr = epsilon > 0.0 ? std::sqrt(epsilon) : 0.0;
    auto in_bulk = [&](const ScalarField& u, int i, int j) {
        if (!(u.at(i, j) > bulk_thr)) return false;
        if (!(u.at(i - 1, j) > bulk_thr) || !(u.at(i + 1, j) > bulk_thr)) return false;
        if (g.dim == 2 &&
            (!(u.at(i, j - 1) > bulk_thr) || !(u.at(i, j + 1) > bulk_thr)))
            return false;
        return true;
    };

    for (int c = 0; c < 3; ++c) {
        ComponentDiagnostics& cd = d.component[static_cast<size_t>(c)];
        const ScalarField& u = t.u[static_cast<size_t>(c)];
        const ScalarField& hi = h_ext[static_cast<size_t>(c)];
        for (size_t k = 0; k < u.v.size(); ++k) {
            cd.sandwich_violation = std::max(cd.sandwich_violation, -u.v[k]);
            cd.sandwich_violation = std::max(cd.sandwich_violation, u.v[k] - hi.v[k]);
        }
        for (int j = (g.dim == 2 ? 1 : 0); j < (g.dim == 2 ? g.ny - 1 : 1); ++j)
            for (int i = 1; i < g.nx - 1; ++i)
                if (in_bulk(u, i, j)) {
                    ++cd.bulk_nodes;
                    cd.bulk_max_laplacian = std::max(
                        cd.bulk_max_laplacian, std::abs(discrete_laplacian(u, i, j)));
                }
    }

    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    const std::array<const ScalarField*, 3> hd{&h.h12, &h.h13, &h.h23};
    for (int p = 0; p < 3; ++p) {
        PairDiagnostics& pd = d.pair[static_cast<size_t>(p)];
        pd.i = pairs[static_cast<size_t>(p)].first;
        pd.j = pairs[static_cast<size_t>(p)].second;
        const ScalarField& ui = t.u[static_cast<size_t>(pd.i - 1)];
        const ScalarField& uj = t.u[static_cast<size_t>(pd.j - 1)];
        const ScalarField& hij = *hd[static_cast<size_t>(p)];
        for (int j = (g.dim == 2 ? 1 : 0); j < (g.dim == 2 ? g.ny - 1 : 1); ++j)
            for (int i = 1; i < g.nx - 1; ++i)
                if (in_bulk(ui, i, j) && in_bulk(uj, i, j)) {
                    ++pd.bulk_nodes;
                    pd.max_dev_from_h = std::max(
                        pd.max_dev_from_h,
                        std::abs((ui.at(i, j) - uj.at(i, j)) - hij.at(i, j)));
                }
    }
    return d;
}

} // namespace seglab
