#include <doctest.h>

#include <cmath>
#include <random>

#include "core/bc_catalog.hpp"
#include "core/elliptic.hpp"
#include "support/dense_oracle.hpp"

using namespace seglab;

namespace {

std::vector<double> boundary_data(const Grid& g,
                                  const std::function<double(double, double)>& f) {
    std::vector<double> out(static_cast<size_t>(g.node_count()), 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.is_boundary(i, j))
                out[static_cast<size_t>(g.index(i, j))] = f(g.x(i), g.y(j));
    return out;
}

double max_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (size_t k = 0; k < a.v.size(); ++k)
        m = std::max(m, std::abs(a.v[k] - b.v[k]));
    return m;
}

} // namespace

TEST_CASE("constants are harmonic") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 21, 21);
    auto data = boundary_data(g, [](double, double) { return 2.5; });
    ScalarField u = harmonic_extend(data, g);
    for (double v : u.v) CHECK(v == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("1D harmonic extension of endpoint data is linear") {
    Grid g = make_grid_1d(0.0, 1.0, 101);
    std::vector<double> data(static_cast<size_t>(g.node_count()), 0.0);
    data[0] = 1.0;
    data[static_cast<size_t>(g.nx - 1)] = 0.0;
    ScalarField u = harmonic_extend(data, g);
    for (int i = 0; i < g.nx; ++i)
        CHECK(u.at(i, 0) == doctest::Approx(1.0 - g.x(i)).epsilon(1e-12));
}

TEST_CASE("2D: the stencil reproduces the harmonic polynomial x^2-y^2") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 101, 101);
    auto poly = [](double x, double y) { return x * x - y * y; };
    ScalarField u = harmonic_extend(boundary_data(g, poly), g);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            worst = std::max(worst, std::abs(u.at(i, j) - poly(g.x(i), g.y(j))));
    CHECK(worst <= 1e-3); // stencil is exact for quadratics; only solver error remains
    CHECK(worst <= 1e-8);
}

TEST_CASE("screened solve with c=0,f=0 equals the harmonic extension bit-for-bit") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 33, 33);
    auto data = boundary_data(g, [](double x, double y) { return x * x - y * y + 1.0; });
    ScalarField c(g), f(g);
    ScalarField a = harmonic_extend(data, g);
    ScalarField b = screened_solve(c, f, data, g);
    for (size_t k = 0; k < a.v.size(); ++k) CHECK(a.v[k] == b.v[k]);
}

TEST_CASE("strong screening flattens the interior to numerical zero") {
    Grid g = make_grid_1d(0.0, 1.0, 101);
    ScalarField c(g, 1e10), f(g);
    std::vector<double> data(static_cast<size_t>(g.node_count()), 0.0);
    data[0] = data[static_cast<size_t>(g.nx - 1)] = 1.0;
    ScalarField u = screened_solve(c, f, data, g);
    for (int i = 2; i < g.nx - 2; ++i) CHECK(std::abs(u.at(i, 0)) <= 1e-10);
    // discrete boundary layer matches the assembled system solved densely
    ScalarField dense = testsupport::solve_dense_stencil(g, &c, nullptr, data);
    CHECK(max_diff(u, dense) <= 1e-8);
}

TEST_CASE("screened closed form: u'' - u = -1 with zero data") {
    Grid g = make_grid_1d(0.0, 1.0, 101);
    ScalarField c(g, 1.0), f(g, -1.0);
    std::vector<double> data(static_cast<size_t>(g.node_count()), 0.0);
    ScalarField u = screened_solve(c, f, data, g);
    double worst = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        double x = g.x(i);
        double exact = 1.0 - std::cosh(x - 0.5) / std::cosh(0.5);
        worst = std::max(worst, std::abs(u.at(i, 0) - exact));
    }
    CHECK(worst <= 5e-5); // O(h^2) discretization error
}

TEST_CASE("screened solve keeps nonnegative data in [0, max data]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uc(0.0, 50.0);
    std::uniform_real_distribution<double> ug(0.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        Grid g = trial % 2 ? make_grid_2d(-1.0, 1.0, -1.0, 1.0, 17, 13)
                           : make_grid_1d(0.0, 1.0, 41);
        ScalarField c(g), f(g);
        for (auto& v : c.v) v = uc(rng);
        std::vector<double> data(static_cast<size_t>(g.node_count()), 0.0);
        double gmax = 0.0;
        for (int idx : g.boundary_indices()) {
            data[static_cast<size_t>(idx)] = ug(rng);
            gmax = std::max(gmax, data[static_cast<size_t>(idx)]);
        }
        ScalarField u = screened_solve(c, f, data, g);
        CHECK(u.min_value() >= -1e-12);
        CHECK(u.max_value() <= gmax + 1e-10);
    }
}

TEST_CASE("discrete maximum principle for harmonic extensions") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ug(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        Grid g = make_grid_2d(-1.0, 1.0, 0.0, 1.0, 19, 23);
        std::vector<double> data(static_cast<size_t>(g.node_count()), 0.0);
        double lo = 1e300, hi = -1e300;
        for (int idx : g.boundary_indices()) {
            data[static_cast<size_t>(idx)] = ug(rng);
            lo = std::min(lo, data[static_cast<size_t>(idx)]);
            hi = std::max(hi, data[static_cast<size_t>(idx)]);
        }
        ScalarField u = harmonic_extend(data, g);
        // slack at the iterative solve accuracy
        CHECK(u.min_value() >= lo - 1e-9);
        CHECK(u.max_value() <= hi + 1e-9);
    }
}

TEST_CASE("harmonic extension is linear in the data") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 25, 25);
    auto d1 = boundary_data(g, [](double x, double y) { return std::cos(x + y); });
    auto d2 = boundary_data(g, [](double x, double y) { return x * y; });
    const double a = 1.7, b = -0.4;
    std::vector<double> mix(d1.size());
    for (size_t k = 0; k < mix.size(); ++k) mix[k] = a * d1[k] + b * d2[k];
    ScalarField ua = harmonic_extend(d1, g);
    ScalarField ub = harmonic_extend(d2, g);
    ScalarField um = harmonic_extend(mix, g);
    double worst = 0.0;
    for (size_t k = 0; k < mix.size(); ++k)
        worst = std::max(worst, std::abs(um.v[k] - (a * ua.v[k] + b * ub.v[k])));
    LinearSolveConfig cfg;
    CHECK(worst <= 10.0 * cfg.tol * 3.0);
}

TEST_CASE("iterative solves match the dense oracle on small grids") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    std::uniform_real_distribution<double> uc(0.0, 100.0);

    auto run = [&](const Grid& g, bool with_c, bool with_f) {
        ScalarField c(g), f(g);
        if (with_c)
            for (auto& v : c.v) v = uc(rng);
        if (with_f)
            for (auto& v : f.v) v = ur(rng);
        std::vector<double> data(static_cast<size_t>(g.node_count()), 0.0);
        for (int idx : g.boundary_indices()) data[static_cast<size_t>(idx)] = ur(rng);
        ScalarField u = screened_solve(c, f, data, g);
        ScalarField ref = testsupport::solve_dense_stencil(g, with_c ? &c : nullptr,
                                                           with_f ? &f : nullptr, data);
        CHECK(max_diff(u, ref) <= 1e-8);
    };

    for (int nx : {5, 9, 15}) {
        run(make_grid_2d(-1.0, 1.0, -1.0, 1.0, nx, nx), false, false);
        run(make_grid_2d(-1.0, 1.0, -1.0, 1.0, nx, nx), true, false);
        run(make_grid_2d(-1.0, 1.0, -1.0, 1.0, nx, nx), true, true);
        run(make_grid_1d(0.0, 1.0, nx), true, true);
    }
}

TEST_CASE("solver failure paths") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 41, 41);
    auto data = boundary_data(g, [](double x, double y) { return std::cos(2.0 * x) + y * y; });

    LinearSolveConfig strangled;
    strangled.max_iter = 2;
    bool threw = false;
    try {
        harmonic_extend(data, g, strangled);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.kind() == ErrorKind::convergence_failure);
        CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
    CHECK(threw);

    ScalarField c(g), f(g);
    c.v[500] = -1.0;
    CHECK_THROWS_AS(screened_solve(c, f, data, g), Error);

    LinearSolveConfig bad;
    bad.omega = 2.5;
    CHECK_THROWS_AS(harmonic_extend(data, g, bad), Error);
}

TEST_CASE("harmonic differences of the interval example are the exact lines") {
    Grid g = make_grid_1d(0.0, 1.0, 101);
    HarmonicTriple h = harmonic_differences(line_example_spec(), g);
    for (int i = 0; i < g.nx; ++i) {
        double x = g.x(i);
        CHECK(h.h12.at(i, 0) == doctest::Approx(1.0 - 2.0 * x).epsilon(1e-12));
        CHECK(h.h13.at(i, 0) == doctest::Approx(-x).epsilon(1e-12));
        CHECK(h.h23.at(i, 0) == doctest::Approx(x - 1.0).epsilon(1e-12));
    }
    CHECK(cocycle_residual(h) == 0.0);
}

TEST_CASE("identical traces give an identically zero difference") {
    BoundarySpec spec;
    spec.label = "equal12";
    spec.traces = [](double x, double y, unsigned) {
        double v = std::abs(x) + std::abs(y);
        return std::array<double, 3>{v, v, 0.0};
    };
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 21, 21);
    HarmonicTriple h = harmonic_differences(spec, g);
    for (double v : h.h12.v) CHECK(v == 0.0);
}

TEST_CASE("catalog harmonic triples satisfy the cocycle identity") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 41, 41);
    for (int id = 1; id <= 9; ++id) {
        HarmonicTriple h = harmonic_differences(get_bc(id).spec, g);
        CHECK(cocycle_residual(h) <= 1e-8);
    }
}
