#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "core/grid.hpp"
#include "core/io.hpp"

using namespace seglab;

TEST_CASE("paper grid: 201 nodes per axis give mesh size 0.01") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 201, 201);
    CHECK(g.hx == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(g.hy == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(g.node_count() == 201 * 201);
}

TEST_CASE("smallest 1D grid has nodes 0, 0.5, 1") {
    Grid g = make_grid_1d(0.0, 1.0, 3);
    CHECK(g.x(0) == 0.0);
    CHECK(g.x(1) == 0.5);
    CHECK(g.x(2) == 1.0);
    CHECK(g.boundary_count() == 2);
}

TEST_CASE("11x11 grid splits into 40 boundary and 81 interior nodes") {
    // counted by enumeration
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 11, 11);
    int boundary = 0, interior = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            (g.is_boundary(i, j) ? boundary : interior)++;
    CHECK(boundary == 40);
    CHECK(interior == 81);
    CHECK(g.boundary_count() == boundary);
    CHECK(g.interior_count() == interior);
    CHECK(static_cast<int>(g.boundary_indices().size()) == boundary);
}

TEST_CASE("grid construction rejects bad arguments") {
    CHECK_THROWS_AS(make_grid_1d(0.0, 1.0, 2), Error);
    CHECK_THROWS_AS(make_grid_1d(1.0, 0.0, 5), Error);
    CHECK_THROWS_AS(make_grid_2d(-1.0, 1.0, 1.0, -1.0, 11, 11), Error);
    CHECK_THROWS_AS(make_grid_2d(-1.0, 1.0, -1.0, 1.0, 11, 2), Error);
}

TEST_CASE("node -> coordinates -> nearest node round-trips") {
    std::mt19937 rng(991);
    std::uniform_int_distribution<int> ni(3, 40);
    for (int trial = 0; trial < 50; ++trial) {
        Grid g = trial % 2 == 0
                     ? make_grid_2d(-1.0, 1.0, -0.5, 2.0, ni(rng), ni(rng))
                     : make_grid_1d(-3.0, 7.0, ni(rng));
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                auto [ii, jj] = g.nearest_node(g.x(i), g.y(j));
                CHECK(ii == i);
                CHECK(jj == j);
            }
    }
}

TEST_CASE("boundary edge masks mark corners with two bits") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 5, 5);
    CHECK(g.edge_mask(0, 0) == 5u); // x=x0 and y=y0
    CHECK(g.edge_mask(4, 4) == 10u);
    CHECK(g.edge_mask(2, 0) == 4u);
    CHECK(g.edge_mask(0, 2) == 1u);
    CHECK(g.edge_mask(2, 2) == 0u);
}

TEST_CASE("non-finite field values are rejected") {
    Grid g = make_grid_1d(0.0, 1.0, 5);
    ScalarField f(g, 1.0);
    f.v[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(f.ensure_finite("test field"), Error);
}

TEST_CASE("field csv round-trips bit-exactly") {
    Grid g = make_grid_2d(-1.0, 1.0, 0.0, 2.0, 7, 5);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    ScalarField f(g);
    for (auto& v : f.v) v = u(rng);

    auto dir = std::filesystem::temp_directory_path() / "seglab_grid_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "field.csv").string();
    write_field_csv(f, path);
    ScalarField r = read_field_csv(path);
    REQUIRE(r.grid == g);
    for (size_t k = 0; k < f.v.size(); ++k) CHECK(r.v[k] == f.v[k]);
}

TEST_CASE("pgm output carries a scaling sidecar") {
    Grid g = make_grid_2d(0.0, 1.0, 0.0, 1.0, 4, 3);
    ScalarField f(g);
    for (size_t k = 0; k < f.v.size(); ++k) f.v[k] = static_cast<double>(k);
    auto dir = std::filesystem::temp_directory_path() / "seglab_grid_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "field.pgm").string();
    write_field_pgm(f, path);
    std::string pgm = read_text_file(path);
    CHECK(pgm.substr(0, 2) == "P5");
    std::string side = read_text_file(path + ".json");
    CHECK(side.find("linear-minmax") != std::string::npos);
}
