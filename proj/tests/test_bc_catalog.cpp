#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/bc_catalog.hpp"

using namespace seglab;

namespace {
constexpr double kPi = std::numbers::pi;

// boundary point of [-1,1]^2 -> the edge mask sample_boundary would use
unsigned mask_for(double x, double y) {
    unsigned m = 0;
    if (x == -1.0) m |= 1u;
    if (x == 1.0) m |= 2u;
    if (y == -1.0) m |= 4u;
    if (y == 1.0) m |= 8u;
    return m;
}

std::array<double, 3> eval(int id, double x, double y) {
    return get_bc(id).spec.eval(x, y, mask_for(x, y));
}
} // namespace

TEST_CASE("bc 1: cosine lobes peak where the angle matches") {
    // theta = 2*pi/3 lies on the boundary at (x,y) = (-0.5*r, ...); pick the
    // boundary point on the top edge with that angle: y=1, x = -1/sqrt(3)
    double x = -1.0 / std::sqrt(3.0), y = 1.0;
    CHECK(std::atan2(y, x) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
    auto t = eval(1, x, y);
    CHECK(t[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t[1] == 0.0);
    CHECK(t[2] == 0.0);
}

TEST_CASE("bc 8: bottom edge splits at x = 0") {
    auto t = eval(8, -0.5, -1.0);
    CHECK(t[0] == 1.0);
    CHECK(t[1] == 0.0);
    CHECK(t[2] == 0.0);
    auto mid = eval(8, 0.0, -1.0);
    CHECK(mid[0] == 0.0); // strict x<0 piece
    CHECK(mid[1] == 0.0);
}

TEST_CASE("bc 5: top edge carries only phi1") {
    auto t = eval(5, 0.0, 1.0);
    CHECK(t[0] == 1.0);
    CHECK(t[1] == 0.0);
    CHECK(t[2] == 0.0);
    // corners: phi1 and phi2 both claim 1; the smallest trace is zeroed
    auto c = eval(5, 1.0, 1.0);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 1.0);
    CHECK(c[2] == 0.0);
}

TEST_CASE("bc 4: ramp values from the paper row") {
    auto t = eval(4, 0.5, 1.0);
    CHECK(t[0] == 0.5);
    CHECK(t[1] == 0.0);
    CHECK(t[2] == 0.25);
}

TEST_CASE("bc 3: side edges carry phi3 = 0.5") {
    auto t = eval(3, 1.0, 0.0);
    CHECK(t[2] == 0.5);
    CHECK(t[0] == 0.0);
    CHECK(t[1] == 0.0);
}

TEST_CASE("catalog validates on the paper grid") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 201, 201);
    auto report = validate_catalog(g);
    REQUIRE(report.size() == 9);
    for (const auto& r : report) {
        INFO("bc ", r.id);
        CHECK(r.min_value >= 0.0);
        CHECK(r.max_product <= 1e-12);
    }
}

TEST_CASE("bcs 1 and 2: at most two lobes overlap at any boundary node") {
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 101, 101);
    for (int id : {1, 2}) {
        auto s = sample_boundary(get_bc(id).spec, g);
        for (int idx : g.boundary_indices()) {
            int nonzero = 0;
            for (int c = 0; c < 3; ++c)
                if (s.phi[static_cast<size_t>(c)][static_cast<size_t>(idx)] > 0.0)
                    ++nonzero;
            CHECK(nonzero <= 2);
        }
    }
}

TEST_CASE("deliberately invalid spec reports its product without throwing") {
    BoundarySpec bad;
    bad.label = "all-ones";
    bad.traces = [](double, double, unsigned) {
        return std::array<double, 3>{1.0, 1.0, 1.0};
    };
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 11, 11);
    auto s = sample_boundary_report(bad, g);
    CHECK(s.max_product == 1.0);
    CHECK_THROWS_AS(sample_boundary(bad, g), Error);
}

TEST_CASE("constant zero spec is trivially valid") {
    BoundarySpec zero;
    zero.label = "zero";
    zero.traces = [](double, double, unsigned) {
        return std::array<double, 3>{0.0, 0.0, 0.0};
    };
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 11, 11);
    auto s = sample_boundary(zero, g);
    CHECK(s.max_product == 0.0);
    CHECK(s.min_value == 0.0);
}

TEST_CASE("negative trace is rejected with the node named") {
    BoundarySpec neg;
    neg.label = "negative";
    neg.traces = [](double x, double, unsigned) {
        return std::array<double, 3>{x, 0.0, 0.0}; // negative on the left half
    };
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 11, 11);
    CHECK_THROWS_WITH_AS(sample_boundary(neg, g),
                         doctest::Contains("negative trace"), Error);
}

TEST_CASE("custom json spec: vocabulary and equivalence to a catalog entry") {
    // rebuilds bc 4 from the expression vocabulary
    const char* doc = R"({
      "label": "bc4-clone",
      "components": [
        [{"edge": "all", "expr": {"plus": {"var": "x"}}}],
        [{"edge": "all", "expr": {"plus": {"affine": {"a": -1.0, "b": 0.0, "of": {"var": "x"}}}}}],
        [{"edge": "all", "expr": {"const": 0.25}}]
      ]
    })";
    BoundarySpec spec = custom_spec_from_json(doc);
    Grid g = make_grid_2d(-1.0, 1.0, -1.0, 1.0, 41, 41);
    auto a = sample_boundary(spec, g);
    auto b = sample_boundary(get_bc(4).spec, g);
    for (int c = 0; c < 3; ++c)
        for (int idx : g.boundary_indices())
            CHECK(a.phi[static_cast<size_t>(c)][static_cast<size_t>(idx)] ==
                  b.phi[static_cast<size_t>(c)][static_cast<size_t>(idx)]);
}

TEST_CASE("custom json spec: malformed documents are rejected") {
    CHECK_THROWS_AS(custom_spec_from_json("not json"), Error);
    CHECK_THROWS_AS(custom_spec_from_json(R"({"components": []})"), Error);
    CHECK_THROWS_AS(custom_spec_from_json(
                        R"({"components": [[{"edge":"z=1","expr":{"const":1}}],[],[]]})"),
                    Error);
    CHECK_THROWS_AS(custom_spec_from_json(
                        R"({"components": [[{"edge":"all","expr":{"pow":2}}],[],[]]})"),
                    Error);
}

TEST_CASE("unknown catalog id") {
    CHECK_THROWS_AS(get_bc(0), Error);
    CHECK_THROWS_AS(get_bc(10), Error);
}

TEST_CASE("theta uses the full-plane angle") {
    // on the left edge below the x-axis the printed arctan(y/x) would flip
    // the sign; the full-plane angle keeps lobe 2 active there
    auto t = eval(1, -1.0, -0.5);
    double th = std::atan2(-0.5, -1.0);
    CHECK(th < -kPi / 2.0 + 1.2); // third quadrant
    double expect = std::max(0.0, std::cos(th - 4.0 * kPi / 3.0));
    CHECK(t[1] == doctest::Approx(expect).epsilon(1e-14));
}
