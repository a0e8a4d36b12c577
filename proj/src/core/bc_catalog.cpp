#include "core/bc_catalog.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include <json.hpp>

namespace seglab {

namespace {

constexpr double kPi = std::numbers::pi;

double pos(double v) { return v > 0.0 ? v : 0.0; }

// Full-plane angle of (x,y) in (-pi, pi]. The origin never lies on the
// boundary of the catalog domain.
double theta(double x, double y) { return std::atan2(y, x); }

std::function<double(double, double)> cos_lobe(int i, double shift) {
    return [i, shift](double x, double y) {
        return pos(std::cos(theta(x, y) - 2.0 * kPi * i / 3.0 - shift));
    };
}

std::function<double(double, double)> constant(double v) {
    return [v](double, double) { return v; };
}

std::function<double(double, double)> cone(double cx, double cy) {
    return [cx, cy](double x, double y) {
        return pos(1.0 - std::hypot(x - cx, y - cy) / 2.0);
    };
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> cat;
    cat.reserve(kCatalogSize);

    auto add = [&cat](int id, std::string desc,
                      std::array<std::vector<EdgePiece>, 3> pieces) {
        CatalogEntry e;
        e.id = id;
        e.description = std::move(desc);
        e.spec = make_edge_spec("bc" + std::to_string(id), std::move(pieces));
        cat.push_back(std::move(e));
    };

    add(1, "three cosine lobes, 3-fold symmetric",
        {{{{Edge::All, cos_lobe(1, 0.0)}},
          {{Edge::All, cos_lobe(2, 0.0)}},
          {{Edge::All, cos_lobe(3, 0.0)}}}});

    add(2, "three cosine lobes rotated by pi/4",
        {{{{Edge::All, cos_lobe(1, kPi / 4.0)}},
          {{Edge::All, cos_lobe(2, kPi / 4.0)}},
          {{Edge::All, cos_lobe(3, kPi / 4.0)}}}});

    add(3, "opposite edges 1 vs 1, sides 0.5",
        {{{{Edge::YNeg, constant(1.0)}},
          {{Edge::YPos, constant(1.0)}},
          {{Edge::XNeg, constant(0.5)}, {Edge::XPos, constant(0.5)}}}});

    add(4, "linear ramps x+ and (-x)+, third constant 0.25",
        {{{{Edge::All, [](double x, double) { return pos(x); }}},
          {{Edge::All, [](double x, double) { return pos(-x); }}},
          {{Edge::All, constant(0.25)}}}});

    add(5, "top/bottom 1, sides 1, third 0.3 on sides",
        {{{{Edge::YNeg, constant(1.0)}, {Edge::YPos, constant(1.0)}},
          {{Edge::XNeg, constant(1.0)}, {Edge::XPos, constant(1.0)}},
          {{Edge::XNeg, constant(0.3)}, {Edge::XPos, constant(0.3)}}}});

    add(6, "distance cones from three corners",
        {{{{Edge::All, cone(-1.0, -1.0)}},
          {{Edge::All, cone(1.0, 1.0)}},
          {{Edge::All, cone(1.0, -1.0)}}}});

    add(7, "sinusoidal top/bottom, third 0.3 on sides",
        {{{{Edge::YNeg, [](double x, double) { return std::sin(kPi * (x + 1.0) / 2.0); }},
           {Edge::YPos, [](double x, double) { return std::sin(kPi * (x + 1.0) / 2.0); }}},
          {{Edge::YNeg, [](double x, double) { return pos(std::cos(kPi * (x + 1.0) / 2.0)); }},
           {Edge::YPos, [](double x, double) { return pos(std::cos(kPi * (x + 1.0) / 2.0)); }}},
          {{Edge::XNeg, constant(0.3)}, {Edge::XPos, constant(0.3)}}}});

    add(8, "bottom split at x=0, top 1",
        {{{{Edge::YNeg, [](double x, double) { return x < 0.0 ? 1.0 : 0.0; }}},
          {{Edge::YNeg, [](double x, double) { return x > 0.0 ? 1.0 : 0.0; }}},
          {{Edge::YPos, constant(1.0)}}}});

    add(9, "diagonal split: bottom-left 1 vs top-right 1, third 0.2",
        {{{{Edge::YNeg, constant(1.0)}, {Edge::XNeg, constant(1.0)}},
          {{Edge::YPos, constant(1.0)}, {Edge::XPos, constant(1.0)}},
          {{Edge::All, constant(0.2)}}}});

    return cat;
}

} // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> cat = build_catalog();
    return cat;
}

const CatalogEntry& get_bc(int id) {
    require(id >= 1 && id <= kCatalogSize, ErrorKind::invalid_argument,
            "unknown catalog id " + std::to_string(id) + " (valid: 1..9)");
    return catalog()[static_cast<size_t>(id - 1)];
}

std::vector<CatalogValidation> validate_catalog(const Grid& grid) {
    std::vector<CatalogValidation> out;
    out.reserve(kCatalogSize);
    for (const auto& e : catalog()) {
        BoundarySample s = sample_boundary_report(e.spec, grid);
        out.push_back({e.id, e.spec.label, s.max_product, s.min_value});
    }
    return out;
}

// --- JSON custom specs -----------------------------------------------------

namespace {

using nlohmann::json;

using Expr = std::function<double(double, double)>;

Expr parse_expr(const json& e) {
    require(e.is_object(), ErrorKind::invalid_argument,
            "bc json: expression must be an object");
    if (e.contains("const")) {
        double v = e.at("const").get<double>();
        return [v](double, double) { return v; };
    }
    if (e.contains("var")) {
        std::string name = e.at("var").get<std::string>();
        if (name == "x") return [](double x, double) { return x; };
        if (name == "y") return [](double, double y) { return y; };
        if (name == "theta") return [](double x, double y) { return theta(x, y); };
        fail(ErrorKind::invalid_argument, "bc json: unknown variable '" + name + "'");
    }
    if (e.contains("plus")) {
        Expr a = parse_expr(e.at("plus"));
        return [a](double x, double y) { return pos(a(x, y)); };
    }
    if (e.contains("cos")) {
        Expr a = parse_expr(e.at("cos"));
        return [a](double x, double y) { return std::cos(a(x, y)); };
    }
    if (e.contains("sin")) {
        Expr a = parse_expr(e.at("sin"));
        return [a](double x, double y) { return std::sin(a(x, y)); };
    }
    if (e.contains("max")) {
        const json& args = e.at("max");
        require(args.is_array() && args.size() == 2, ErrorKind::invalid_argument,
                "bc json: max takes exactly two expressions");
        Expr a = parse_expr(args[0]);
        Expr b = parse_expr(args[1]);
        return [a, b](double x, double y) { return std::max(a(x, y), b(x, y)); };
    }
    if (e.contains("affine")) {
        const json& o = e.at("affine");
        double a = o.at("a").get<double>();
        double b = o.at("b").get<double>();
        Expr inner = parse_expr(o.at("of"));
        return [a, b, inner](double x, double y) { return a * inner(x, y) + b; };
    }
    fail(ErrorKind::invalid_argument,
         "bc json: unknown expression node " + e.dump());
}

Edge parse_edge(const std::string& s) {
    if (s == "x=-1") return Edge::XNeg;
    if (s == "x=1") return Edge::XPos;
    if (s == "y=-1") return Edge::YNeg;
    if (s == "y=1") return Edge::YPos;
    if (s == "all") return Edge::All;
    fail(ErrorKind::invalid_argument, "bc json: unknown edge '" + s + "'");
}

} // namespace

BoundarySpec custom_spec_from_json(const std::string& json_text) {
    json doc = json::parse(json_text, nullptr, false);
    require(!doc.is_discarded(), ErrorKind::invalid_argument,
            "bc json: malformed document");
    try {
        require(doc.contains("components") && doc.at("components").is_array() &&
                    doc.at("components").size() == 3,
                ErrorKind::invalid_argument,
                "bc json: need \"components\" with exactly three piece lists");
        std::array<std::vector<EdgePiece>, 3> pieces;
        for (size_t c = 0; c < 3; ++c) {
            const json& plist = doc.at("components")[c];
            require(plist.is_array(), ErrorKind::invalid_argument,
                    "bc json: component entry must be an array of pieces");
            for (const json& p : plist) {
                Edge edge = parse_edge(p.at("edge").get<std::string>());
                Expr f = parse_expr(p.at("expr"));
                pieces[c].push_back({edge, [f](double x, double y) { return f(x, y); }});
            }
        }
        std::string label = doc.value("label", std::string("custom"));
        return make_edge_spec(label, std::move(pieces));
    } catch (const json::exception& e) {
        fail(ErrorKind::invalid_argument, std::string("bc json: ") + e.what());
    }
}

BoundarySpec line_example_spec() {
    return make_interval_spec("line-example", {1.0, 0.0, 1.0}, {0.0, 1.0, 1.0});
}

} // namespace seglab
