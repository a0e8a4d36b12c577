#include "core/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace seglab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    require(os.good(), ErrorKind::io_failure, "cannot open for writing: " + path);
    os << content;
    os.close();
    require(os.good(), ErrorKind::io_failure, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), ErrorKind::io_failure, "cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_field_csv(const ScalarField& f, const std::string& path) {
    const Grid& g = f.grid;
    std::ostringstream os;
    os << "# " << g.nx << " " << g.ny << " " << format_double(g.x0) << " "
       << format_double(g.x1) << " " << format_double(g.y0) << " "
       << format_double(g.y1) << "\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i) os << ",";
            os << format_double(f.at(i, j));
        }
        os << "\n";
    }
    write_text_file(path, os.str());
}

ScalarField read_field_csv(const std::string& path) {
    std::istringstream is(read_text_file(path));
    std::string header;
    std::getline(is, header);
    require(header.size() > 2 && header[0] == '#', ErrorKind::io_failure,
            "field csv: missing header in " + path);
    std::istringstream hs(header.substr(1));
    int nx = 0, ny = 0;
    double x0, x1, y0, y1;
    hs >> nx >> ny >> x0 >> x1 >> y0 >> y1;
    require(nx >= 3 && ny >= 1, ErrorKind::io_failure, "field csv: bad header in " + path);
    Grid g = ny == 1 ? make_grid_1d(x0, x1, nx) : make_grid_2d(x0, x1, y0, y1, nx, ny);
    ScalarField f(g);
    for (int j = 0; j < ny; ++j) {
        std::string line;
        require(static_cast<bool>(std::getline(is, line)), ErrorKind::io_failure,
                "field csv: truncated file " + path);
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i < nx; ++i) {
            require(static_cast<bool>(std::getline(ls, cell, ',')), ErrorKind::io_failure,
                    "field csv: short row in " + path);
            f.at(i, j) = std::stod(cell);
        }
    }
    return f;
}

void write_field_pgm(const ScalarField& f, const std::string& path) {
    const Grid& g = f.grid;
    double lo = f.min_value(), hi = f.max_value();
    double span = hi - lo;
    std::string body;
    body.reserve(static_cast<size_t>(g.node_count()));
    // top row of the image is the largest y
    for (int j = g.ny - 1; j >= 0; --j)
        for (int i = 0; i < g.nx; ++i) {
            double t = span > 0.0 ? (f.at(i, j) - lo) / span : 0.0;
            body.push_back(static_cast<char>(static_cast<int>(t * 255.0 + 0.5)));
        }
    std::ostringstream os;
    os << "P5\n" << g.nx << " " << g.ny << "\n255\n" << body;
    write_text_file(path, os.str());

    nlohmann::json side;
    side["min"] = lo;
    side["max"] = hi;
    side["nx"] = g.nx;
    side["ny"] = g.ny;
    side["scaling"] = "linear-minmax";
    side["row_order"] = "top row is max y";
    write_text_file(path + ".json", side.dump(2) + "\n");
}

namespace {

int label_gray(RegionLabel l) {
    switch (l) {
        case RegionLabel::R12: return 60;
        case RegionLabel::R13: return 120;
        case RegionLabel::R23: return 180;
        case RegionLabel::Pure1: return 80;
        case RegionLabel::Pure2: return 140;
        case RegionLabel::Pure3: return 200;
        case RegionLabel::Interface: return 230;
        case RegionLabel::Triple: return 255;
        case RegionLabel::Undecided: return 0;
    }
    return 0;
}

} // namespace

void write_labels_pgm(const PartitionMap& pm, const std::string& path) {
    const Grid& g = pm.grid;
    std::string body;
    body.reserve(static_cast<size_t>(g.node_count()));
    for (int j = g.ny - 1; j >= 0; --j)
        for (int i = 0; i < g.nx; ++i)
            body.push_back(static_cast<char>(
                label_gray(pm.labels[static_cast<size_t>(g.index(i, j))])));
    std::ostringstream os;
    os << "P5\n" << g.nx << " " << g.ny << "\n255\n" << body;
    write_text_file(path, os.str());

    nlohmann::json side;
    for (int l = 0; l <= static_cast<int>(RegionLabel::Undecided); ++l)
        side["palette"][to_string(static_cast<RegionLabel>(l))] =
            label_gray(static_cast<RegionLabel>(l));
    side["row_order"] = "top row is max y";
    write_text_file(path + ".json", side.dump(2) + "\n");
}

void write_contours_csv(const PartitionMap& pm, const std::string& path) {
    std::ostringstream os;
    os << "pair,poly_id,x,y\n";
    const std::array<const char*, 3> names{"h12", "h13", "h23"};
    for (int p = 0; p < 3; ++p) {
        int poly_id = 0;
        for (const auto& line : pm.contours[static_cast<size_t>(p)]) {
            for (const auto& v : line.pts)
                os << names[static_cast<size_t>(p)] << "," << poly_id << ","
                   << format_double(v.x) << "," << format_double(v.y) << "\n";
            ++poly_id;
        }
    }
    write_text_file(path, os.str());
}

void write_interfaces_csv(const std::vector<InterfaceSet>& sets,
                          const std::string& path) {
    std::ostringstream os;
    os << "source,component,x,y\n";
    for (const auto& s : sets)
        for (const auto& p : s.points)
            os << to_string(s.source) << "," << s.component << ","
               << format_double(p.x) << "," << format_double(p.y) << "\n";
    write_text_file(path, os.str());
}

} // namespace seglab
