#include "core/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace seglab {

const char* to_string(RegionLabel l) {
    switch (l) {
        case RegionLabel::R12: return "R12";
        case RegionLabel::R13: return "R13";
        case RegionLabel::R23: return "R23";
        case RegionLabel::Pure1: return "PURE1";
        case RegionLabel::Pure2: return "PURE2";
        case RegionLabel::Pure3: return "PURE3";
        case RegionLabel::Interface: return "INTERFACE";
        case RegionLabel::Triple: return "TRIPLE";
        case RegionLabel::Undecided: return "UNDECIDED";
    }
    return "?";
}

std::vector<RegionLabel> classify(const HarmonicTriple& h, double band) {
    require(band >= 0.0, ErrorKind::invalid_argument, "classify: band must be >= 0");
    double scale = 1.0 + h.h13.max_abs();
    require(cocycle_residual(h) <= 1e-8 * scale, ErrorKind::invalid_argument,
            "classify: harmonic triple violates the cocycle identity");
    std::vector<RegionLabel> out(h.h12.v.size(), RegionLabel::Undecided);
    for (size_t k = 0; k < out.size(); ++k) {
        const double a = h.h12.v[k]; // phi1 - phi2 extension
        const double t = h.h13.v[k]; // phi1 - phi3 extension
        const double c = h.h23.v[k]; // phi2 - phi3 extension
        if (c > band && t > band) {
            out[k] = RegionLabel::R12;
        } else if (c < -band && a > band) {
            out[k] = RegionLabel::R13;
        } else if (a < -band && t < -band) {
            out[k] = RegionLabel::R23;
        } else {
            const bool near12 = std::abs(a) <= band;
            const bool near13 = std::abs(t) <= band;
            const bool near23 = std::abs(c) <= band;
            const int near = near12 + near13 + near23;
            if (near >= 2) {
                out[k] = RegionLabel::Triple;
            } else if (near23 && std::max(a, t) > band) {
                out[k] = band == 0.0 ? RegionLabel::Pure1 : RegionLabel::Interface;
            } else if (near13 && a < -band) {
                out[k] = band == 0.0 ? RegionLabel::Pure2 : RegionLabel::Interface;
            } else if (near12 && t < -band) {
                out[k] = band == 0.0 ? RegionLabel::Pure3 : RegionLabel::Interface;
            } else if (near == 1) {
                out[k] = RegionLabel::Interface;
            }
            // anything else stays Undecided
        }
    }
    return out;
}

namespace {

struct Segment {
    int va = -1, vb = -1;
};

// Edge-crossing vertices are computed once per grid edge and shared between
// the two adjacent cells, so stitching can match exact vertex ids.
struct ContourBuilder {
    const ScalarField& f;
    const Grid& g;
    std::vector<Point> vertices;
    std::map<int, int> edge_to_vertex; // edge key -> vertex index
    std::vector<Segment> segments;

    explicit ContourBuilder(const ScalarField& field) : f(field), g(field.grid) {}

    static bool inside(double v) { return v > 0.0; }

    int horiz_key(int i, int j) const { return j * (g.nx - 1) + i; }
    int vert_key(int i, int j) const {
        return (g.ny) * (g.nx - 1) + j * g.nx + i;
    }

    int vertex_on(int key, double xa, double ya, double xb, double yb, double va,
                  double vb) {
        auto it = edge_to_vertex.find(key);
        if (it != edge_to_vertex.end()) return it->second;
        double t = va / (va - vb);
        Point p{xa + t * (xb - xa), ya + t * (yb - ya)};
        int id = static_cast<int>(vertices.size());
        vertices.push_back(p);
        edge_to_vertex.emplace(key, id);
        return id;
    }

    // Edge slots of a cell: 0 bottom, 1 right, 2 top, 3 left.
    int cell_edge_vertex(int i, int j, int slot) {
        switch (slot) {
            case 0:
                return vertex_on(horiz_key(i, j), g.x(i), g.y(j), g.x(i + 1), g.y(j),
                                 f.at(i, j), f.at(i + 1, j));
            case 1:
                return vertex_on(vert_key(i + 1, j), g.x(i + 1), g.y(j), g.x(i + 1),
                                 g.y(j + 1), f.at(i + 1, j), f.at(i + 1, j + 1));
            case 2:
                return vertex_on(horiz_key(i, j + 1), g.x(i), g.y(j + 1), g.x(i + 1),
                                 g.y(j + 1), f.at(i, j + 1), f.at(i + 1, j + 1));
            default:
                return vertex_on(vert_key(i, j), g.x(i), g.y(j), g.x(i), g.y(j + 1),
                                 f.at(i, j), f.at(i, j + 1));
        }
    }

    void emit(int i, int j, int slot_a, int slot_b) {
        segments.push_back({cell_edge_vertex(i, j, slot_a), cell_edge_vertex(i, j, slot_b)});
    }

    void run() {
        for (int j = 0; j + 1 < g.ny; ++j) {
            for (int i = 0; i + 1 < g.nx; ++i) {
                int code = (inside(f.at(i, j)) ? 1 : 0) | (inside(f.at(i + 1, j)) ? 2 : 0) |
                           (inside(f.at(i + 1, j + 1)) ? 4 : 0) |
                           (inside(f.at(i, j + 1)) ? 8 : 0);
                switch (code) {
                    case 0:
                    case 15: break;
                    case 1: emit(i, j, 0, 3); break;
                    case 2: emit(i, j, 0, 1); break;
                    case 3: emit(i, j, 3, 1); break;
                    case 4: emit(i, j, 2, 1); break;
                    case 6: emit(i, j, 0, 2); break;
                    case 7: emit(i, j, 3, 2); break;
                    case 8: emit(i, j, 3, 2); break;
                    case 9: emit(i, j, 0, 2); break;
                    case 11: emit(i, j, 2, 1); break;
                    case 12: emit(i, j, 3, 1); break;
                    case 13: emit(i, j, 0, 1); break;
                    case 14: emit(i, j, 0, 3); break;
                    case 5: { // corners 00 and 11 positive; center sign decides
                        double center = 0.25 * (f.at(i, j) + f.at(i + 1, j) +
                                                f.at(i, j + 1) + f.at(i + 1, j + 1));
                        if (inside(center)) {
                            emit(i, j, 0, 1);
                            emit(i, j, 2, 3);
                        } else {
                            emit(i, j, 0, 3);
                            emit(i, j, 2, 1);
                        }
                        break;
                    }
                    case 10: { // corners 10 and 01 positive
                        double center = 0.25 * (f.at(i, j) + f.at(i + 1, j) +
                                                f.at(i, j + 1) + f.at(i + 1, j + 1));
                        if (inside(center)) {
                            emit(i, j, 0, 3);
                            emit(i, j, 2, 1);
                        } else {
                            emit(i, j, 0, 1);
                            emit(i, j, 2, 3);
                        }
                        break;
                    }
                    default: break;
                }
            }
        }
    }

    std::vector<Polyline> stitch() const {
        std::vector<std::vector<int>> at_vertex(vertices.size());
        for (size_t s = 0; s < segments.size(); ++s) {
            at_vertex[static_cast<size_t>(segments[s].va)].push_back(static_cast<int>(s));
            at_vertex[static_cast<size_t>(segments[s].vb)].push_back(static_cast<int>(s));
        }
        std::vector<bool> used(segments.size(), false);
        std::vector<Polyline> out;

        auto walk = [&](int start_vertex) {
            Polyline line;
            int v = start_vertex;
            line.pts.push_back(vertices[static_cast<size_t>(v)]);
            while (true) {
                int next_seg = -1;
                for (int s : at_vertex[static_cast<size_t>(v)])
                    if (!used[static_cast<size_t>(s)]) {
                        next_seg = s;
                        break;
                    }
                if (next_seg < 0) break;
                used[static_cast<size_t>(next_seg)] = true;
                v = segments[static_cast<size_t>(next_seg)].va == v
                        ? segments[static_cast<size_t>(next_seg)].vb
                        : segments[static_cast<size_t>(next_seg)].va;
                line.pts.push_back(vertices[static_cast<size_t>(v)]);
            }
            return line;
        };

        // open chains first (odd-degree endpoints), then closed loops
        for (size_t v = 0; v < vertices.size(); ++v) {
            if (at_vertex[v].size() % 2 == 1) {
                bool has_unused = false;
                for (int s : at_vertex[v])
                    if (!used[static_cast<size_t>(s)]) has_unused = true;
                if (has_unused) out.push_back(walk(static_cast<int>(v)));
            }
        }
        for (size_t s = 0; s < segments.size(); ++s) {
            if (!used[s]) out.push_back(walk(segments[s].va));
        }
        return out;
    }
};

} // namespace

std::vector<Polyline> zero_contours(const ScalarField& field) {
    field.ensure_finite("contour field");
    const Grid& g = field.grid;
    if (g.dim == 1) {
        std::vector<Polyline> out;
        for (int i = 0; i + 1 < g.nx; ++i) {
            double va = field.at(i, 0), vb = field.at(i + 1, 0);
            if ((va > 0.0) == (vb > 0.0)) continue;
            double t = va / (va - vb);
            Polyline line;
            line.pts.push_back({g.x(i) + t * (g.x(i + 1) - g.x(i)), 0.0});
            out.push_back(std::move(line));
        }
        return out;
    }
    ContourBuilder b(field);
    b.run();
    return b.stitch();
}

namespace {

struct BilinearCell {
    double v00, v10, v01, v11;
    double eval(double s, double t) const {
        return v00 * (1 - s) * (1 - t) + v10 * s * (1 - t) + v01 * (1 - s) * t +
               v11 * s * t;
    }
    double ds(double s, double t) const {
        (void)s;
        return (v10 - v00) * (1 - t) + (v11 - v01) * t;
    }
    double dt(double s, double t) const {
        (void)t;
        return (v01 - v00) * (1 - s) + (v11 - v10) * s;
    }
    bool straddles() const {
        double mn = std::min(std::min(v00, v10), std::min(v01, v11));
        double mx = std::max(std::max(v00, v10), std::max(v01, v11));
        return mn <= 0.0 && mx >= 0.0 && !(mn == 0.0 && mx == 0.0);
    }
};

BilinearCell cell_values(const ScalarField& f, int i, int j) {
    return {f.at(i, j), f.at(i + 1, j), f.at(i, j + 1), f.at(i + 1, j + 1)};
}

struct LocalPt {
    double s, t;
};

// Marching-squares segments of one bilinear cell in local coordinates.
int cell_segments(const BilinearCell& c, std::array<std::array<LocalPt, 2>, 2>& segs) {
    auto in = [](double v) { return v > 0.0; };
    int code = (in(c.v00) ? 1 : 0) | (in(c.v10) ? 2 : 0) | (in(c.v11) ? 4 : 0) |
               (in(c.v01) ? 8 : 0);
    if (code == 0 || code == 15) return 0;
    auto cross = [](double va, double vb) { return va / (va - vb); };
    LocalPt bottom{cross(c.v00, c.v10), 0.0};
    LocalPt right{1.0, cross(c.v10, c.v11)};
    LocalPt top{cross(c.v01, c.v11), 1.0};
    LocalPt left{0.0, cross(c.v00, c.v01)};
    auto one = [&](LocalPt a, LocalPt b) {
        segs[0] = {a, b};
        return 1;
    };
    switch (code) {
        case 1: return one(bottom, left);
        case 2: return one(bottom, right);
        case 3: return one(left, right);
        case 4: return one(top, right);
        case 6: return one(bottom, top);
        case 7: return one(left, top);
        case 8: return one(left, top);
        case 9: return one(bottom, top);
        case 11: return one(top, right);
        case 12: return one(left, right);
        case 13: return one(bottom, right);
        case 14: return one(bottom, left);
        case 5: {
            bool center = in(0.25 * (c.v00 + c.v10 + c.v01 + c.v11));
            segs[0] = center ? std::array<LocalPt, 2>{bottom, right}
                             : std::array<LocalPt, 2>{bottom, left};
            segs[1] = center ? std::array<LocalPt, 2>{top, left}
                             : std::array<LocalPt, 2>{top, right};
            return 2;
        }
        case 10: {
            bool center = in(0.25 * (c.v00 + c.v10 + c.v01 + c.v11));
            segs[0] = center ? std::array<LocalPt, 2>{bottom, left}
                             : std::array<LocalPt, 2>{bottom, right};
            segs[1] = center ? std::array<LocalPt, 2>{top, right}
                             : std::array<LocalPt, 2>{top, left};
            return 2;
        }
        default: return 0;
    }
}

} // namespace

std::vector<TriplePoint> triple_points(const HarmonicTriple& h) {
    const Grid& g = h.h12.grid;
    if (g.dim == 1) return {}; // zero sets of two differences are point sets
    double scale12 = 1.0 + h.h12.max_abs();
    double scale23 = 1.0 + h.h23.max_abs();

    std::vector<TriplePoint> raw;
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            BilinearCell A = cell_values(h.h12, i, j);
            BilinearCell C = cell_values(h.h23, i, j);
            if (!A.straddles() || !C.straddles()) continue;

            // The zero curves intersect inside the cell iff h23 changes sign
            // along the in-cell segment of the h12 contour.
            std::array<std::array<LocalPt, 2>, 2> segs;
            int nseg = cell_segments(A, segs);
            double s0 = 0.5, t0 = 0.5;
            bool crossing = false;
            for (int q = 0; q < nseg; ++q) {
                double ca = C.eval(segs[q][0].s, segs[q][0].t);
                double cb = C.eval(segs[q][1].s, segs[q][1].t);
                if ((ca > 0.0) != (cb > 0.0) || ca == 0.0 || cb == 0.0) {
                    crossing = true;
                    s0 = 0.5 * (segs[q][0].s + segs[q][1].s);
                    t0 = 0.5 * (segs[q][0].t + segs[q][1].t);
                    break;
                }
            }
            if (!crossing) continue;

            double s = s0, t = t0;
            bool ok = false;
            for (int it = 0; it < 20; ++it) {
                double fa = A.eval(s, t), fc = C.eval(s, t);
                if (std::abs(fa) <= 1e-10 * scale12 && std::abs(fc) <= 1e-10 * scale23) {
                    ok = true;
                    break;
                }
                double j11 = A.ds(s, t), j12 = A.dt(s, t);
                double j21 = C.ds(s, t), j22 = C.dt(s, t);
                double det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-300) break;
                s -= (fa * j22 - fc * j12) / det;
                t -= (j11 * fc - j21 * fa) / det;
                if (s < -1.0 || s > 2.0 || t < -1.0 || t > 2.0) break;
            }
            const double slop = 1e-9;
            if (ok && s >= -slop && s <= 1.0 + slop && t >= -slop && t <= 1.0 + slop) {
                s = std::clamp(s, 0.0, 1.0);
                t = std::clamp(t, 0.0, 1.0);
                raw.push_back({{g.x(i) + s * g.hx, g.y(j) + t * g.hy}, true});
            } else {
                // genuine crossing but Newton failed; keep the cell center as
                // a low-precision marker
                raw.push_back({{g.x(i) + 0.5 * g.hx, g.y(j) + 0.5 * g.hy}, false});
            }
        }
    }

    // One report per crossing: cluster within a cell diagonal, preferring
    // Newton-refined representatives.
    const double linkage = std::hypot(g.hx, g.hy);
    std::vector<TriplePoint> reps;
    for (const auto& tp : raw) {
        bool merged = false;
        for (auto& rep : reps) {
            if (dist(rep.p, tp.p) <= linkage) {
                if (tp.refined && !rep.refined) rep = tp;
                merged = true;
                break;
            }
        }
        if (!merged) reps.push_back(tp);
    }
    return reps;
}

std::array<TransversalityEntry, 3> transversality_report(const HarmonicTriple& h) {
    std::array<TransversalityEntry, 3> out;
    const std::array<const ScalarField*, 3> fields{&h.h12, &h.h13, &h.h23};
    const std::array<const char*, 3> names{"h12", "h13", "h23"};
    for (int p = 0; p < 3; ++p) {
        const ScalarField& f = *fields[static_cast<size_t>(p)];
        const Grid& g = f.grid;
        TransversalityEntry e;
        e.pair = names[static_cast<size_t>(p)];
        auto contours = zero_contours(f);
        double min_grad = 0.0;
        bool first = true;
        for (const auto& line : contours) {
            for (const auto& v : line.pts) {
                double gx, gy = 0.0;
                if (g.dim == 1) {
                    auto [ci, cj] = g.nearest_node(v.x, v.y);
                    int i = std::clamp(ci, 1, g.nx - 2);
                    gx = (f.at(i + 1, 0) - f.at(i - 1, 0)) / (2.0 * g.hx);
                } else {
                    int i = std::clamp(static_cast<int>((v.x - g.x0) / g.hx), 0, g.nx - 2);
                    int j = std::clamp(static_cast<int>((v.y - g.y0) / g.hy), 0, g.ny - 2);
                    BilinearCell c = cell_values(f, i, j);
                    double s = std::clamp((v.x - g.x(i)) / g.hx, 0.0, 1.0);
                    double t = std::clamp((v.y - g.y(j)) / g.hy, 0.0, 1.0);
                    gx = c.ds(s, t) / g.hx;
                    gy = c.dt(s, t) / g.hy;
                }
                double m = std::hypot(gx, gy);
                min_grad = first ? m : std::min(min_grad, m);
                first = false;
                ++e.n_vertices;
            }
        }
        e.min_grad = first ? 0.0 : min_grad;
        e.degenerate = first || e.min_grad < 1e-6;
        out[static_cast<size_t>(p)] = e;
    }
    return out;
}

PartitionMap build_partition(const HarmonicTriple& h, double band) {
    PartitionMap pm;
    pm.grid = h.h12.grid;
    pm.labels = classify(h, band);
    pm.contours[0] = zero_contours(h.h12);
    pm.contours[1] = zero_contours(h.h13);
    pm.contours[2] = zero_contours(h.h23);
    pm.triples = triple_points(h);
    return pm;
}

} // namespace seglab
