#include "core/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include "core/version.hpp"

namespace seglab {

namespace {

using nlohmann::json;

json metric_value(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

json energy_json(const EnergyReport& e) {
    return json{{"dirichlet", e.dirichlet},
                {"penalty", e.penalty},
                {"total", e.total},
                {"product_l2", e.product_l2}};
}

json diagnostics_json(const Diagnostics& d) {
    json comps = json::array();
    for (const auto& c : d.component)
        comps.push_back(json{{"sandwich_violation", c.sandwich_violation},
                             {"bulk_max_laplacian", c.bulk_max_laplacian},
                             {"bulk_nodes", c.bulk_nodes}});
    json pairs = json::array();
    for (const auto& p : d.pair)
        pairs.push_back(json{{"i", p.i},
                             {"j", p.j},
                             {"max_dev_from_h", p.max_dev_from_h},
                             {"bulk_nodes", p.bulk_nodes}});
    return json{{"product_l2", d.product_l2},
                {"boundary_mismatch", d.boundary_mismatch},
                {"components", comps},
                {"pairs", pairs}};
}

json triple_json(const TripleField& t, const EnergyReport& e,
                 const Diagnostics& d) {
    json stages = json::array();
    for (const auto& s : t.stages)
        stages.push_back(json{{"epsilon", s.epsilon},
                              {"outer_iters", s.outer_iters},
                              {"final_update", s.final_update},
                              {"product_l2", s.product_l2}});
    return json{{"system", to_string(t.system)},
                {"epsilon", t.epsilon},
                {"iters", t.iters},
                {"final_update", t.final_update},
                {"system_residual", t.system_residual},
                {"energy", energy_json(e)},
                {"diagnostics", diagnostics_json(d)},
                {"stages", stages}};
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char ch : s)
        out.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
    return out;
}

struct ResolvedBc {
    BoundarySpec spec;
    Grid grid;
    std::string label;
};

ResolvedBc resolve_bc(const std::string& token, int n) {
    ResolvedBc r;
    if (token == "line") {
        r.spec = line_example_spec();
        r.grid = make_grid_1d(0.0, 1.0, n);
        r.label = r.spec.label;
        return r;
    }
    bool digits = !token.empty() &&
                  std::all_of(token.begin(), token.end(), [](unsigned char c) {
                      return std::isdigit(c);
                  });
    if (digits) {
        const CatalogEntry& e = get_bc(std::stoi(token));
        r.spec = e.spec;
        r.grid = make_grid_2d(-1.0, 1.0, -1.0, 1.0, n, n);
        r.label = e.spec.label;
        return r;
    }
    r.spec = custom_spec_from_json(read_text_file(token));
    r.grid = make_grid_2d(-1.0, 1.0, -1.0, 1.0, n, n);
    r.label = r.spec.label;
    return r;
}

const InterfaceSet* find_set(const std::vector<InterfaceSet>& sets, SourceTag src,
                             int component) {
    for (const auto& s : sets)
        if (s.source == src && s.component == component) return &s;
    return nullptr;
}

} // namespace

BcRunData run_one_bc(const RunManifest& m, const std::string& bc_token) {
    BcRunData d;
    d.bc = bc_token;
    ResolvedBc rb = resolve_bc(bc_token, m.n);
    d.label = rb.label;
    d.grid = rb.grid;
    d.delta = m.delta > 0.0 ? m.delta : std::sqrt(m.epsilon);

    EpsSolveConfig solver = m.solver;
    solver.epsilon = m.epsilon;

    d.sample = sample_boundary(rb.spec, d.grid);
    for (int i = 0; i < 3; ++i)
        d.h_ext[static_cast<size_t>(i)] =
            harmonic_extend(d.sample.phi[static_cast<size_t>(i)], d.grid, solver.inner);
    d.h = harmonic_differences(rb.spec, d.grid, solver.inner);
    d.cocycle = cocycle_residual(d.h);
    d.transversality = transversality_report(d.h);

    d.limit = limit_a_explicit(d.h);
    d.diag_limit = diagnostics(d.limit, d.h_ext, d.h, d.sample.phi, 0.0);
    d.energy_limit = energy(d.limit, 0.0);

    if (m.want_a) {
        d.sys_a = solve_system_a(rb.spec, d.grid, solver);
        d.diag_a = diagnostics(*d.sys_a, d.h_ext, d.h, d.sample.phi, m.epsilon);
        d.energy_a = energy(*d.sys_a, m.epsilon);
    }
    if (m.want_b) {
        d.sys_b = solve_system_b(rb.spec, d.grid, solver);
        d.diag_b = diagnostics(*d.sys_b, d.h_ext, d.h, d.sample.phi, m.epsilon);
        d.energy_b = energy(*d.sys_b, m.epsilon);
    }
    if (m.want_predicted) d.partition = build_partition(d.h, m.band);

    auto add_sets = [&](const TripleField& t, SourceTag src) {
        auto sets = extract_interfaces(t, d.delta, src);
        for (auto& s : sets) d.interfaces.push_back(std::move(s));
    };
    if (d.sys_a) add_sets(*d.sys_a, SourceTag::SysA);
    if (d.sys_b) add_sets(*d.sys_b, SourceTag::SysB);
    if (m.want_predicted) add_sets(d.limit, SourceTag::Predicted);

    const std::array<std::pair<SourceTag, SourceTag>, 3> pairs{
        {{SourceTag::SysA, SourceTag::SysB},
         {SourceTag::SysA, SourceTag::Predicted},
         {SourceTag::SysB, SourceTag::Predicted}}};
    for (const auto& [sa, sb] : pairs) {
        for (int c = 1; c <= 3; ++c) {
            const InterfaceSet* A = find_set(d.interfaces, sa, c);
            const InterfaceSet* B = find_set(d.interfaces, sb, c);
            if (A && B) d.comparisons.push_back({c, sa, sb, compare(*A, *B)});
        }
    }

    auto check_triple = [&](const TripleField& t, const Diagnostics& diag) {
        for (const auto& u : t.u) d.nonnegative = d.nonnegative && u.min_value() >= 0.0;
        d.boundary_exact = d.boundary_exact && diag.boundary_mismatch == 0.0;
    };
    if (d.sys_a) check_triple(*d.sys_a, *d.diag_a);
    if (d.sys_b) check_triple(*d.sys_b, *d.diag_b);
    d.passed = d.nonnegative && d.boundary_exact;
    return d;
}

nlohmann::json bc_report(const BcRunData& d) {
    json grid{{"dim", d.grid.dim}, {"nx", d.grid.nx}, {"ny", d.grid.ny},
              {"x0", d.grid.x0},   {"x1", d.grid.x1}, {"y0", d.grid.y0},
              {"y1", d.grid.y1},   {"hx", d.grid.hx}, {"hy", d.grid.hy}};

    json trans = json::array();
    for (const auto& t : d.transversality)
        trans.push_back(json{{"pair", t.pair},
                             {"min_grad", t.min_grad},
                             {"n_vertices", t.n_vertices},
                             {"degenerate", t.degenerate}});

    json systems;
    if (d.sys_a) systems["a"] = triple_json(*d.sys_a, d.energy_a, *d.diag_a);
    if (d.sys_b) systems["b"] = triple_json(*d.sys_b, d.energy_b, *d.diag_b);
    systems["limit"] = json{{"system", "limit"},
                            {"energy", energy_json(d.energy_limit)},
                            {"diagnostics", diagnostics_json(d.diag_limit)}};

    json comps = json::array();
    for (const auto& c : d.comparisons)
        comps.push_back(json{{"component", c.component},
                             {"pair", std::string(to_string(c.a)) + "_vs_" + to_string(c.b)},
                             {"hausdorff", metric_value(c.m.hausdorff)},
                             {"mean_nn", metric_value(c.m.mean_nn)},
                             {"area_sym_diff", metric_value(c.m.area_sym_diff)},
                             {"empty_mismatch", c.m.empty_mismatch}});

    json counts;
    for (const auto& s : d.interfaces) {
        std::string key = to_string(s.source);
        if (!counts.contains(key)) counts[key] = json::array({0, 0, 0});
        counts[key][static_cast<size_t>(s.component - 1)] = s.points.size();
    }

    json rep{{"bc", d.bc},
             {"label", d.label},
             {"grid", grid},
             {"delta", d.delta},
             {"boundary", json{{"max_product", d.sample.max_product},
                               {"min_value", d.sample.min_value}}},
             {"harmonic", json{{"cocycle_residual", d.cocycle},
                               {"transversality", trans}}},
             {"systems", systems},
             {"interfaces", json{{"delta", d.delta}, {"counts", counts}}},
             {"comparisons", comps},
             {"checks", json{{"nonnegative", d.nonnegative},
                             {"boundary_exact", d.boundary_exact},
                             {"converged", true},
                             {"passed", d.passed}}},
             {"error", nullptr}};

    if (d.partition) {
        json tps = json::array();
        for (const auto& tp : d.partition->triples)
            tps.push_back(json{{"x", tp.p.x}, {"y", tp.p.y}, {"refined", tp.refined}});
        json label_counts;
        std::array<int, 9> counts_by_label{};
        for (RegionLabel l : d.partition->labels)
            ++counts_by_label[static_cast<size_t>(l)];
        for (int l = 0; l < 9; ++l)
            label_counts[to_string(static_cast<RegionLabel>(l))] =
                counts_by_label[static_cast<size_t>(l)];
        json nverts;
        const std::array<const char*, 3> names{"h12", "h13", "h23"};
        for (int p = 0; p < 3; ++p) {
            size_t nv = 0;
            for (const auto& line : d.partition->contours[static_cast<size_t>(p)])
                nv += line.pts.size();
            nverts[names[static_cast<size_t>(p)]] = nv;
        }
        rep["partition"] = json{{"triple_points", tps},
                                {"label_counts", label_counts},
                                {"contour_vertices", nverts}};
    }
    return rep;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    json systems = json::array();
    if (m.want_a) systems.push_back("a");
    if (m.want_b) systems.push_back("b");
    if (m.want_limit) systems.push_back("limit");
    if (m.want_predicted) systems.push_back("predicted");
    return json{{"bcs", m.bcs},
                {"n", m.n},
                {"epsilon", m.epsilon},
                {"delta", m.delta > 0.0 ? json(m.delta) : json("auto")},
                {"systems", systems},
                {"band", m.band},
                {"out", m.out_dir},
                {"jobs", m.jobs}};
}

RunManifest manifest_from_json(const std::string& json_text) {
    json doc = json::parse(json_text, nullptr, false);
    require(!doc.is_discarded(), ErrorKind::invalid_argument,
            "manifest: malformed JSON");
    RunManifest m;
    try {
        if (doc.contains("bcs")) {
            m.bcs.clear();
            for (const auto& b : doc.at("bcs"))
                m.bcs.push_back(b.is_string() ? b.get<std::string>()
                                              : std::to_string(b.get<int>()));
        }
        m.n = doc.value("n", m.n);
        m.epsilon = doc.value("epsilon", m.epsilon);
        if (doc.contains("delta")) {
            const auto& dl = doc.at("delta");
            m.delta = dl.is_string() ? 0.0 : dl.get<double>();
        }
        if (doc.contains("systems")) {
            m.want_a = m.want_b = m.want_limit = m.want_predicted = false;
            for (const auto& s : doc.at("systems")) {
                std::string v = s.get<std::string>();
                if (v == "a") m.want_a = true;
                else if (v == "b") m.want_b = true;
                else if (v == "limit") m.want_limit = true;
                else if (v == "predicted") m.want_predicted = true;
                else fail(ErrorKind::invalid_argument, "manifest: unknown system '" + v + "'");
            }
        }
        m.band = doc.value("band", 0.0);
        m.out_dir = doc.value("out", std::string());
        m.jobs = doc.value("jobs", 1);
        if (doc.contains("solver")) {
            const auto& s = doc.at("solver");
            m.solver.eps_start = s.value("eps_start", m.solver.eps_start);
            m.solver.eps_ratio = s.value("eps_ratio", m.solver.eps_ratio);
            m.solver.outer_tol = s.value("outer_tol", m.solver.outer_tol);
            m.solver.outer_max = s.value("outer_max", m.solver.outer_max);
            m.solver.inner.tol = s.value("inner_tol", m.solver.inner.tol);
            m.solver.inner.max_iter = s.value("inner_max_iter", m.solver.inner.max_iter);
            m.solver.inner.omega = s.value("omega", m.solver.inner.omega);
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::invalid_argument, std::string("manifest: ") + e.what());
    }
    require(!m.bcs.empty(), ErrorKind::invalid_argument,
            "manifest: no boundary configurations requested");
    require(m.n >= 3, ErrorKind::invalid_argument, "manifest: n must be >= 3");
    require(m.epsilon > 0.0, ErrorKind::invalid_argument,
            "manifest: epsilon must be positive");
    require(m.jobs >= 1, ErrorKind::invalid_argument, "manifest: jobs must be >= 1");
    return m;
}

namespace {

void write_run_artifacts(const RunManifest& m, const BcRunData& d,
                         const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec, ErrorKind::io_failure, "cannot create output directory " + dir);

    auto dump_triple = [&](const TripleField& t, const EnergyReport& e,
                           const std::string& prefix) {
        for (int c = 0; c < 3; ++c) {
            std::string base = dir + "/" + prefix + "_u" + std::to_string(c + 1);
            write_field_csv(t.u[static_cast<size_t>(c)], base + ".csv");
            if (t.u[0].grid.dim == 2)
                write_field_pgm(t.u[static_cast<size_t>(c)], base + ".pgm");
        }
        json meta{{"system", to_string(t.system)},
                  {"epsilon", t.epsilon},
                  {"iters", t.iters},
                  {"final_update", t.final_update},
                  {"energy", energy_json(e)}};
        write_text_file(dir + "/" + prefix + "_manifest.json", meta.dump(2) + "\n");
    };
    if (d.sys_a) dump_triple(*d.sys_a, d.energy_a, "a");
    if (d.sys_b) dump_triple(*d.sys_b, d.energy_b, "b");
    if (m.want_limit) dump_triple(d.limit, d.energy_limit, "limit");

    write_field_csv(d.h.h12, dir + "/h12.csv");
    write_field_csv(d.h.h13, dir + "/h13.csv");
    write_field_csv(d.h.h23, dir + "/h23.csv");

    if (d.partition) {
        write_contours_csv(*d.partition, dir + "/contours.csv");
        if (d.grid.dim == 2) write_labels_pgm(*d.partition, dir + "/labels.pgm");
    }
    if (!d.interfaces.empty())
        write_interfaces_csv(d.interfaces, dir + "/interfaces.csv");
    write_text_file(dir + "/report.json", bc_report(d).dump(2) + "\n");
}

} // namespace

ExperimentResult run_experiment(const RunManifest& m) {
    ExperimentResult result;
    const size_t nruns = m.bcs.size();
    std::vector<json> fragments(nruns);
    std::vector<int> fail_kind(nruns, -1);

    auto process = [&](size_t idx) {
        const std::string& token = m.bcs[idx];
        try {
            BcRunData d = run_one_bc(m, token);
            json frag = bc_report(d);
            if (!m.out_dir.empty()) {
                std::string dir = m.out_dir + "/run" + std::to_string(idx) + "_" +
                                  sanitize(token);
                write_run_artifacts(m, d, dir);
            }
            if (!d.passed) fail_kind[idx] = static_cast<int>(ErrorKind::invariant_violation);
            fragments[idx] = std::move(frag);
        } catch (const Error& e) {
            fail_kind[idx] = static_cast<int>(e.kind());
            fragments[idx] = json{{"bc", token},
                                  {"error", e.what()},
                                  {"checks", json{{"converged",
                                                   e.kind() != ErrorKind::convergence_failure},
                                                  {"passed", false}}}};
        }
    };

    int jobs = std::min<int>(m.jobs, static_cast<int>(nruns));
    if (jobs <= 1) {
        for (size_t i = 0; i < nruns; ++i) process(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= nruns) break;
                    process(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    bool all_passed = true;
    for (size_t i = 0; i < nruns; ++i) {
        if (fail_kind[i] >= 0) {
            all_passed = false;
            switch (static_cast<ErrorKind>(fail_kind[i])) {
                case ErrorKind::convergence_failure:
                    result.any_convergence_failure = true;
                    break;
                case ErrorKind::io_failure: result.any_io_failure = true; break;
                default: result.any_invariant_failure = true; break;
            }
        }
    }
    result.passed = all_passed;
    result.report = json{{"schema_version", kReportSchemaVersion},
                         {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
                         {"manifest", manifest_to_json(m)},
                         {"runs", fragments},
                         {"passed", all_passed}};
    if (!m.out_dir.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(m.out_dir, ec);
        require(!ec, ErrorKind::io_failure, "cannot create output directory " + m.out_dir);
        write_text_file(m.out_dir + "/report.json", result.report.dump(2) + "\n");
    }
    return result;
}

std::string sweep(const RunManifest& base, const std::string& axis,
                  const std::vector<double>& values) {
    require(axis == "epsilon" || axis == "n" || axis == "delta",
            ErrorKind::invalid_argument, "sweep: axis must be epsilon, n or delta");
    require(!values.empty(), ErrorKind::invalid_argument, "sweep: no axis values");
    bool asc = true, desc = true;
    for (size_t i = 1; i < values.size(); ++i) {
        asc = asc && values[i] >= values[i - 1];
        desc = desc && values[i] <= values[i - 1];
    }
    require(asc || desc, ErrorKind::invalid_argument, "sweep: axis values must be sorted");

    std::ostringstream os;
    os << "axis,value,bc,product_l2_a,penalty_a,product_l2_b,penalty_b,"
          "haus_ab_max,haus_apred_max,haus_bpred_max\n";
    for (double v : values) {
        RunManifest m = base;
        m.out_dir.clear();
        if (axis == "epsilon") m.epsilon = v;
        else if (axis == "n") m.n = static_cast<int>(std::lround(v));
        else m.delta = v;
        for (const std::string& token : m.bcs) {
            BcRunData d = run_one_bc(m, token);
            double pa = d.sys_a ? d.diag_a->product_l2 : 0.0;
            double pb = d.sys_b ? d.diag_b->product_l2 : 0.0;
            auto haus_max = [&](SourceTag x, SourceTag y) {
                double h = 0.0;
                bool found = false;
                for (const auto& c : d.comparisons)
                    if ((c.a == x && c.b == y) || (c.a == y && c.b == x)) {
                        h = std::max(h, c.m.hausdorff);
                        found = true;
                    }
                return found ? h : std::numeric_limits<double>::quiet_NaN();
            };
            auto cellfmt = [](double x) {
                if (std::isnan(x)) return std::string();
                if (std::isinf(x)) return std::string("inf");
                return format_double(x);
            };
            os << axis << "," << format_double(v) << "," << token << ","
               << format_double(pa) << "," << format_double(pa / m.epsilon) << ","
               << format_double(pb) << "," << format_double(pb / m.epsilon) << ","
               << cellfmt(haus_max(SourceTag::SysA, SourceTag::SysB)) << ","
               << cellfmt(haus_max(SourceTag::SysA, SourceTag::Predicted)) << ","
               << cellfmt(haus_max(SourceTag::SysB, SourceTag::Predicted)) << "\n";
        }
    }
    std::string csv = os.str();
    if (!base.out_dir.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(base.out_dir, ec);
        require(!ec, ErrorKind::io_failure,
                "cannot create output directory " + base.out_dir);
        write_text_file(base.out_dir + "/sweep_" + axis + ".csv", csv);
    }
    return csv;
}

} // namespace seglab
