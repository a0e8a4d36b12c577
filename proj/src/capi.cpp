#include "seglab.h"

#include <cstring>
#include <string>

#include "core/experiment.hpp"
#include "core/version.hpp"

using namespace seglab;

struct seglab_grid {
    Grid g;
};
struct seglab_bc {
    BoundarySpec spec;
};
struct seglab_harmonic {
    HarmonicTriple h;
};
struct seglab_triple {
    TripleField t;
};

namespace {

thread_local std::string g_last_error;

seglab_status to_status(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_argument: return SEGLAB_ERR_INVALID_ARGUMENT;
        case ErrorKind::invariant_violation: return SEGLAB_ERR_INVARIANT;
        case ErrorKind::convergence_failure: return SEGLAB_ERR_CONVERGENCE;
        case ErrorKind::io_failure: return SEGLAB_ERR_IO;
    }
    return SEGLAB_ERR_INTERNAL;
}

template <typename Fn>
seglab_status guarded(Fn&& fn) {
    try {
        fn();
        return SEGLAB_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SEGLAB_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SEGLAB_ERR_INTERNAL;
    }
}

seglab_status need(bool cond, const char* msg) {
    if (cond) return SEGLAB_OK;
    g_last_error = msg;
    return SEGLAB_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* seglab_version(void) { return kToolVersion; }

const char* seglab_last_error(void) { return g_last_error.c_str(); }

void seglab_string_free(char* s) { delete[] s; }

seglab_status seglab_grid_create_1d(double a, double b, int n,
                                    seglab_grid** out) {
    if (auto rc = need(out != nullptr, "grid_create_1d: out is null")) return rc;
    return guarded([&] { *out = new seglab_grid{make_grid_1d(a, b, n)}; });
}

seglab_status seglab_grid_create_2d(double x0, double x1, double y0, double y1,
                                    int nx, int ny, seglab_grid** out) {
    if (auto rc = need(out != nullptr, "grid_create_2d: out is null")) return rc;
    return guarded([&] { *out = new seglab_grid{make_grid_2d(x0, x1, y0, y1, nx, ny)}; });
}

void seglab_grid_destroy(seglab_grid* g) { delete g; }

seglab_status seglab_grid_info(const seglab_grid* g, int* dim, int* nx,
                               int* ny, double* hx, double* hy) {
    if (auto rc = need(g != nullptr, "grid_info: grid is null")) return rc;
    if (dim) *dim = g->g.dim;
    if (nx) *nx = g->g.nx;
    if (ny) *ny = g->g.ny;
    if (hx) *hx = g->g.hx;
    if (hy) *hy = g->g.hy;
    return SEGLAB_OK;
}

seglab_status seglab_bc_catalog(int id, seglab_bc** out) {
    if (auto rc = need(out != nullptr, "bc_catalog: out is null")) return rc;
    return guarded([&] { *out = new seglab_bc{get_bc(id).spec}; });
}

seglab_status seglab_bc_line_example(seglab_bc** out) {
    if (auto rc = need(out != nullptr, "bc_line_example: out is null")) return rc;
    return guarded([&] { *out = new seglab_bc{line_example_spec()}; });
}

seglab_status seglab_bc_from_json(const char* json_text, seglab_bc** out) {
    if (auto rc = need(out != nullptr && json_text != nullptr,
                       "bc_from_json: null argument"))
        return rc;
    return guarded([&] { *out = new seglab_bc{custom_spec_from_json(json_text)}; });
}

void seglab_bc_destroy(seglab_bc* bc) { delete bc; }

seglab_status seglab_bc_validate(const seglab_bc* bc, const seglab_grid* g,
                                 double* max_product, double* min_value) {
    if (auto rc = need(bc != nullptr && g != nullptr, "bc_validate: null argument"))
        return rc;
    return guarded([&] {
        BoundarySample s = sample_boundary_report(bc->spec, g->g);
        if (max_product) *max_product = s.max_product;
        if (min_value) *min_value = s.min_value;
    });
}

seglab_status seglab_harmonic_differences(const seglab_bc* bc,
                                          const seglab_grid* g, double tol,
                                          seglab_harmonic** out) {
    if (auto rc = need(bc != nullptr && g != nullptr && out != nullptr,
                       "harmonic_differences: null argument"))
        return rc;
    return guarded([&] {
        LinearSolveConfig cfg;
        if (tol > 0.0) cfg.tol = tol;
        *out = new seglab_harmonic{harmonic_differences(bc->spec, g->g, cfg)};
    });
}

void seglab_harmonic_destroy(seglab_harmonic* h) { delete h; }

seglab_status seglab_harmonic_field(const seglab_harmonic* h, int which,
                                    const double** values, int* count) {
    if (auto rc = need(h != nullptr && values != nullptr && count != nullptr,
                       "harmonic_field: null argument"))
        return rc;
    if (auto rc = need(which >= 0 && which <= 2, "harmonic_field: which must be 0..2"))
        return rc;
    const ScalarField& f = which == 0 ? h->h.h12 : which == 1 ? h->h.h13 : h->h.h23;
    *values = f.v.data();
    *count = static_cast<int>(f.v.size());
    return SEGLAB_OK;
}

seglab_status seglab_harmonic_cocycle(const seglab_harmonic* h,
                                      double* residual) {
    if (auto rc = need(h != nullptr && residual != nullptr,
                       "harmonic_cocycle: null argument"))
        return rc;
    *residual = cocycle_residual(h->h);
    return SEGLAB_OK;
}

seglab_status seglab_solve(const seglab_bc* bc, const seglab_grid* g,
                           seglab_system system, double epsilon,
                           seglab_triple** out) {
    if (auto rc = need(bc != nullptr && g != nullptr && out != nullptr,
                       "solve: null argument"))
        return rc;
    return guarded([&] {
        EpsSolveConfig cfg;
        cfg.epsilon = epsilon;
        TripleField t = system == SEGLAB_SYSTEM_A ? solve_system_a(bc->spec, g->g, cfg)
                                                  : solve_system_b(bc->spec, g->g, cfg);
        *out = new seglab_triple{std::move(t)};
    });
}

seglab_status seglab_limit_explicit(const seglab_harmonic* h,
                                    seglab_triple** out) {
    if (auto rc = need(h != nullptr && out != nullptr, "limit_explicit: null argument"))
        return rc;
    return guarded([&] { *out = new seglab_triple{limit_a_explicit(h->h)}; });
}

void seglab_triple_destroy(seglab_triple* t) { delete t; }

seglab_status seglab_triple_component(const seglab_triple* t, int component,
                                      const double** values, int* count) {
    if (auto rc = need(t != nullptr && values != nullptr && count != nullptr,
                       "triple_component: null argument"))
        return rc;
    if (auto rc = need(component >= 1 && component <= 3,
                       "triple_component: component must be 1..3"))
        return rc;
    const ScalarField& f = t->t.u[static_cast<size_t>(component - 1)];
    *values = f.v.data();
    *count = static_cast<int>(f.v.size());
    return SEGLAB_OK;
}

seglab_status seglab_triple_stats(const seglab_triple* t, double* epsilon,
                                  int* iters, double* final_update) {
    if (auto rc = need(t != nullptr, "triple_stats: triple is null")) return rc;
    if (epsilon) *epsilon = t->t.epsilon;
    if (iters) *iters = t->t.iters;
    if (final_update) *final_update = t->t.final_update;
    return SEGLAB_OK;
}

seglab_status seglab_triple_energy(const seglab_triple* t, double epsilon,
                                   double* dirichlet, double* penalty,
                                   double* total, double* product_l2) {
    if (auto rc = need(t != nullptr, "triple_energy: triple is null")) return rc;
    return guarded([&] {
        EnergyReport e = energy(t->t, epsilon);
        if (dirichlet) *dirichlet = e.dirichlet;
        if (penalty) *penalty = e.penalty;
        if (total) *total = e.total;
        if (product_l2) *product_l2 = e.product_l2;
    });
}

seglab_status seglab_triple_interface(const seglab_triple* t, int component,
                                      double delta, double* xs, double* ys,
                                      int* count) {
    if (auto rc = need(t != nullptr && count != nullptr,
                       "triple_interface: null argument"))
        return rc;
    if (auto rc = need(component >= 1 && component <= 3,
                       "triple_interface: component must be 1..3"))
        return rc;
    return guarded([&] {
        auto sets = extract_interfaces(t->t, delta, SourceTag::SysA);
        const auto& pts = sets[static_cast<size_t>(component - 1)].points;
        if (xs && ys) {
            int n = std::min(*count, static_cast<int>(pts.size()));
            for (int i = 0; i < n; ++i) {
                xs[i] = pts[static_cast<size_t>(i)].x;
                ys[i] = pts[static_cast<size_t>(i)].y;
            }
        }
        *count = static_cast<int>(pts.size());
    });
}

seglab_status seglab_run_experiment(const char* manifest_json,
                                    char** report_json) {
    if (auto rc = need(manifest_json != nullptr, "run_experiment: manifest is null"))
        return rc;
    seglab_status run_status = SEGLAB_OK;
    seglab_status rc = guarded([&] {
        RunManifest m = manifest_from_json(manifest_json);
        ExperimentResult r = run_experiment(m);
        if (report_json) *report_json = dup_string(r.report.dump(2) + "\n");
        if (r.any_io_failure) run_status = SEGLAB_ERR_IO;
        else if (r.any_convergence_failure) run_status = SEGLAB_ERR_CONVERGENCE;
        else if (r.any_invariant_failure || !r.passed) run_status = SEGLAB_ERR_INVARIANT;
        if (run_status != SEGLAB_OK) g_last_error = "one or more runs failed; see report";
    });
    return rc != SEGLAB_OK ? rc : run_status;
}

seglab_status seglab_sweep(const char* manifest_json, const char* axis,
                           const double* values, int n_values,
                           char** csv_text) {
    if (auto rc = need(manifest_json != nullptr && axis != nullptr &&
                           values != nullptr && n_values > 0,
                       "sweep: null or empty argument"))
        return rc;
    return guarded([&] {
        RunManifest m = manifest_from_json(manifest_json);
        std::vector<double> vals(values, values + n_values);
        std::string csv = sweep(m, axis, vals);
        if (csv_text) *csv_text = dup_string(csv);
    });
}

} // extern "C"
