/* seglab: elliptic segregation systems, their sharp-interface limits, and
 * free-boundary comparison tooling, behind a C interface.
 *
 * All functions return a status code; 0 means success. On failure,
 * seglab_last_error() gives a message for the calling thread. Out-pointers
 * are written only on success. Objects are opaque handles released with the
 * matching _destroy function.
 */
#ifndef SEGLAB_H
#define SEGLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seglab_status {
    SEGLAB_OK = 0,
    SEGLAB_ERR_INVALID_ARGUMENT = 1,
    SEGLAB_ERR_INVARIANT = 2,
    SEGLAB_ERR_CONVERGENCE = 3,
    SEGLAB_ERR_IO = 4,
    SEGLAB_ERR_INTERNAL = 5
} seglab_status;

typedef enum seglab_system {
    SEGLAB_SYSTEM_A = 0, /* Lap(u_i) = (1/eps) u1 u2 u3 */
    SEGLAB_SYSTEM_B = 1 /* Lap(u_i) = (u_i/eps) prod_{j!=i} u_j^2 */
} seglab_system;

typedef struct seglab_grid seglab_grid;
typedef struct seglab_bc seglab_bc;
typedef struct seglab_harmonic seglab_harmonic;
typedef struct seglab_triple seglab_triple;

const char* seglab_version(void);

/* Message of the last failure on this thread; valid until the next call. */
const char* seglab_last_error(void);

/* Frees strings returned through char** out-parameters. */
void seglab_string_free(char* s);

/* --- grids -------------------------------------------------------------- */

seglab_status seglab_grid_create_1d(double a, double b, int n,
                                    seglab_grid** out);
seglab_status seglab_grid_create_2d(double x0, double x1, double y0, double y1,
                                    int nx, int ny, seglab_grid** out);
void seglab_grid_destroy(seglab_grid* g);
seglab_status seglab_grid_info(const seglab_grid* g, int* dim, int* nx,
                               int* ny, double* hx, double* hy);

/* --- boundary data ------------------------------------------------------ */

/* Built-in boundary configuration 1..9 on [-1,1]^2. */
seglab_status seglab_bc_catalog(int id, seglab_bc** out);

/* The interval example: phi = (1,0,1) at x=0 and (0,1,1) at x=1. */
seglab_status seglab_bc_line_example(seglab_bc** out);

/* Custom spec from a JSON document (see README for the vocabulary). */
seglab_status seglab_bc_from_json(const char* json_text, seglab_bc** out);

void seglab_bc_destroy(seglab_bc* bc);

/* Samples the traces on a grid; reports the boundary extrema without
 * failing on violations. */
seglab_status seglab_bc_validate(const seglab_bc* bc, const seglab_grid* g,
                                 double* max_product, double* min_value);

/* --- harmonic differences ----------------------------------------------- */

/* tol <= 0 selects the default solver tolerance (1e-10). */
seglab_status seglab_harmonic_differences(const seglab_bc* bc,
                                          const seglab_grid* g, double tol,
                                          seglab_harmonic** out);
void seglab_harmonic_destroy(seglab_harmonic* h);

/* which: 0 = h12, 1 = h13, 2 = h23. The pointer aliases the handle and is
 * valid until the handle is destroyed. Values are row-major (j*nx + i). */
seglab_status seglab_harmonic_field(const seglab_harmonic* h, int which,
                                    const double** values, int* count);
seglab_status seglab_harmonic_cocycle(const seglab_harmonic* h,
                                      double* residual);

/* --- solves -------------------------------------------------------------- */

/* eps-continuation solve of one penalized system at the given epsilon. */
seglab_status seglab_solve(const seglab_bc* bc, const seglab_grid* g,
                           seglab_system system, double epsilon,
                           seglab_triple** out);

/* Closed-form limit triple of System A from harmonic differences. */
seglab_status seglab_limit_explicit(const seglab_harmonic* h,
                                    seglab_triple** out);

void seglab_triple_destroy(seglab_triple* t);

/* component: 1..3. The pointer aliases the handle. */
seglab_status seglab_triple_component(const seglab_triple* t, int component,
                                      const double** values, int* count);
seglab_status seglab_triple_stats(const seglab_triple* t, double* epsilon,
                                  int* iters, double* final_update);
seglab_status seglab_triple_energy(const seglab_triple* t, double epsilon,
                                   double* dirichlet, double* penalty,
                                   double* total, double* product_l2);

/* Free-boundary points of one component: midpoints of grid edges whose
 * endpoint values straddle delta. Call with xs == ys == NULL to query the
 * count, then with buffers of that size. */
seglab_status seglab_triple_interface(const seglab_triple* t, int component,
                                      double delta, double* xs, double* ys,
                                      int* count);

/* --- whole-pipeline runs -------------------------------------------------- */

/* manifest_json schema (see README):
 *   {"bcs":["1","line",...], "n":201, "epsilon":1e-10, "delta":"auto",
 *    "systems":["a","b","limit","predicted"], "out":"dir", "jobs":1}
 * On run-level failures the report is still produced and the status reflects
 * the worst failure kind. */
seglab_status seglab_run_experiment(const char* manifest_json,
                                    char** report_json);

/* axis: "epsilon" | "n" | "delta"; values must be monotone. */
seglab_status seglab_sweep(const char* manifest_json, const char* axis,
                           const double* values, int n_values,
                           char** csv_text);

#ifdef __cplusplus
}
#endif

#endif /* SEGLAB_H */
