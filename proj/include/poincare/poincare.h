#ifndef POINCARE_POINCARE_H
#define POINCARE_POINCARE_H

/* C interface to the poincare library. Every fallible call returns a status;
 * on failure pc_last_error() describes the problem for the calling thread.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(POINCARE_BUILDING)
#    define PC_API __declspec(dllexport)
#  else
#    define PC_API __declspec(dllimport)
#  endif
#else
#  define PC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
    PC_OK = 0,
    PC_DOMAIN = 1,
    PC_INVALID_ARGUMENT = 2,
    PC_TOLERANCE_NOT_REACHED = 3,
    PC_BRACKET_FAILURE = 4,
    PC_STEP_UNDERFLOW = 5,
    PC_PARSE = 6,
    PC_EVAL = 7,
    PC_SPLIT_FAILURE = 8,
    PC_DEPTH_EXCEEDED = 9,
    PC_DEGENERATE = 10,
    PC_IO = 11,
    PC_BUFFER_TOO_SMALL = 12,
    PC_INTERNAL = 100
} pc_status;

PC_API const char* pc_last_error(void);
/* Byte offset of the last parse error, or (size_t)-1. */
PC_API size_t pc_last_error_offset(void);
PC_API const char* pc_status_string(pc_status status);

/* ---- generalized trigonometry ---------------------------------------- */

PC_API pc_status pc_pi_p(double p, double* out);
PC_API pc_status pc_pi_p_quad(double p, double tol, double* out);
PC_API pc_status pc_sin_p(double p, double x, double* out);
/* (pi_p / length)^p */
PC_API pc_status pc_sharp_constant_1d(double p, double length, double* out);

/* ---- piecewise-linear functions --------------------------------------- */

typedef struct pc_pwl pc_pwl;

PC_API pc_status pc_pwl_create(const double* xs, const double* values, size_t n, pc_pwl** out);
/* CSV with columns x,value. */
PC_API pc_status pc_pwl_read_csv(const char* path, pc_pwl** out);
PC_API void pc_pwl_free(pc_pwl* u);
PC_API size_t pc_pwl_size(const pc_pwl* u);
/* Copies breakpoints and values; capacity is the length of each array. */
PC_API pc_status pc_pwl_points(const pc_pwl* u, double* xs, double* values, size_t capacity);
PC_API pc_status pc_pwl_rearrange(const pc_pwl* u, pc_pwl** out);
PC_API pc_status pc_pwl_lp_norm_p(const pc_pwl* u, double p, double* out);
/* integral |u' + kappa u|^p */
PC_API pc_status pc_pwl_drift_energy(const pc_pwl* u, double p, double kappa, double* out);

typedef struct pc_drift_bound_report {
    double sharp;        /* integral |u#'|^p */
    double min_margin;   /* smallest drift energy of |u| minus sharp over the grid */
    double worst_kappa;  /* kappa attaining min_margin */
    size_t n_kappas;
    size_t n_violations;
    int holds;
} pc_drift_bound_report;

/* Checks integral |(|u|)' + kappa |u||^p >= integral |u#'|^p for each kappa (p >= 2). */
PC_API pc_status pc_verify_drift_bound(const pc_pwl* u, double p, const double* kappas, size_t n_kappas,
                                       double rel_tol, pc_drift_bound_report* out);

typedef struct pc_drift_counterexample {
    double lhs;            /* integral |u' + 1|^p */
    double rhs_rearranged; /* integral |u#' + 1|^p */
    double sharp;          /* integral |u#'|^p */
    int rearranged_inequality_holds; /* lhs >= rhs_rearranged */
    int refined_inequality_holds;    /* lhs >= sharp */
} pc_drift_counterexample;

PC_API pc_status pc_drift_counterexample_run(double p, double eps, pc_drift_counterexample* out);

typedef struct pc_two_slope_gap {
    double min_value;
    double lower_bound;
    double argmin_shift;
} pc_two_slope_gap;

PC_API pc_status pc_two_slope_gap_run(double a, double b, double p, pc_two_slope_gap* out);

/* ---- weighted one-dimensional eigenvalues ----------------------------- */

typedef struct pc_weight pc_weight;

PC_API pc_status pc_weight_exponential(double length, double kappa, pc_weight** out);
/* log f linear between knots; knots start at 0. */
PC_API pc_status pc_weight_spline(const double* knots, const double* log_values, size_t n, pc_weight** out);
/* CSV with columns x,log_f. */
PC_API pc_status pc_weight_read_csv(const char* path, pc_weight** out);
PC_API void pc_weight_free(pc_weight* w);
PC_API double pc_weight_length(const pc_weight* w);
PC_API int pc_weight_is_log_concave(const pc_weight* w);
/* Nonzero for exponential weights. */
PC_API int pc_weight_is_exponential(const pc_weight* w);
PC_API double pc_weight_kappa(const pc_weight* w);

typedef struct pc_eigen1d pc_eigen1d;

PC_API pc_status pc_neumann_first(const pc_weight* w, double p, double tol, pc_eigen1d** out);
PC_API pc_status pc_dirichlet_first(const pc_weight* w, double p, double tol, pc_eigen1d** out);
PC_API void pc_eigen1d_free(pc_eigen1d* r);
PC_API double pc_eigen1d_lambda(const pc_eigen1d* r);
/* NaN for Dirichlet results. */
PC_API double pc_eigen1d_interior_zero(const pc_eigen1d* r);
PC_API double pc_eigen1d_boundary_residual(const pc_eigen1d* r);
PC_API size_t pc_eigen1d_size(const pc_eigen1d* r);
PC_API pc_status pc_eigen1d_samples(const pc_eigen1d* r, double* xs, double* us, size_t capacity);

/* ---- convex polygons and slicing -------------------------------------- */

typedef struct pc_polygon pc_polygon;
typedef struct pc_field pc_field;
typedef struct pc_decomposition pc_decomposition;

/* xy holds n interleaved vertex coordinates x0 y0 x1 y1 ... */
PC_API pc_status pc_polygon_create(const double* xy, size_t n, pc_polygon** out);
/* One "x y" vertex per line. */
PC_API pc_status pc_polygon_read(const char* path, pc_polygon** out);
PC_API void pc_polygon_free(pc_polygon* poly);
PC_API size_t pc_polygon_size(const pc_polygon* poly);
PC_API pc_status pc_polygon_vertices(const pc_polygon* poly, double* xy, size_t capacity);
PC_API double pc_polygon_area(const pc_polygon* poly);
PC_API double pc_polygon_diameter(const pc_polygon* poly);
PC_API void pc_polygon_min_width(const pc_polygon* poly, double* width, double* theta);

/* Expression in x and y, e.g. "x^2 + sin(pi*y)". */
PC_API pc_status pc_field_parse(const char* src, pc_field** out);
PC_API void pc_field_free(pc_field* f);
PC_API pc_status pc_field_eval(const pc_field* f, double x, double y, double* out);
/* Writes the canonical form; *needed receives the length including the terminator. */
PC_API pc_status pc_field_print(const pc_field* f, char* buf, size_t capacity, size_t* needed);

/* integral over poly of |u - t|^{p-2} (u - t) */
PC_API pc_status pc_p_moment(const pc_polygon* poly, const pc_field* u, double p, double t, double tol,
                             double* out);
PC_API pc_status pc_balance_shift(const pc_polygon* poly, const pc_field* u, double p, double tol,
                                  double* out);

/* Balanced slicing of u - shift into pieces of width at most eps. */
PC_API pc_status pc_decompose(const pc_polygon* poly, const pc_field* u, double shift, double p, double eps,
                              double tol, int max_depth, pc_decomposition** out);
PC_API void pc_decomposition_free(pc_decomposition* d);
PC_API size_t pc_decomposition_size(const pc_decomposition* d);
/* Absolute bound on each piece's moment: twice the per-split tolerance. */
PC_API double pc_decomposition_moment_tolerance(const pc_decomposition* d);

typedef struct pc_piece_info {
    double axis_theta;
    double length;
    double width;
    double area;
    double p_moment_residual;
    size_t n_vertices;
} pc_piece_info;

PC_API pc_status pc_decomposition_piece(const pc_decomposition* d, size_t i, pc_piece_info* out);
PC_API pc_status pc_decomposition_piece_vertices(const pc_decomposition* d, size_t i, double* xy,
                                                 size_t capacity);
/* Discrete log-concavity of the chord lengths across the piece axis, m samples. */
PC_API pc_status pc_decomposition_piece_log_concave(const pc_decomposition* d, size_t i, size_t m, int* out);

typedef struct pc_thin_reduction {
    double r1, r2, r3;
    double area;
    double eps;
    double bound;
    int within_bound;
} pc_thin_reduction;

/* c2_bound bounds u - shift and its first and second derivatives on the piece. */
PC_API pc_status pc_thin_reduction_check(const pc_decomposition* d, size_t i, double p, double c2_bound,
                                         pc_thin_reduction* out);

/* ---- two-dimensional eigenvalues -------------------------------------- */

typedef struct pc_bound_report {
    double mu_est;
    double d;
    double bound;
    double ratio;
    double h;
    double shift_t;
    int iterations;
    int converged;
    int holds; /* ratio >= 1 - 5h */
} pc_bound_report;

PC_API pc_status pc_check_bound(const pc_polygon* poly, double p, double h, double tol, pc_bound_report* out);

typedef struct pc_sharpness_row {
    double delta;
    double h;
    double mu_est;
    double bound;
    double ratio;
} pc_sharpness_row;

/* rows must hold n_deltas entries; h = delta / 5 for each slab. */
PC_API pc_status pc_thin_slab_sharpness(double d, const double* deltas, size_t n_deltas, double p,
                                        pc_sharpness_row* rows, int* monotone, int* converges);

#ifdef __cplusplus
}
#endif

#endif
