/*
 * truncrange — truncated distributions built from skewing functions:
 * moments, variance-range bounds, asymptotics, and the empirical
 * sigma/ell power-law pipeline.
 *
 * C API conventions:
 *   - every function returns a tr_status; TR_OK means the outputs are valid
 *   - opaque handles (tr_dist, tr_series) are created by tr_*_new/_read/_synthesize
 *     and released with the matching tr_*_free
 *   - strings returned through char** are heap blocks released with tr_buffer_free
 *   - on failure, tr_last_error() returns a thread-local detail message that
 *     stays valid until the next API call on the same thread
 *
 * Copyright (c) 2026 The truncrange authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef TRUNCRANGE_H
#define TRUNCRANGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tr_status {
    TR_OK = 0,
    TR_ERR_INVALID_ARGUMENT = 1, /* malformed input or violated precondition */
    TR_ERR_DOMAIN = 2,           /* mathematically unsupported region */
    TR_ERR_CONVERGENCE = 3,      /* quadrature or root finding failed to converge */
    TR_ERR_PARSE = 4,            /* bad CSV content; message carries the line */
    TR_ERR_IO = 5,               /* file could not be opened / read / written */
    TR_ERR_INTERNAL = 6
} tr_status;

const char *tr_status_name(tr_status status);
const char *tr_last_error(void);
const char *tr_version(void);
void tr_buffer_free(void *buffer);

/* --- skewing-function families -------------------------------------- */

typedef enum tr_family {
    TR_FAMILY_NORMAL = 0,
    TR_FAMILY_STUDENT_T2 = 1,
    TR_FAMILY_CAUCHY = 2,
    TR_FAMILY_LAPLACE = 3,
    TR_FAMILY_LOGISTIC = 4
} tr_family;

/* Accepted names: "normal", "student-t2", "cauchy", "laplace", "logistic". */
tr_status tr_family_from_name(const char *name, tr_family *out);
const char *tr_family_name(tr_family family);

tr_status tr_skewing_cdf(tr_family family, double x, double *out);
tr_status tr_skewing_pdf(tr_family family, double x, double *out);

/* C(ell) = (2/ell^2) integral of y G(y) dy over [0, ell]. */
tr_status tr_c_closed(tr_family family, double ell, double *out);
tr_status tr_c_quadrature(tr_family family, double ell, double *out);

typedef enum tr_h_mode { TR_H_CLOSED = 0, TR_H_QUADRATURE = 1 } tr_h_mode;

/* H(ell) = 1 - (2C(ell)-1)/(2G(ell)-1); sigma^2 = ell^2 H(ell). */
tr_status tr_h_function(tr_family family, double ell, tr_h_mode mode, double *out);

/* --- truncated distributions ----------------------------------------- */

typedef struct tr_dist tr_dist;

tr_status tr_dist_new(tr_family family, double a, double b, tr_dist **out);
tr_status tr_dist_new_symmetric(tr_family family, double ell, tr_dist **out);
void tr_dist_free(tr_dist *dist);

tr_status tr_dist_cdf(const tr_dist *dist, double x, double *out);
tr_status tr_dist_pdf(const tr_dist *dist, double x, double *out);
tr_status tr_dist_quantile(const tr_dist *dist, double u, double *out);

/* Fills out[0..n) with inverse-CDF draws from a SplitMix64 stream. */
tr_status tr_dist_sample(const tr_dist *dist, size_t n, uint64_t seed, double *out);

tr_status tr_dist_mean(const tr_dist *dist, double *out);
tr_status tr_dist_variance(const tr_dist *dist, double *out);

/* E[(X-c)^p] for integer p >= 1 and a < c < b. */
tr_status tr_dist_moment_about(const tr_dist *dist, double center, int order, double *out);

/* E[((X-a)/(b-a))^p] for real p > -1. */
tr_status tr_dist_normalized_moment(const tr_dist *dist, double order, double *out);

/* --- inequality ladder ------------------------------------------------ */

typedef struct tr_bound_report {
    double bound;
    double actual;
    double slack;  /* signed toward satisfaction; ok iff slack >= -1e-10 */
    int satisfied;
} tr_bound_report;

tr_status tr_bound_upper(const tr_dist *dist, double center, int order, tr_bound_report *out);
tr_status tr_bound_lower_even(const tr_dist *dist, double center, int order, double t,
                              tr_bound_report *out);
tr_status tr_popoviciu_bound(double a, double b, int order, double *out);
tr_status tr_bound_gridmin(const tr_dist *dist, int order, tr_bound_report *out);
tr_status tr_bound_reverse_popoviciu(const tr_dist *dist, tr_bound_report *out);

/* Randomized verification of every bound; writes a per-kind table. */
typedef struct tr_bounds_fuzz_row {
    char kind[24];
    uint64_t checked;
    uint64_t violations;
    double worst_slack;
} tr_bounds_fuzz_row;

#define TR_BOUNDS_FUZZ_KINDS 7

tr_status tr_bounds_fuzz(size_t instances, uint64_t seed,
                         tr_bounds_fuzz_row rows[TR_BOUNDS_FUZZ_KINDS], int *all_satisfied);

/* --- asymptotic sweeps ------------------------------------------------ */

typedef struct tr_limit_check {
    double parameter;
    double observed;
    double target;
    double abs_error;
} tr_limit_check;

typedef enum tr_sweep_mode {
    TR_SWEEP_NORMALIZED_MOMENT = 0,
    TR_SWEEP_H = 1,
    TR_SWEEP_SIGMA2_OVER_ELL = 2,
    TR_SWEEP_SIGMA2_OVER_WIDTH2 = 3
} tr_sweep_mode;

tr_status tr_limit_sweep_small(tr_family family, tr_sweep_mode mode, double order,
                               const double *ells, size_t n_ells, int jobs, tr_limit_check *out);
tr_status tr_limit_sweep_large(tr_family family, tr_sweep_mode mode, double order,
                               const double *ells, size_t n_ells, int jobs, tr_limit_check *out);

/* CSV with header "ell,observed,target,abs_error". */
tr_status tr_sweep_to_csv(const tr_limit_check *checks, size_t n, char **out);

typedef struct tr_hcurve_point {
    double ell;
    double h;
    double sigma_over_ell;
} tr_hcurve_point;

tr_status tr_hcurve(tr_family family, double ell_min, double ell_max, size_t points,
                    tr_h_mode mode, int jobs, tr_hcurve_point *out);

/* CSV with header "ell,h,sigma_over_ell". */
tr_status tr_hcurve_to_csv(const tr_hcurve_point *points, size_t n, char **out);

/* --- empirical pipeline ----------------------------------------------- */

typedef struct tr_series tr_series;

typedef enum tr_csv_schema { TR_SCHEMA_RETURNS = 0, TR_SCHEMA_PRICES = 1 } tr_csv_schema;

/* path may be "-" for stdin. */
tr_status tr_series_read_csv(const char *path, tr_csv_schema schema, tr_series **out);
tr_status tr_series_synthesize(tr_family family, double ell, size_t days, size_t per_day,
                               uint64_t seed, tr_series **out);
void tr_series_free(tr_series *series);

tr_status tr_series_size(const tr_series *series, size_t *n_records, size_t *n_days);

/* Returns-schema CSV ("day,value") of the series. */
tr_status tr_series_to_csv(const tr_series *series, char **out);

typedef struct tr_daily_stat {
    char day[16]; /* ISO date, NUL terminated */
    uint64_t count;
    double sample_std;     /* n-1 denominator */
    double population_std; /* n denominator */
    double max_abs;
    double ratio; /* sample_std / max_abs */
    int skipped;  /* 1 when count < 2 or max_abs == 0 */
} tr_daily_stat;

/* out must hold n_days entries (from tr_series_size). */
tr_status tr_series_daily_stats(const tr_series *series, tr_daily_stat *out, size_t *n_out);

/* CSV with header "day,count,sample_std,population_std,max_abs,ratio";
 * skipped days are omitted. */
tr_status tr_daily_stats_to_csv(const tr_daily_stat *stats, size_t n, char **out);

typedef struct tr_curve_point {
    double ell;
    uint64_t n_kept;
    double sigma; /* NaN when n_kept < 2 */
    double ratio;
} tr_curve_point;

/* out must hold grid_size entries. */
tr_status tr_series_truncation_curve(const tr_series *series, size_t grid_size, int jobs,
                                     tr_curve_point *out);

/* CSV with header "ell,n_kept,sigma,ratio" at 15 significant digits. */
tr_status tr_curve_to_csv(const tr_curve_point *points, size_t n, char **out);

/* Parses the CSV written by tr_curve_to_csv; the array is released with
 * tr_buffer_free. */
tr_status tr_curve_read_csv(const char *path, tr_curve_point **out, size_t *n_out);

typedef struct tr_power_law_fit {
    double beta;
    double zeta;
    double slope;
    double intercept;
    double r_squared;
    double ell_min;
    double ell_max;
    uint64_t points_used;
    int degenerate; /* 1 when slope <= -1; beta and zeta are NaN */
} tr_power_law_fit;

/* Fits ln(sigma/ell) = slope ln(ell) + intercept over points with sigma > 0
 * inside [ell_min, ell_max]; pass NaN bounds to use the default window (the
 * lowest power-of-ten decade holding at least 10 usable points). */
tr_status tr_fit_power_law(const tr_curve_point *points, size_t n, double ell_min, double ell_max,
                           tr_power_law_fit *out);

/* Plain-text report: beta, zeta, slope, intercept, r_squared, ell_min,
 * ell_max, points_used as key=value lines. */
tr_status tr_fit_report_text(const tr_power_law_fit *fit, char **out);

/* --- self-test battery ------------------------------------------------ */

typedef void (*tr_report_fn)(int id, const char *name, int passed, const char *detail,
                             double seconds, void *user);

/* Runs the 9-part verification battery; n_failed receives the number of
 * failing parts.  quick != 0 shrinks the randomized counts.  cli_path may
 * name the CLI binary so the determinism part exercises real subprocesses;
 * pass NULL to verify the in-process pipeline instead. */
tr_status tr_selftest(int quick, const char *cli_path, int jobs, tr_report_fn report, void *user,
                      int *n_failed);

#ifdef __cplusplus
}
#endif

#endif /* TRUNCRANGE_H */
