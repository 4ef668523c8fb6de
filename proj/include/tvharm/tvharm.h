/*
 * tvharm — trend-plus-harmonic models with smoothly time-varying amplitudes
 * for unequally spaced time series, and spectral-density estimation of the
 * residuals by deconvolution of the spectral window.
 *
 * C API over the C++ core: opaque handles, integer status codes, explicit
 * getters. Every function returning tvh_status leaves its outputs untouched
 * on failure; tvh_last_error() describes the most recent failure on the
 * calling thread.
 */

#ifndef TVHARM_H
#define TVHARM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TVH_API __declspec(dllexport)
#else
#define TVH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvh_status {
    TVH_OK = 0,
    TVH_ERR_INVALID_ARGUMENT,
    TVH_ERR_EMPTY_SERIES,
    TVH_ERR_LENGTH_MISMATCH,
    TVH_ERR_NONMONOTONE_TIMES,
    TVH_ERR_GRID_MISMATCH,
    TVH_ERR_INDEX_COLLISION,
    TVH_ERR_DEGENERATE_SPAN,
    TVH_ERR_DEGENERATE_DOMAIN,
    TVH_ERR_OUT_OF_DOMAIN,
    TVH_ERR_ORDER_TOO_HIGH,
    TVH_ERR_EMPTY_BASIS,
    TVH_ERR_SHAPE_MISMATCH,
    TVH_ERR_SINGULAR_SYSTEM,
    TVH_ERR_DEGENERATE_DOF,
    TVH_ERR_NONPOSITIVE_RESULT,
    TVH_ERR_ALL_FITS_FAILED,
    TVH_ERR_UNKNOWN_COMPONENT,
    TVH_ERR_TOO_FEW_REPLICATES,
    TVH_ERR_OUT_OF_RANGE,
    TVH_ERR_WINDOW_UNDERFLOW,
    TVH_ERR_NONSTATIONARY,
    TVH_ERR_NONPOSITIVE_PSD,
    TVH_ERR_BAD_RANGE,
    TVH_ERR_BAD_PARTITION,
    TVH_ERR_INTERNAL
} tvh_status;

TVH_API const char* tvh_version(void);
TVH_API const char* tvh_status_name(tvh_status status);
/* Message of the last failing call on this thread; empty string if none. */
TVH_API const char* tvh_last_error(void);

/* ------------------------------------------------------------------ */
/* Time series                                                         */

typedef struct tvh_series tvh_series;

TVH_API tvh_status tvh_series_create(const double* times, const double* values,
                                     size_t n, tvh_series** out);
TVH_API void tvh_series_free(tvh_series* series);
TVH_API size_t tvh_series_size(const tvh_series* series);
TVH_API tvh_status tvh_series_times(const tvh_series* series, double* out);
TVH_API tvh_status tvh_series_values(const tvh_series* series, double* out);

/* ------------------------------------------------------------------ */
/* Model configuration                                                 */

typedef struct tvh_model tvh_model;

TVH_API tvh_status tvh_model_create(tvh_model** out);
TVH_API void tvh_model_free(tvh_model* model);
/* Harmonic frequencies in cycles per time unit. */
TVH_API tvh_status tvh_model_set_frequencies(tvh_model* model, const double* f,
                                             size_t k);
/* Additional non-harmonic frequencies, appended after the harmonics. */
TVH_API tvh_status tvh_model_set_extra_frequencies(tvh_model* model,
                                                   const double* f, size_t k);
/* n interior intervals and spline degree d; the basis has J = n + d functions. */
TVH_API tvh_status tvh_model_set_basis(tvh_model* model, int n_intervals,
                                       int degree);
/* Difference order r and the 2K+1 smoothing weights (tau_1 for the trend,
 * tau_{2k}/tau_{2k+1} for the k-th cosine/sine amplitude). n_taus may be 1 to
 * broadcast one value, or 0 for an unpenalized fit. */
TVH_API tvh_status tvh_model_set_penalty(tvh_model* model, int order,
                                         const double* taus, size_t n_taus);

/* ------------------------------------------------------------------ */
/* Penalized least-squares fit                                         */

typedef struct tvh_fit tvh_fit;

TVH_API tvh_status tvh_fit_run(const tvh_series* series, const tvh_model* model,
                               tvh_fit** out);
TVH_API void tvh_fit_free(tvh_fit* fit);

TVH_API size_t tvh_fit_num_obs(const tvh_fit* fit);
TVH_API size_t tvh_fit_num_coeffs(const tvh_fit* fit);
TVH_API size_t tvh_fit_num_harmonics(const tvh_fit* fit);
TVH_API double tvh_fit_mse(const tvh_fit* fit);
TVH_API double tvh_fit_sigma2(const tvh_fit* fit);   /* NaN for interpolating fits */
TVH_API double tvh_fit_edf(const tvh_fit* fit);
/* AIC against the tau = 0 baseline of the same configuration; NaN when that
 * baseline cannot be fitted. */
TVH_API double tvh_fit_aic(const tvh_fit* fit);

TVH_API tvh_status tvh_fit_coefficients(const tvh_fit* fit, double* out);
TVH_API tvh_status tvh_fit_fitted(const tvh_fit* fit, double* out);
TVH_API tvh_status tvh_fit_residuals(const tvh_fit* fit, double* out);
TVH_API tvh_status tvh_fit_trend(const tvh_fit* fit, double* out);
/* Amplitude curve g_{ell,k} at the observation times; ell = 1 (cos) or 2 (sin),
 * k = 1..K. */
TVH_API tvh_status tvh_fit_amplitude(const tvh_fit* fit, int ell, int k,
                                     double* out);

/* Gaussian band for the fitted mean curve at the observation times. */
TVH_API tvh_status tvh_fit_prediction_band(const tvh_fit* fit, double level,
                                           double* lower, double* upper);
/* Gaussian band for the trend (ell = 0) or amplitude g_{ell,k}. */
TVH_API tvh_status tvh_fit_component_band(const tvh_fit* fit, int ell, int k,
                                          double level, double* center,
                                          double* lower, double* upper);

/* Evaluate fitted curves at arbitrary in-domain instants. */
TVH_API tvh_status tvh_fit_eval_mu(const tvh_fit* fit, const double* t, size_t n,
                                   double* out);
TVH_API tvh_status tvh_fit_eval_trend(const tvh_fit* fit, const double* t,
                                      size_t n, double* out);
TVH_API tvh_status tvh_fit_eval_amplitude(const tvh_fit* fit, int ell, int k,
                                          const double* t, size_t n, double* out);

/* ------------------------------------------------------------------ */
/* AIC grid search                                                     */

typedef struct tvh_grid tvh_grid;
typedef struct tvh_selection tvh_selection;

TVH_API tvh_status tvh_grid_create(tvh_grid** out);
TVH_API void tvh_grid_free(tvh_grid* grid);
TVH_API tvh_status tvh_grid_set_basis_sizes(tvh_grid* grid, const int* j_total,
                                            size_t n);
TVH_API tvh_status tvh_grid_set_degrees(tvh_grid* grid, const int* d, size_t n);
TVH_API tvh_status tvh_grid_set_orders(tvh_grid* grid, const int* r, size_t n);
TVH_API tvh_status tvh_grid_set_harmonic_counts(tvh_grid* grid, const int* k,
                                                size_t n);
/* Tau group: 1-based member indices into the tau vector plus candidate values.
 * Without any group, all taus move together through {0}. */
TVH_API tvh_status tvh_grid_add_tau_group(tvh_grid* grid, const int* members,
                                          size_t n_members,
                                          const double* candidates,
                                          size_t n_candidates);

TVH_API tvh_status tvh_tune(const tvh_series* series, const tvh_model* spec_template,
                            const tvh_grid* grid, int threads,
                            tvh_selection** out);
TVH_API void tvh_selection_free(tvh_selection* selection);
TVH_API size_t tvh_selection_size(const tvh_selection* selection);
TVH_API size_t tvh_selection_best(const tvh_selection* selection);
/* Row metadata; any output pointer may be NULL. `ok` is 0 for configurations
 * whose fit failed (their aic is +inf). */
TVH_API tvh_status tvh_selection_row(const tvh_selection* selection, size_t i,
                                     int* j_total, int* d, int* r, int* k,
                                     double* aic, double* mse, double* edf,
                                     int* ok);
TVH_API size_t tvh_selection_row_num_taus(const tvh_selection* selection, size_t i);
TVH_API tvh_status tvh_selection_row_taus(const tvh_selection* selection, size_t i,
                                          double* out);

/* ------------------------------------------------------------------ */
/* Residual spectrum                                                   */

typedef struct tvh_psd tvh_psd;

/* Full pipeline on one series: embed the times on the grid t0 + k*delta
 * (grid_tol < 0 selects delta * 1e-6), compute periodogram and spectral
 * window on the Fourier grid lambda_j = 2 pi j/(N delta), smooth, deconvolve,
 * smooth again. */
TVH_API tvh_status tvh_spectrum(const double* times, const double* values,
                                size_t n, double t0, double delta,
                                double grid_tol, double bandwidth,
                                tvh_psd** out);
TVH_API void tvh_psd_free(tvh_psd* psd);
TVH_API size_t tvh_psd_size(const tvh_psd* psd);
TVH_API tvh_status tvh_psd_lambdas(const tvh_psd* psd, double* out);
TVH_API tvh_status tvh_psd_frequencies(const tvh_psd* psd, double* out);
TVH_API tvh_status tvh_psd_periodogram(const tvh_psd* psd, double* out);
TVH_API tvh_status tvh_psd_window(const tvh_psd* psd, double* out);
TVH_API tvh_status tvh_psd_raw(const tvh_psd* psd, double* out);
TVH_API tvh_status tvh_psd_smoothed(const tvh_psd* psd, double* out);
/* Flatness of the smoothed density over lambda in (band_lo, band_hi]. */
TVH_API tvh_status tvh_psd_whiteness(const tvh_psd* psd, double band_lo,
                                     double band_hi, double flat_ratio,
                                     double* ratio, double* cv, int* white);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

typedef struct tvh_sim tvh_sim;

/* kind 0: sinusoidal trend/amplitudes, kind 1: polynomial. */
TVH_API tvh_status tvh_simulate_scenario(int kind, size_t n, uint64_t seed,
                                         tvh_sim** out);

typedef struct tvh_blazhko_params {
    double a0;                 /* carrier offset, mag */
    size_t n_harmonics;
    const double* freqs;       /* k*f0, cycles/day */
    const double* amps;        /* a_k, mag */
    const double* phases_deg;  /* phi_k, degrees */
    double am;                 /* modulation amplitude, mag */
    double fm;                 /* modulation frequency, 1/day */
    double phim_deg;           /* modulation phase, degrees */
    double h_depth;            /* modulation depth h = am / U_c */
    double sigma2;             /* noise variance */
    size_t grid_size;          /* observing grid points; 0 = default 2880 */
} tvh_blazhko_params;

/* NULL params selects the reference parameter set. */
TVH_API tvh_status tvh_simulate_blazhko(const tvh_blazhko_params* params,
                                        size_t n, uint64_t seed, tvh_sim** out);

TVH_API tvh_status tvh_simulate_ar2_blocks(double phi1, double phi2,
                                           double sigma2, double t0,
                                           double delta, size_t n_grid,
                                           size_t n_blocks, size_t block_len,
                                           size_t keep, uint64_t seed,
                                           tvh_sim** out);

TVH_API void tvh_sim_free(tvh_sim* sim);
TVH_API size_t tvh_sim_size(const tvh_sim* sim);
TVH_API tvh_status tvh_sim_times(const tvh_sim* sim, double* out);
TVH_API tvh_status tvh_sim_values(const tvh_sim* sim, double* out);
/* Ground-truth columns (named curves evaluated at the sample times). */
TVH_API size_t tvh_sim_num_truth(const tvh_sim* sim);
TVH_API const char* tvh_sim_truth_name(const tvh_sim* sim, size_t column);
TVH_API tvh_status tvh_sim_truth(const tvh_sim* sim, size_t column, double* out);
/* Model frequencies implied by the generator (k*f0 or the scenario w/(2 pi)). */
TVH_API size_t tvh_sim_num_frequencies(const tvh_sim* sim);
TVH_API tvh_status tvh_sim_frequencies(const tvh_sim* sim, double* out);
/* Grid parameters for the spectrum pipeline (0s when not applicable). */
TVH_API tvh_status tvh_sim_grid(const tvh_sim* sim, double* t0, double* delta);

#ifdef __cplusplus
}
#endif

#endif /* TVHARM_H */
