#include "tvharm/tvharm.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "core/fit.hpp"
#include "core/intervals.hpp"
#include "core/selection.hpp"
#include "core/simulate.hpp"
#include "core/spectral.hpp"
#include "core/timeseries.hpp"

using namespace tvharm;

namespace {

thread_local std::string g_last_error;

tvh_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return TVH_ERR_INVALID_ARGUMENT;
        case ErrorCode::EmptySeries: return TVH_ERR_EMPTY_SERIES;
        case ErrorCode::LengthMismatch: return TVH_ERR_LENGTH_MISMATCH;
        case ErrorCode::NonMonotoneTimes: return TVH_ERR_NONMONOTONE_TIMES;
        case ErrorCode::GridMismatch: return TVH_ERR_GRID_MISMATCH;
        case ErrorCode::IndexCollision: return TVH_ERR_INDEX_COLLISION;
        case ErrorCode::DegenerateSpan: return TVH_ERR_DEGENERATE_SPAN;
        case ErrorCode::DegenerateDomain: return TVH_ERR_DEGENERATE_DOMAIN;
        case ErrorCode::OutOfDomain: return TVH_ERR_OUT_OF_DOMAIN;
        case ErrorCode::OrderTooHigh: return TVH_ERR_ORDER_TOO_HIGH;
        case ErrorCode::EmptyBasis: return TVH_ERR_EMPTY_BASIS;
        case ErrorCode::ShapeMismatch: return TVH_ERR_SHAPE_MISMATCH;
        case ErrorCode::SingularSystem: return TVH_ERR_SINGULAR_SYSTEM;
        case ErrorCode::DegenerateDof: return TVH_ERR_DEGENERATE_DOF;
        case ErrorCode::NonPositiveResult: return TVH_ERR_NONPOSITIVE_RESULT;
        case ErrorCode::AllFitsFailed: return TVH_ERR_ALL_FITS_FAILED;
        case ErrorCode::UnknownComponent: return TVH_ERR_UNKNOWN_COMPONENT;
        case ErrorCode::TooFewReplicates: return TVH_ERR_TOO_FEW_REPLICATES;
        case ErrorCode::OutOfRange: return TVH_ERR_OUT_OF_RANGE;
        case ErrorCode::WindowTransformUnderflow: return TVH_ERR_WINDOW_UNDERFLOW;
        case ErrorCode::NonStationary: return TVH_ERR_NONSTATIONARY;
        case ErrorCode::NonPositivePsd: return TVH_ERR_NONPOSITIVE_PSD;
        case ErrorCode::BadRange: return TVH_ERR_BAD_RANGE;
        case ErrorCode::BadPartition: return TVH_ERR_BAD_PARTITION;
        case ErrorCode::Internal: return TVH_ERR_INTERNAL;
    }
    return TVH_ERR_INTERNAL;
}

template <typename Fn>
tvh_status guarded(Fn&& fn) {
    try {
        fn();
        return TVH_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TVH_ERR_INTERNAL;
    }
}

bool check(bool ok, const char* message) {
    if (!ok) g_last_error = message;
    return ok;
}

void copy_out(const std::vector<double>& src, double* dst) {
    std::memcpy(dst, src.data(), src.size() * sizeof(double));
}

void copy_out(const Eigen::VectorXd& src, double* dst) {
    std::memcpy(dst, src.data(), static_cast<std::size_t>(src.size()) * sizeof(double));
}

}  // namespace

struct tvh_series {
    TimeSeries ts;
};

struct tvh_model {
    ModelSpec spec;
};

struct tvh_fit {
    TimeSeries ts;
    ModelSpec spec;
    SplineBasis basis;
    DesignMatrix design;
    Eigen::MatrixXd penalty;
    FitResult result;
    double aic_value = std::numeric_limits<double>::quiet_NaN();
};

struct tvh_grid {
    TuningGrid grid;
};

struct tvh_selection {
    SelectionResult result;
};

struct tvh_psd {
    PsdEstimate psd;
};

struct tvh_sim {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<std::string> truth_names;
    std::vector<std::vector<double>> truth;
    std::vector<double> frequencies;
    double grid_t0 = 0.0;
    double grid_delta = 0.0;
};

extern "C" {

const char* tvh_version(void) { return "1.0.0"; }

const char* tvh_status_name(tvh_status status) {
    switch (status) {
        case TVH_OK: return "ok";
        case TVH_ERR_INVALID_ARGUMENT: return "invalid argument";
        case TVH_ERR_EMPTY_SERIES: return "empty series";
        case TVH_ERR_LENGTH_MISMATCH: return "length mismatch";
        case TVH_ERR_NONMONOTONE_TIMES: return "non-monotone times";
        case TVH_ERR_GRID_MISMATCH: return "grid mismatch";
        case TVH_ERR_INDEX_COLLISION: return "grid index collision";
        case TVH_ERR_DEGENERATE_SPAN: return "degenerate time span";
        case TVH_ERR_DEGENERATE_DOMAIN: return "degenerate domain";
        case TVH_ERR_OUT_OF_DOMAIN: return "out of domain";
        case TVH_ERR_ORDER_TOO_HIGH: return "difference order too high";
        case TVH_ERR_EMPTY_BASIS: return "empty basis";
        case TVH_ERR_SHAPE_MISMATCH: return "shape mismatch";
        case TVH_ERR_SINGULAR_SYSTEM: return "singular system";
        case TVH_ERR_DEGENERATE_DOF: return "degenerate degrees of freedom";
        case TVH_ERR_NONPOSITIVE_RESULT: return "non-positive result";
        case TVH_ERR_ALL_FITS_FAILED: return "all fits failed";
        case TVH_ERR_UNKNOWN_COMPONENT: return "unknown component";
        case TVH_ERR_TOO_FEW_REPLICATES: return "too few replicates";
        case TVH_ERR_OUT_OF_RANGE: return "out of range";
        case TVH_ERR_WINDOW_UNDERFLOW: return "window transform underflow";
        case TVH_ERR_NONSTATIONARY: return "non-stationary parameters";
        case TVH_ERR_NONPOSITIVE_PSD: return "non-positive spectral density";
        case TVH_ERR_BAD_RANGE: return "bad range";
        case TVH_ERR_BAD_PARTITION: return "bad partition";
        case TVH_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* tvh_last_error(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------------ */

tvh_status tvh_series_create(const double* times, const double* values, size_t n,
                             tvh_series** out) {
    if (!check(times && values && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto series = std::make_unique<tvh_series>();
        series->ts = validate(std::vector<double>(times, times + n),
                              std::vector<double>(values, values + n));
        *out = series.release();
    });
}

void tvh_series_free(tvh_series* series) { delete series; }

size_t tvh_series_size(const tvh_series* series) {
    return series ? series->ts.size() : 0;
}

tvh_status tvh_series_times(const tvh_series* series, double* out) {
    if (!check(series && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    copy_out(series->ts.times(), out);
    return TVH_OK;
}

tvh_status tvh_series_values(const tvh_series* series, double* out) {
    if (!check(series && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    copy_out(series->ts.values(), out);
    return TVH_OK;
}

/* ------------------------------------------------------------------ */

tvh_status tvh_model_create(tvh_model** out) {
    if (!check(out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    *out = new tvh_model();
    return TVH_OK;
}

void tvh_model_free(tvh_model* model) { delete model; }

tvh_status tvh_model_set_frequencies(tvh_model* model, const double* f, size_t k) {
    if (!check(model && (f || k == 0), "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    model->spec.frequencies.assign(f, f + k);
    return TVH_OK;
}

tvh_status tvh_model_set_extra_frequencies(tvh_model* model, const double* f,
                                           size_t k) {
    if (!check(model && (f || k == 0), "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    model->spec.extra_frequencies.assign(f, f + k);
    return TVH_OK;
}

tvh_status tvh_model_set_basis(tvh_model* model, int n_intervals, int degree) {
    if (!check(model, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    model->spec.basis_intervals = n_intervals;
    model->spec.degree = degree;
    return TVH_OK;
}

tvh_status tvh_model_set_penalty(tvh_model* model, int order, const double* taus,
                                 size_t n_taus) {
    if (!check(model && (taus || n_taus == 0), "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    model->spec.penalty_order = order;
    model->spec.taus.assign(taus, taus + n_taus);
    return TVH_OK;
}

/* ------------------------------------------------------------------ */

tvh_status tvh_fit_run(const tvh_series* series, const tvh_model* model,
                       tvh_fit** out) {
    if (!check(series && model && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto fit = std::make_unique<tvh_fit>();
        fit->ts = series->ts;
        fit->spec = model->spec;
        fit->spec.validate();

        const KnotVector kv =
            build_knots(fit->ts.times().front(), fit->ts.times().back(),
                        fit->spec.basis_intervals, fit->spec.degree);
        fit->basis = basis_matrix(kv, fit->ts.times());
        fit->design = build_design(fit->basis, fit->spec);
        fit->penalty = penalty_block(fit->spec.penalty_spec());
        const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
            fit->ts.values().data(), static_cast<Eigen::Index>(fit->ts.size()));
        fit->result = fit_pols(fit->design, y, fit->penalty, fit->basis);

        // AIC against the tau = 0 baseline of the same configuration.
        try {
            const Eigen::MatrixXd no_penalty =
                Eigen::MatrixXd::Zero(fit->penalty.rows(), fit->penalty.cols());
            const FitResult base_fit = fit_pols(fit->design, y, no_penalty, fit->basis);
            if (std::isfinite(base_fit.sigma2))
                fit->aic_value = aic(y, fit->result.fitted, fit->result.edf,
                                     base_fit.sigma2);
        } catch (const Error&) {
            // Baseline not fittable; AIC stays NaN.
        }
        *out = fit.release();
    });
}

void tvh_fit_free(tvh_fit* fit) { delete fit; }

size_t tvh_fit_num_obs(const tvh_fit* fit) { return fit ? fit->ts.size() : 0; }

size_t tvh_fit_num_coeffs(const tvh_fit* fit) {
    return fit ? static_cast<size_t>(fit->result.model.coefficients.theta.size()) : 0;
}

size_t tvh_fit_num_harmonics(const tvh_fit* fit) {
    return fit ? static_cast<size_t>(fit->result.model.coefficients.total_harmonics)
               : 0;
}

double tvh_fit_mse(const tvh_fit* fit) {
    return fit ? fit->result.mse : std::numeric_limits<double>::quiet_NaN();
}

double tvh_fit_sigma2(const tvh_fit* fit) {
    return fit ? fit->result.sigma2 : std::numeric_limits<double>::quiet_NaN();
}

double tvh_fit_edf(const tvh_fit* fit) {
    return fit ? fit->result.edf : std::numeric_limits<double>::quiet_NaN();
}

double tvh_fit_aic(const tvh_fit* fit) {
    return fit ? fit->aic_value : std::numeric_limits<double>::quiet_NaN();
}

tvh_status tvh_fit_coefficients(const tvh_fit* fit, double* out) {
    if (!check(fit && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(fit->result.model.coefficients.theta, out);
    return TVH_OK;
}

tvh_status tvh_fit_fitted(const tvh_fit* fit, double* out) {
    if (!check(fit && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(fit->result.fitted, out);
    return TVH_OK;
}

tvh_status tvh_fit_residuals(const tvh_fit* fit, double* out) {
    if (!check(fit && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(fit->result.residuals, out);
    return TVH_OK;
}

tvh_status tvh_fit_trend(const tvh_fit* fit, double* out) {
    if (!check(fit && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(fit->result.trend, out);
    return TVH_OK;
}

tvh_status tvh_fit_amplitude(const tvh_fit* fit, int ell, int k, double* out) {
    if (!check(fit && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const int total = fit->result.model.coefficients.total_harmonics;
        require(ell == 1 || ell == 2, ErrorCode::UnknownComponent,
                "amplitude selector ell must be 1 or 2");
        require(k >= 1 && k <= total, ErrorCode::UnknownComponent,
                "harmonic index out of range");
        const std::size_t idx =
            static_cast<std::size_t>((ell - 1) * total + (k - 1));
        copy_out(fit->result.amplitudes[idx], out);
    });
}

tvh_status tvh_fit_prediction_band(const tvh_fit* fit, double level, double* lower,
                                   double* upper) {
    if (!check(fit && lower && upper, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Band band = prediction_band(fit->result, fit->design, fit->penalty,
                                          level, fit->ts.times());
        copy_out(band.lower, lower);
        copy_out(band.upper, upper);
    });
}

tvh_status tvh_fit_component_band(const tvh_fit* fit, int ell, int k, double level,
                                  double* center, double* lower, double* upper) {
    if (!check(fit && center && lower && upper, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const ComponentRef ref = ell == 0 ? ComponentRef::for_trend()
                                          : ComponentRef::for_amplitude(ell, k);
        const Band band = component_band(fit->result, fit->basis, fit->design,
                                         fit->penalty, ref, level);
        copy_out(band.center, center);
        copy_out(band.lower, lower);
        copy_out(band.upper, upper);
    });
}

tvh_status tvh_fit_eval_mu(const tvh_fit* fit, const double* t, size_t n,
                           double* out) {
    if (!check(fit && t && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        for (size_t i = 0; i < n; ++i) out[i] = fit->result.model.eval_mu(t[i]);
    });
}

tvh_status tvh_fit_eval_trend(const tvh_fit* fit, const double* t, size_t n,
                              double* out) {
    if (!check(fit && t && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        for (size_t i = 0; i < n; ++i) out[i] = fit->result.model.eval_trend(t[i]);
    });
}

tvh_status tvh_fit_eval_amplitude(const tvh_fit* fit, int ell, int k,
                                  const double* t, size_t n, double* out) {
    if (!check(fit && t && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        for (size_t i = 0; i < n; ++i)
            out[i] = fit->result.model.eval_amplitude(ell, k, t[i]);
    });
}

/* ------------------------------------------------------------------ */

tvh_status tvh_grid_create(tvh_grid** out) {
    if (!check(out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    *out = new tvh_grid();
    return TVH_OK;
}

void tvh_grid_free(tvh_grid* grid) { delete grid; }

tvh_status tvh_grid_set_basis_sizes(tvh_grid* grid, const int* j_total, size_t n) {
    if (!check(grid && j_total, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    grid->grid.basis_sizes.assign(j_total, j_total + n);
    return TVH_OK;
}

tvh_status tvh_grid_set_degrees(tvh_grid* grid, const int* d, size_t n) {
    if (!check(grid && d, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    grid->grid.degrees.assign(d, d + n);
    return TVH_OK;
}

tvh_status tvh_grid_set_orders(tvh_grid* grid, const int* r, size_t n) {
    if (!check(grid && r, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    grid->grid.orders.assign(r, r + n);
    return TVH_OK;
}

tvh_status tvh_grid_set_harmonic_counts(tvh_grid* grid, const int* k, size_t n) {
    if (!check(grid && k, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    grid->grid.harmonic_counts.assign(k, k + n);
    return TVH_OK;
}

tvh_status tvh_grid_add_tau_group(tvh_grid* grid, const int* members,
                                  size_t n_members, const double* candidates,
                                  size_t n_candidates) {
    if (!check(grid && members && candidates, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    TauGroup group;
    group.members.assign(members, members + n_members);
    group.candidates.assign(candidates, candidates + n_candidates);
    grid->grid.tau_groups.push_back(std::move(group));
    return TVH_OK;
}

tvh_status tvh_tune(const tvh_series* series, const tvh_model* spec_template,
                    const tvh_grid* grid, int threads, tvh_selection** out) {
    if (!check(series && spec_template && grid && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto selection = std::make_unique<tvh_selection>();
        selection->result =
            grid_search(series->ts, spec_template->spec, grid->grid, threads);
        *out = selection.release();
    });
}

void tvh_selection_free(tvh_selection* selection) { delete selection; }

size_t tvh_selection_size(const tvh_selection* selection) {
    return selection ? selection->result.table.size() : 0;
}

size_t tvh_selection_best(const tvh_selection* selection) {
    return selection ? selection->result.best_index : 0;
}

tvh_status tvh_selection_row(const tvh_selection* selection, size_t i, int* j_total,
                             int* d, int* r, int* k, double* aic, double* mse,
                             double* edf, int* ok) {
    if (!check(selection, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    if (!check(i < selection->result.table.size(), "selection row out of range"))
        return TVH_ERR_OUT_OF_RANGE;
    const EvaluatedConfig& row = selection->result.table[i];
    if (j_total) *j_total = row.spec.num_basis();
    if (d) *d = row.spec.degree;
    if (r) *r = row.spec.penalty_order;
    if (k) *k = static_cast<int>(row.spec.frequencies.size());
    if (aic) *aic = row.aic;
    if (mse) *mse = row.mse;
    if (edf) *edf = row.edf;
    if (ok) *ok = row.ok ? 1 : 0;
    return TVH_OK;
}

size_t tvh_selection_row_num_taus(const tvh_selection* selection, size_t i) {
    if (!selection || i >= selection->result.table.size()) return 0;
    return selection->result.table[i].spec.taus.size();
}

tvh_status tvh_selection_row_taus(const tvh_selection* selection, size_t i,
                                  double* out) {
    if (!check(selection && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    if (!check(i < selection->result.table.size(), "selection row out of range"))
        return TVH_ERR_OUT_OF_RANGE;
    copy_out(selection->result.table[i].spec.taus, out);
    return TVH_OK;
}

/* ------------------------------------------------------------------ */

tvh_status tvh_spectrum(const double* times, const double* values, size_t n,
                        double t0, double delta, double grid_tol, double bandwidth,
                        tvh_psd** out) {
    if (!check(times && values && out, "null pointer argument"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const TimeSeries ts = validate(std::vector<double>(times, times + n),
                                       std::vector<double>(values, values + n));
        const GridEmbedding emb = embed_on_grid(ts, t0, delta, grid_tol);
        auto psd = std::make_unique<tvh_psd>();
        psd->psd = estimate_psd(ts.values(), emb, bandwidth);
        *out = psd.release();
    });
}

void tvh_psd_free(tvh_psd* psd) { delete psd; }

size_t tvh_psd_size(const tvh_psd* psd) {
    return psd ? psd->psd.grid.lambdas.size() : 0;
}

tvh_status tvh_psd_lambdas(const tvh_psd* psd, double* out) {
    if (!check(psd && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(psd->psd.grid.lambdas, out);
    return TVH_OK;
}

tvh_status tvh_psd_frequencies(const tvh_psd* psd, double* out) {
    if (!check(psd && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(psd->psd.grid.frequencies, out);
    return TVH_OK;
}

tvh_status tvh_psd_periodogram(const tvh_psd* psd, double* out) {
    if (!check(psd && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(psd->psd.periodogram, out);
    return TVH_OK;
}

tvh_status tvh_psd_window(const tvh_psd* psd, double* out) {
    if (!check(psd && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(psd->psd.window, out);
    return TVH_OK;
}

tvh_status tvh_psd_raw(const tvh_psd* psd, double* out) {
    if (!check(psd && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(psd->psd.raw, out);
    return TVH_OK;
}

tvh_status tvh_psd_smoothed(const tvh_psd* psd, double* out) {
    if (!check(psd && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(psd->psd.smoothed, out);
    return TVH_OK;
}

tvh_status tvh_psd_whiteness(const tvh_psd* psd, double band_lo, double band_hi,
                             double flat_ratio, double* ratio, double* cv,
                             int* white) {
    if (!check(psd, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const WhitenessReport report =
            whiteness_check(psd->psd, band_lo, band_hi, flat_ratio);
        if (ratio) *ratio = report.ratio;
        if (cv) *cv = report.cv;
        if (white) *white = report.white ? 1 : 0;
    });
}

/* ------------------------------------------------------------------ */

tvh_status tvh_simulate_scenario(int kind, size_t n, uint64_t seed, tvh_sim** out) {
    if (!check(out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    if (!check(kind == 0 || kind == 1, "scenario kind must be 0 or 1"))
        return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const ScenarioKind sk =
            kind == 0 ? ScenarioKind::Sinusoidal : ScenarioKind::Polynomial;
        const ScenarioData data = gen_scenario(sk, n, seed);
        auto sim = std::make_unique<tvh_sim>();
        sim->times = data.series.times();
        sim->values = data.series.values();
        sim->frequencies = {data.truth.frequency(1), data.truth.frequency(2)};
        sim->truth_names = {"mu", "m", "g1_1", "g2_1", "g1_2", "g2_2"};
        sim->truth.resize(6, std::vector<double>(sim->times.size()));
        for (std::size_t i = 0; i < sim->times.size(); ++i) {
            const double t = sim->times[i];
            sim->truth[0][i] = data.truth.mu(t);
            sim->truth[1][i] = data.truth.trend(t);
            sim->truth[2][i] = data.truth.amplitude(1, 1, t);
            sim->truth[3][i] = data.truth.amplitude(2, 1, t);
            sim->truth[4][i] = data.truth.amplitude(1, 2, t);
            sim->truth[5][i] = data.truth.amplitude(2, 2, t);
        }
        *out = sim.release();
    });
}

tvh_status tvh_simulate_blazhko(const tvh_blazhko_params* params, size_t n,
                                uint64_t seed, tvh_sim** out) {
    if (!check(out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        BlazhkoParams p = blazhko_reference_params();
        std::size_t grid_size = 2880;
        if (params) {
            p.a0 = params->a0;
            p.harmonics.clear();
            for (size_t k = 0; k < params->n_harmonics; ++k)
                p.harmonics.push_back({params->freqs[k], params->amps[k],
                                       params->phases_deg[k]});
            p.am = params->am;
            p.fm = params->fm;
            p.phim_deg = params->phim_deg;
            p.h_depth = params->h_depth;
            p.sigma2 = params->sigma2;
            if (params->grid_size > 0) grid_size = params->grid_size;
        }
        const std::vector<double> times = blazhko_time_design(n, seed, grid_size);
        const BlazhkoData data = gen_blazhko_am(p, times, seed + 1);

        auto sim = std::make_unique<tvh_sim>();
        sim->times = data.series.times();
        sim->values = data.series.values();
        sim->frequencies = data.frequencies;
        sim->grid_t0 = blazhko_grid_origin(grid_size);
        sim->grid_delta = blazhko_grid_spacing(grid_size);
        sim->truth_names = {"mu", "m"};
        for (std::size_t k = 1; k <= p.harmonics.size(); ++k) {
            sim->truth_names.push_back("g1_" + std::to_string(k));
            sim->truth_names.push_back("g2_" + std::to_string(k));
        }
        sim->truth.resize(2 + 2 * p.harmonics.size(),
                          std::vector<double>(sim->times.size()));
        for (std::size_t i = 0; i < sim->times.size(); ++i) {
            const double t = sim->times[i];
            sim->truth[0][i] = blazhko_mu(p, t);
            sim->truth[1][i] = blazhko_trend(p, t);
            for (std::size_t k = 1; k <= p.harmonics.size(); ++k) {
                sim->truth[2 * k][i] = blazhko_amplitude(p, 1, static_cast<int>(k), t);
                sim->truth[2 * k + 1][i] =
                    blazhko_amplitude(p, 2, static_cast<int>(k), t);
            }
        }
        *out = sim.release();
    });
}

tvh_status tvh_simulate_ar2_blocks(double phi1, double phi2, double sigma2,
                                   double t0, double delta, size_t n_grid,
                                   size_t n_blocks, size_t block_len, size_t keep,
                                   uint64_t seed, tvh_sim** out) {
    if (!check(out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Ar2Params p{phi1, phi2, sigma2, delta};
        const Ar2BlockData data =
            gen_ar2_blocks(p, t0, n_grid, n_blocks, block_len, keep, seed);
        auto sim = std::make_unique<tvh_sim>();
        sim->times = data.subsampled.times();
        sim->values = data.subsampled.values();
        sim->grid_t0 = t0;
        sim->grid_delta = delta;
        *out = sim.release();
    });
}

void tvh_sim_free(tvh_sim* sim) { delete sim; }

size_t tvh_sim_size(const tvh_sim* sim) { return sim ? sim->times.size() : 0; }

tvh_status tvh_sim_times(const tvh_sim* sim, double* out) {
    if (!check(sim && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(sim->times, out);
    return TVH_OK;
}

tvh_status tvh_sim_values(const tvh_sim* sim, double* out) {
    if (!check(sim && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(sim->values, out);
    return TVH_OK;
}

size_t tvh_sim_num_truth(const tvh_sim* sim) {
    return sim ? sim->truth.size() : 0;
}

const char* tvh_sim_truth_name(const tvh_sim* sim, size_t column) {
    if (!sim || column >= sim->truth_names.size()) return "";
    return sim->truth_names[column].c_str();
}

tvh_status tvh_sim_truth(const tvh_sim* sim, size_t column, double* out) {
    if (!check(sim && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    if (!check(column < sim->truth.size(), "truth column out of range"))
        return TVH_ERR_OUT_OF_RANGE;
    copy_out(sim->truth[column], out);
    return TVH_OK;
}

size_t tvh_sim_num_frequencies(const tvh_sim* sim) {
    return sim ? sim->frequencies.size() : 0;
}

tvh_status tvh_sim_frequencies(const tvh_sim* sim, double* out) {
    if (!check(sim && out, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    copy_out(sim->frequencies, out);
    return TVH_OK;
}

tvh_status tvh_sim_grid(const tvh_sim* sim, double* t0, double* delta) {
    if (!check(sim, "null pointer argument")) return TVH_ERR_INVALID_ARGUMENT;
    if (t0) *t0 = sim->grid_t0;
    if (delta) *delta = sim->grid_delta;
    return TVH_OK;
}

}  // extern "C"
