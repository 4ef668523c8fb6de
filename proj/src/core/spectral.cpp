#include "core/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace tvharm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kKernelCutoff = 8.0;  // Gaussian tail beyond 8h is < 1e-14
}  // namespace

FourierGrid FourierGrid::make(long n_grid, double delta) {
    require(n_grid >= 1, ErrorCode::InvalidArgument, "grid size must be >= 1");
    require(delta > 0.0, ErrorCode::InvalidArgument, "grid spacing must be > 0");
    FourierGrid grid;
    grid.n_grid = n_grid;
    grid.delta = delta;
    grid.frequencies.resize(static_cast<std::size_t>(n_grid));
    grid.lambdas.resize(static_cast<std::size_t>(n_grid));
    for (long j = 1; j <= n_grid; ++j) {
        const double f = static_cast<double>(j) /
                         (static_cast<double>(n_grid) * delta);
        grid.frequencies[static_cast<std::size_t>(j - 1)] = f;
        grid.lambdas[static_cast<std::size_t>(j - 1)] = kTwoPi * f;
    }
    return grid;
}

FourierGrid FourierGrid::from_embedding(const GridEmbedding& emb) {
    return make(emb.n_grid, emb.delta);
}

double periodogram(const std::vector<double>& values,
                   const std::vector<double>& times, double lambda) {
    require(values.size() == times.size(), ErrorCode::ShapeMismatch,
            "values and times differ in length");
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        re += values[k] * std::cos(lambda * times[k]);
        im += values[k] * std::sin(lambda * times[k]);
    }
    return re * re + im * im;
}

double spectral_window(const std::vector<double>& times, double lambda) {
    double re = 0.0, im = 0.0;
    for (double t : times) {
        re += std::cos(lambda * t);
        im += std::sin(lambda * t);
    }
    return re * re + im * im;
}

PeriodogramEstimate periodogram_on_grid(const std::vector<double>& values,
                                        const std::vector<double>& times,
                                        const FourierGrid& grid) {
    require(values.size() == times.size(), ErrorCode::ShapeMismatch,
            "values and times differ in length");
    PeriodogramEstimate est;
    est.grid = grid;
    est.values.resize(grid.lambdas.size());
    est.window.resize(grid.lambdas.size());
    for (std::size_t j = 0; j < grid.lambdas.size(); ++j) {
        const double lambda = grid.lambdas[j];
        double re = 0.0, im = 0.0, wre = 0.0, wim = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double c = std::cos(lambda * times[k]);
            const double s = std::sin(lambda * times[k]);
            wre += c;
            wim += s;
            re += values[k] * c;
            im += values[k] * s;
        }
        est.values[j] = re * re + im * im;
        est.window[j] = wre * wre + wim * wim;
    }
    return est;
}

namespace {

// Direct O(m^2) transform with an exact twiddle table. Adequate for grids up
// to a few tens of thousands of frequencies.
// TODO: switch to a Bluestein FFT once grids beyond ~1e5 become common.
std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& in,
                                            double sign, bool scale) {
    const std::size_t m = in.size();
    require(m >= 1, ErrorCode::InvalidArgument, "transform input is empty");
    std::vector<std::complex<double>> twiddle(m);
    for (std::size_t r = 0; r < m; ++r)
        twiddle[r] = std::polar(1.0, sign * kTwoPi * static_cast<double>(r) /
                                         static_cast<double>(m));
    std::vector<std::complex<double>> out(m);
    for (std::size_t k = 1; k <= m; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 1; j <= m; ++j)
            acc += in[j - 1] * twiddle[(k * j) % m];
        out[k - 1] = scale ? acc / static_cast<double>(m) : acc;
    }
    return out;
}

}  // namespace

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& g) {
    return transform(g, -1.0, false);
}

std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& h) {
    return transform(h, 1.0, true);
}

std::vector<double> deconvolve_psd(const PeriodogramEstimate& perio,
                                   const DeconvOptions& options) {
    const std::size_t m = perio.values.size();
    require(m == perio.window.size() && m == perio.grid.lambdas.size(),
            ErrorCode::ShapeMismatch, "periodogram estimate has mismatched lengths");

    std::vector<std::complex<double>> ivec(m), wvec(m);
    for (std::size_t j = 0; j < m; ++j) {
        ivec[j] = perio.values[j];
        wvec[j] = perio.window[j];
    }
    const auto fi = dft(ivec);
    const auto fw = dft(wvec);

    double w_max = 0.0;
    for (const auto& v : fw) w_max = std::max(w_max, std::abs(v));
    const double floor = options.floor_rel * w_max;
    std::vector<std::complex<double>> ratio(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double mag = std::abs(fw[k]);
        if (!(mag > floor)) {
            std::ostringstream msg;
            msg << "window transform entry " << k + 1 << " has modulus " << mag
                << " below the deconvolution floor " << floor
                << "; the sampling pattern makes deconvolution ill-posed";
            fail(ErrorCode::WindowTransformUnderflow, msg.str());
        }
        ratio[k] = fi[k] / fw[k];
    }

    const auto back = idft(ratio);
    double max_re = 0.0, max_im = 0.0;
    for (const auto& v : back) {
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    if (max_im > options.imag_tol * std::max(max_re, 1e-300)) {
        std::ostringstream msg;
        msg << "deconvolved spectrum has imaginary residue " << max_im
            << " exceeding " << options.imag_tol << " * " << max_re;
        fail(ErrorCode::Internal, msg.str());
    }

    const double scale = static_cast<double>(perio.grid.n_grid) / kTwoPi;
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = scale * back[j].real();
    return out;
}

std::vector<double> smooth_psd(const std::vector<double>& raw,
                               const FourierGrid& grid, double h,
                               KernelNorm norm) {
    require(h > 0.0, ErrorCode::InvalidArgument, "bandwidth must be > 0");
    require(raw.size() == grid.lambdas.size(), ErrorCode::ShapeMismatch,
            "raw density and grid differ in length");
    const std::size_t m = raw.size();
    const double inv_sqrt2pi = 1.0 / std::sqrt(kTwoPi);
    const double spacing = m > 1 ? grid.lambdas[1] - grid.lambdas[0] : 1.0;
    const std::size_t reach = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(m),
                         std::ceil(kKernelCutoff * h / spacing) + 1.0));

    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lo = j >= reach ? j - reach : 0;
        const std::size_t hi = std::min(m, j + reach + 1);
        double acc = 0.0, mass = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double u = (grid.lambdas[j] - grid.lambdas[i]) / h;
            const double w = inv_sqrt2pi * std::exp(-0.5 * u * u) / h;
            acc += w * raw[i];
            mass += w;
        }
        out[j] = norm == KernelNorm::FlatAverage ? acc / static_cast<double>(m)
                                                 : acc / mass;
    }
    return out;
}

void Ar2Params::validate() const {
    const bool ok = std::abs(phi2) < 1.0 && phi1 + phi2 < 1.0 && phi2 - phi1 < 1.0;
    if (!ok) {
        std::ostringstream msg;
        msg << "AR(2) coefficients (" << phi1 << ", " << phi2
            << ") violate the stationarity triangle";
        fail(ErrorCode::NonStationary, msg.str());
    }
    require(sigma2 > 0.0, ErrorCode::InvalidArgument, "innovation variance must be > 0");
    require(delta > 0.0, ErrorCode::InvalidArgument, "spacing must be > 0");
}

double ar2_psd(const Ar2Params& params, double lambda) {
    params.validate();
    const double x = std::cos(lambda * params.delta);
    const double bracket = 1.0 + params.phi1 * params.phi1 +
                           params.phi2 * params.phi2 + 2.0 * params.phi2 +
                           2.0 * (params.phi1 * params.phi2 - params.phi1) * x -
                           4.0 * params.phi2 * x * x;
    return params.sigma2 / (kTwoPi * bracket);
}

WhitenessReport whiteness_check(const PsdEstimate& psd, double band_lo,
                                double band_hi, double flat_ratio) {
    require(band_lo < band_hi, ErrorCode::BadRange, "whiteness band is empty");
    WhitenessReport report;
    report.flat_ratio = flat_ratio;

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0, sum = 0.0, sumsq = 0.0;
    for (std::size_t j = 0; j < psd.grid.lambdas.size(); ++j) {
        const double lambda = psd.grid.lambdas[j];
        if (lambda <= band_lo || lambda > band_hi) continue;
        const double v = psd.smoothed[j];
        if (!(v > 0.0)) {
            std::ostringstream msg;
            msg << "smoothed spectral density is non-positive (" << v
                << ") at lambda=" << lambda << "; cannot assess flatness";
            fail(ErrorCode::NonPositivePsd, msg.str());
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
        sumsq += v * v;
        ++report.n_band;
    }
    require(report.n_band > 0, ErrorCode::BadRange,
            "no grid frequencies fall inside the whiteness band");

    const double n = static_cast<double>(report.n_band);
    const double mean = sum / n;
    const double var = std::max(0.0, sumsq / n - mean * mean);
    report.ratio = hi / lo;
    report.cv = std::sqrt(var) / mean;
    report.white = report.ratio <= flat_ratio;
    return report;
}

PsdEstimate estimate_psd(const std::vector<double>& values,
                         const GridEmbedding& emb, double bandwidth,
                         const DeconvOptions& options) {
    require(values.size() == emb.indices.size(), ErrorCode::ShapeMismatch,
            "values and embedding differ in length");
    PsdEstimate psd;
    psd.grid = FourierGrid::from_embedding(emb);
    psd.bandwidth = bandwidth;

    const std::vector<double> times = reconstruct_times(emb);
    PeriodogramEstimate perio = periodogram_on_grid(values, times, psd.grid);
    psd.periodogram = perio.values;
    psd.window = perio.window;

    // Smooth the periodogram over frequencies before deconvolving, then smooth
    // the deconvolved density itself.
    perio.values = smooth_psd(perio.values, psd.grid, bandwidth);
    psd.raw = deconvolve_psd(perio, options);
    psd.smoothed = smooth_psd(psd.raw, psd.grid, bandwidth);
    return psd;
}

PsdEstimate estimate_psd_mean(const std::vector<std::vector<double>>& replicates,
                              const GridEmbedding& emb, double bandwidth,
                              const DeconvOptions& options) {
    require(!replicates.empty(), ErrorCode::TooFewReplicates,
            "need at least one replicate");
    PsdEstimate psd;
    psd.grid = FourierGrid::from_embedding(emb);
    psd.bandwidth = bandwidth;

    const std::vector<double> times = reconstruct_times(emb);
    PeriodogramEstimate mean_perio;
    mean_perio.grid = psd.grid;
    mean_perio.values.assign(psd.grid.lambdas.size(), 0.0);
    for (const auto& values : replicates) {
        const PeriodogramEstimate one = periodogram_on_grid(values, times, psd.grid);
        for (std::size_t j = 0; j < one.values.size(); ++j)
            mean_perio.values[j] += one.values[j];
        mean_perio.window = one.window;
    }
    for (double& v : mean_perio.values) v /= static_cast<double>(replicates.size());

    psd.periodogram = mean_perio.values;
    psd.window = mean_perio.window;
    psd.raw = deconvolve_psd(mean_perio, options);
    psd.smoothed = smooth_psd(psd.raw, psd.grid, bandwidth);
    return psd;
}

}  // namespace tvharm
