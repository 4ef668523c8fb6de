#pragma once

#include <complex>
#include <vector>

#include "core/errors.hpp"
#include "core/timeseries.hpp"

namespace tvharm {

// Fourier grid lambda_j = 2*pi*j/(n_grid*delta), j = 1..n_grid.
struct FourierGrid {
    long n_grid = 0;
    double delta = 1.0;
    std::vector<double> frequencies;  // f_j = j/(n_grid*delta)
    std::vector<double> lambdas;      // 2*pi*f_j

    static FourierGrid from_embedding(const GridEmbedding& emb);
    static FourierGrid make(long n_grid, double delta);
};

// Periodogram I(lambda) = |sum_k eps_k exp(i lambda t_k)|^2, the squared-modulus
// form of the double sum over pairs.
double periodogram(const std::vector<double>& values,
                   const std::vector<double>& times, double lambda);

// Power spectral window W(lambda) = |sum_k exp(i lambda t_k)|^2.
double spectral_window(const std::vector<double>& times, double lambda);

// Periodogram and window over all grid frequencies in one pass.
struct PeriodogramEstimate {
    FourierGrid grid;
    std::vector<double> values;  // I(lambda_j)
    std::vector<double> window;  // W(lambda_j)
};

PeriodogramEstimate periodogram_on_grid(const std::vector<double>& values,
                                        const std::vector<double>& times,
                                        const FourierGrid& grid);

// Discrete Fourier transform pair in the 1-based convention
// h_k = sum_{j=1..m} g_j exp(-i k j 2 pi / m) and its inverse with weight 1/m.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& g);
std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& h);

struct DeconvOptions {
    double floor_rel = 1e-12;  // reject |F{W}| entries below floor_rel * max
    double imag_tol = 1e-6;    // tolerated relative imaginary residue
};

// Deconvolution of the (smoothed or replicate-averaged) periodogram by the
// spectral window: P(lambda_j) = n_grid/(2 pi) * F^{-1}{ F{I} / F{W} }[j].
std::vector<double> deconvolve_psd(const PeriodogramEstimate& perio,
                                   const DeconvOptions& options = {});

// Kernel normalization for smooth_psd: FlatAverage divides the kernel sum by
// the number of grid frequencies; WeightedMean divides by the kernel mass so
// the curve scale is preserved (the pipeline default).
enum class KernelNorm { FlatAverage, WeightedMean };

std::vector<double> smooth_psd(const std::vector<double>& raw,
                               const FourierGrid& grid, double h,
                               KernelNorm norm = KernelNorm::WeightedMean);

// Stationary AR(2) parameters on a grid with spacing delta.
struct Ar2Params {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double sigma2 = 1.0;
    double delta = 1.0;

    void validate() const;
};

// Closed-form AR(2) spectral density
// sigma2/(2 pi) / [1 + phi1^2 + phi2^2 + 2 phi2
//                  + 2(phi1 phi2 - phi1) cos(lambda delta) - 4 phi2 cos^2(lambda delta)].
double ar2_psd(const Ar2Params& params, double lambda);

struct PsdEstimate {
    FourierGrid grid;
    std::vector<double> periodogram;  // raw I(lambda_j)
    std::vector<double> window;       // W(lambda_j)
    std::vector<double> raw;          // deconvolved spectral density
    std::vector<double> smoothed;     // kernel-smoothed spectral density
    double bandwidth = 0.0;
};

struct WhitenessReport {
    double ratio = 0.0;  // max/min of the smoothed density over the band
    double cv = 0.0;     // coefficient of variation over the band
    double flat_ratio = 3.0;
    std::size_t n_band = 0;
    bool white = false;
};

// Flatness report over the frequency band lambda in (band_lo, band_hi].
WhitenessReport whiteness_check(const PsdEstimate& psd, double band_lo,
                                double band_hi, double flat_ratio = 3.0);

// Full single-series pipeline: periodogram and window on the embedding grid,
// kernel-smoothed periodogram, deconvolution, kernel-smoothed density.
PsdEstimate estimate_psd(const std::vector<double>& values,
                         const GridEmbedding& emb, double bandwidth,
                         const DeconvOptions& options = {});

// Replicate-averaged variant: the mean periodogram over replicates (all sharing
// the same time design) replaces the kernel smoothing before deconvolution.
PsdEstimate estimate_psd_mean(const std::vector<std::vector<double>>& replicates,
                              const GridEmbedding& emb, double bandwidth,
                              const DeconvOptions& options = {});

}  // namespace tvharm
