#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "core/spectral.hpp"
#include "core/timeseries.hpp"

namespace tvharm {

// Deterministic random source. The engine is std::mt19937_64 but the uniform
// and Gaussian mappings are implemented here so streams do not depend on the
// standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);
    double normal();                         // Marsaglia polar method
    double normal(double mean, double sd);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// n i.i.d. U(theta1, theta2) draws, sorted ascending.
std::vector<double> sample_uniform_times(std::size_t n, double theta1,
                                         double theta2, std::uint64_t seed);

// -------------------------------------------------------------------------
// Trend-plus-harmonic test scenarios (two harmonics, unit-interval times).

enum class ScenarioKind { Sinusoidal, Polynomial };

struct ScenarioTruth {
    ScenarioKind kind = ScenarioKind::Sinusoidal;

    double angular(int k) const;               // w_k
    double frequency(int k) const;             // w_k / (2 pi)
    double trend(double t) const;              // m(t)
    double amplitude(int ell, int k, double t) const;  // g_{ell,k}(t)
    double mu(double t) const;
};

struct ScenarioData {
    TimeSeries series;
    ScenarioTruth truth;
    double noise_variance = 2.0;
};

ScenarioData gen_scenario(ScenarioKind kind, std::size_t n, std::uint64_t seed);

// -------------------------------------------------------------------------
// Blazhko amplitude-modulated RR Lyrae light curve.

struct BlazhkoHarmonic {
    double freq = 0.0;       // k*f0, cycles/day
    double amplitude = 0.0;  // a_k, mag
    double phase_deg = 0.0;  // phi_k, degrees
};

struct BlazhkoParams {
    double a0 = 0.01;                         // mag
    std::vector<BlazhkoHarmonic> harmonics;   // carrier components
    double am = 0.1;                          // modulation amplitude, mag
    double fm = 0.05;                         // modulation frequency, 1/day
    double phim_deg = 270.0;                  // modulation phase, degrees
    double h_depth = 1.2;                     // modulation depth h = am/U_c
    double sigma2 = 0.005;                    // noise variance

    double carrier_amplitude() const { return am / h_depth; }  // U_c
    void validate() const;
};

// Parameters of the simulated RR Lyrae star (four harmonics at k*f0 = 2,4,6,8).
BlazhkoParams blazhko_reference_params();

double blazhko_modulation_factor(const BlazhkoParams& p, double t);  // 1 + U_m/U_c
double blazhko_mu(const BlazhkoParams& p, double t);
double blazhko_trend(const BlazhkoParams& p, double t);
double blazhko_amplitude(const BlazhkoParams& p, int ell, int k, double t);

// The reference observing cadence: an equally spaced grid on
// [0.03819, 69.37847] days, subsampled without replacement and sorted. The
// default grid has 2880 instants (spacing ~0.0241 d); the density is a
// parameter because the residual-spectrum deconvolution needs the observations
// to fill a reasonable fraction of the grid.
std::vector<double> blazhko_time_design(std::size_t n, std::uint64_t seed,
                                        std::size_t grid_size = 2880);
double blazhko_grid_origin(std::size_t grid_size = 2880);   // t0 with t_j = t0 + j*delta
double blazhko_grid_spacing(std::size_t grid_size = 2880);  // delta

struct BlazhkoData {
    TimeSeries series;
    BlazhkoParams params;
    std::vector<double> frequencies;  // k*f0 per harmonic
};

BlazhkoData gen_blazhko_am(const BlazhkoParams& p, std::vector<double> times,
                           std::uint64_t seed);

// -------------------------------------------------------------------------
// Textbook modulation signals.

struct SineModulation {
    double amplitude = 0.0;  // U_m
    double frequency = 0.0;  // f_m
    double phase = 0.0;      // radians
};

struct HarmonicCarrier {
    double a0 = 0.0;
    double f0 = 1.0;
    std::vector<double> amplitudes;  // a_k
    std::vector<double> phases;      // phi_k, radians
};

double eval_carrier(const HarmonicCarrier& carrier, double t);

// Amplitude modulation of a plain sinusoidal carrier:
// [U_c + U_m(t)] sin(2 pi f_c t + phi_c).
double am_simple(double uc, double fc, double phic, const SineModulation& mod,
                 double t);

// Amplitude modulation of a harmonic carrier in product form [1 + U_m/U_c] c(t).
double am_product(const HarmonicCarrier& carrier, const SineModulation& mod,
                  double uc, double t);

// The same signal expanded into carrier plus sidebands at k f0 +/- f_m.
double am_sidebands(const HarmonicCarrier& carrier, const SineModulation& mod,
                    double uc, double t);

// Frequency modulation with sinusoidal message:
// U_c sin(2 pi f_c t + (k_fm U_m / f_m) sin(2 pi f_m t + phase) + phi_c).
double fm_simple(double uc, double fc, double phic, double k_fm,
                 const SineModulation& mod, double t);

// Combined amplitude and frequency modulation.
double comb_simple(double uc, double fc, double phic, const SineModulation& am,
                   double k_fm, const SineModulation& fm, double t);

// -------------------------------------------------------------------------
// Parametric Blazhko models with Fourier-sum modulations.

struct SineSeries {
    std::vector<double> amplitudes;
    std::vector<double> phases;  // radians
};

// sum_j a_j sin(2 pi j f t + phi_j)
double eval_sine_series(const SineSeries& series, double f, double t);

struct BenkoComponents {
    double trend = 0.0;          // u(t) or v(t)
    std::vector<double> h1;      // cosine-carrier weights
    std::vector<double> h2;      // sine-carrier weights
};

struct Benko2018Params {
    double m0 = 0.0;
    SineSeries trend_mod;               // b_r, phi^b_r
    double f0 = 1.0;
    double fm = 0.1;
    std::vector<double> a;              // a_k
    std::vector<double> phi;            // phi_k, radians
    std::vector<SineSeries> am_mod;     // g^A_k series, one per harmonic
    std::vector<SineSeries> fm_mod;     // g^F_k series, one per harmonic
};

double benko2018_eval(const Benko2018Params& p, double t);
BenkoComponents benko2018_components(const Benko2018Params& p, double t);

struct Benko2011Params {
    double a0_mod = 1.0;                // a^A_0
    double a0 = 0.0;                    // a_0
    double f0 = 1.0;
    double fm = 0.1;
    std::vector<double> a;              // a_k
    std::vector<double> phi;            // phi_k, radians
    SineSeries am_mod;                  // shared g^A series
    SineSeries fm_mod;                  // shared g^F series
};

double benko2011_eval(const Benko2011Params& p, double t);
BenkoComponents benko2011_components(const Benko2011Params& p, double t);

// -------------------------------------------------------------------------
// AR(2) block-subsampling experiment.

// AR(2) path by recursion, zero-initialized with `burn_in` discarded draws.
std::vector<double> simulate_ar2(const Ar2Params& params, std::size_t n,
                                 std::uint64_t seed, std::size_t burn_in = 1000);

struct Ar2BlockData {
    std::vector<double> full_times;    // t_i = t0 + i*delta, i = 1..N
    std::vector<double> full_values;
    TimeSeries subsampled;             // kept blocks, in time order
    GridEmbedding embedding;
    std::vector<std::size_t> kept_blocks;  // 0-based block ids, ascending
};

Ar2BlockData gen_ar2_blocks(const Ar2Params& params, double t0, std::size_t n,
                            std::size_t n_blocks, std::size_t block_len,
                            std::size_t keep, std::uint64_t seed);

// Fresh values on an existing block design (shared time points across
// replicates, new AR(2) innovations).
std::vector<double> ar2_values_on_blocks(const Ar2Params& params,
                                         const Ar2BlockData& design,
                                         std::uint64_t seed);

}  // namespace tvharm
