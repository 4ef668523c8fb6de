#include "core/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tvharm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

// Observing-span constants of the amplitude-modulation experiment.
constexpr double kBlazhkoGridStart = 0.03819;
constexpr double kBlazhkoGridEnd = 69.37847;
}  // namespace

double Rng::uniform() {
    // 53 random bits mapped to [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

double Rng::normal(double mean, double sd) { return mean + sd * normal(); }

std::vector<double> sample_uniform_times(std::size_t n, double theta1,
                                         double theta2, std::uint64_t seed) {
    require(theta2 > theta1, ErrorCode::BadRange,
            "uniform range needs theta2 > theta1");
    require(n >= 1, ErrorCode::InvalidArgument, "need at least one draw");
    Rng rng(seed);
    std::vector<double> times(n);
    for (double& t : times) t = rng.uniform(theta1, theta2);
    std::sort(times.begin(), times.end());
    return times;
}

// ---------------------------------------------------------------------------

double ScenarioTruth::angular(int k) const {
    const bool sinusoidal = kind == ScenarioKind::Sinusoidal;
    if (k == 1) return (sinusoidal ? 40.0 : 30.0) * std::numbers::pi;
    return (sinusoidal ? 100.0 : 40.0) * std::numbers::pi;
}

double ScenarioTruth::frequency(int k) const { return angular(k) / kTwoPi; }

double ScenarioTruth::trend(double t) const {
    if (kind == ScenarioKind::Sinusoidal) return std::sin(2.0 * std::numbers::pi * t);
    return 0.2 * t - 5.0 * t * t + 5.5 * t * t * t;
}

double ScenarioTruth::amplitude(int ell, int k, double t) const {
    if (kind == ScenarioKind::Sinusoidal) {
        if (ell == 1 && k == 1) return std::cos(9.0 * std::numbers::pi * t);
        if (ell == 2 && k == 1) return std::sin(6.0 * std::numbers::pi * t);
        if (ell == 1 && k == 2) return std::cos(4.0 * std::numbers::pi * t);
        if (ell == 2 && k == 2) return std::sin(7.0 * std::numbers::pi * t);
    } else {
        const double t2 = t * t, t3 = t * t * t;
        if (ell == 1 && k == 1) return 4.0 * t3 - 5.0 * t2;
        if (ell == 2 && k == 1) return -0.5 - 0.5 * t + 2.5 * t2 - 0.5 * t3;
        if (ell == 1 && k == 2) return -t + t2 + 1.3 * t3;
        if (ell == 2 && k == 2) return 0.5 + 2.0 * t2 - 3.0 * t3;
    }
    fail(ErrorCode::UnknownComponent, "scenario amplitude index out of range");
}

double ScenarioTruth::mu(double t) const {
    double value = trend(t);
    for (int k = 1; k <= 2; ++k) {
        value += amplitude(1, k, t) * std::cos(angular(k) * t);
        value += amplitude(2, k, t) * std::sin(angular(k) * t);
    }
    return value;
}

ScenarioData gen_scenario(ScenarioKind kind, std::size_t n, std::uint64_t seed) {
    ScenarioData data;
    data.truth.kind = kind;
    Rng rng(seed);
    std::vector<double> times(n);
    for (double& t : times) t = rng.uniform();
    std::sort(times.begin(), times.end());

    const double sd = std::sqrt(data.noise_variance);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = data.truth.mu(times[i]) + rng.normal(0.0, sd);
    data.series = TimeSeries(std::move(times), std::move(values));
    return data;
}

// ---------------------------------------------------------------------------

void BlazhkoParams::validate() const {
    require(!harmonics.empty(), ErrorCode::InvalidArgument,
            "carrier needs at least one harmonic");
    for (const auto& h : harmonics)
        require(h.freq > 0.0, ErrorCode::InvalidArgument,
                "harmonic frequencies must be positive");
    require(h_depth > 0.0 && am / h_depth > 0.0, ErrorCode::InvalidArgument,
            "modulation depth must yield a positive carrier amplitude U_c");
    require(sigma2 >= 0.0, ErrorCode::InvalidArgument, "noise variance must be >= 0");
}

BlazhkoParams blazhko_reference_params() {
    BlazhkoParams p;
    p.harmonics = {{2.0, 0.401, 5.490},
                   {4.0, 0.171, 144.040},
                   {6.0, 0.133, 285.250},
                   {8.0, 0.097, 81.290}};
    return p;
}

double blazhko_modulation_factor(const BlazhkoParams& p, double t) {
    const double um =
        p.am * std::sin(kTwoPi * p.fm * t + p.phim_deg * kDegToRad);
    return 1.0 + um / p.carrier_amplitude();
}

double blazhko_mu(const BlazhkoParams& p, double t) {
    double carrier = p.a0;
    for (const auto& h : p.harmonics)
        carrier += h.amplitude * std::sin(kTwoPi * h.freq * t + h.phase_deg * kDegToRad);
    return blazhko_modulation_factor(p, t) * carrier;
}

double blazhko_trend(const BlazhkoParams& p, double t) {
    return p.a0 * blazhko_modulation_factor(p, t);
}

double blazhko_amplitude(const BlazhkoParams& p, int ell, int k, double t) {
    require(ell == 1 || ell == 2, ErrorCode::UnknownComponent,
            "amplitude selector ell must be 1 or 2");
    require(k >= 1 && k <= static_cast<int>(p.harmonics.size()),
            ErrorCode::UnknownComponent, "harmonic index out of range");
    const auto& h = p.harmonics[static_cast<std::size_t>(k - 1)];
    const double phase = h.phase_deg * kDegToRad;
    // a_k sin(w t + phi) = a_k sin(phi) cos(w t) + a_k cos(phi) sin(w t), so the
    // cosine weight carries sin(phi) and the sine weight carries cos(phi).
    const double weight = ell == 1 ? std::sin(phase) : std::cos(phase);
    return h.amplitude * weight * blazhko_modulation_factor(p, t);
}

double blazhko_grid_spacing(std::size_t grid_size) {
    require(grid_size >= 2, ErrorCode::InvalidArgument, "grid needs at least two points");
    return (kBlazhkoGridEnd - kBlazhkoGridStart) /
           static_cast<double>(grid_size - 1);
}

double blazhko_grid_origin(std::size_t grid_size) {
    return kBlazhkoGridStart - blazhko_grid_spacing(grid_size);
}

std::vector<double> blazhko_time_design(std::size_t n, std::uint64_t seed,
                                        std::size_t grid_size) {
    require(n >= 1 && n <= grid_size, ErrorCode::InvalidArgument,
            "subsample size exceeds the grid");
    Rng rng(seed);
    std::vector<std::size_t> pool(grid_size);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    // Partial Fisher-Yates: the first n entries become the sample.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(pool.size() - i));
        std::swap(pool[i], pool[std::min(j, pool.size() - 1)]);
    }
    std::vector<std::size_t> picked(pool.begin(), pool.begin() + static_cast<long>(n));
    std::sort(picked.begin(), picked.end());

    const double delta = blazhko_grid_spacing(grid_size);
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i)
        times[i] = kBlazhkoGridStart + static_cast<double>(picked[i]) * delta;
    return times;
}

BlazhkoData gen_blazhko_am(const BlazhkoParams& p, std::vector<double> times,
                           std::uint64_t seed) {
    p.validate();
    Rng rng(seed);
    const double sd = std::sqrt(p.sigma2);
    std::vector<double> values(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        values[i] = blazhko_mu(p, times[i]) + rng.normal(0.0, sd);

    BlazhkoData data;
    data.params = p;
    for (const auto& h : p.harmonics) data.frequencies.push_back(h.freq);
    data.series = TimeSeries(std::move(times), std::move(values));
    return data;
}

// ---------------------------------------------------------------------------

double eval_carrier(const HarmonicCarrier& carrier, double t) {
    require(carrier.amplitudes.size() == carrier.phases.size(),
            ErrorCode::LengthMismatch, "carrier amplitudes and phases differ");
    double value = carrier.a0;
    for (std::size_t k = 0; k < carrier.amplitudes.size(); ++k)
        value += carrier.amplitudes[k] *
                 std::sin(kTwoPi * static_cast<double>(k + 1) * carrier.f0 * t +
                          carrier.phases[k]);
    return value;
}

namespace {
double eval_modulation(const SineModulation& mod, double t) {
    return mod.amplitude * std::sin(kTwoPi * mod.frequency * t + mod.phase);
}
}  // namespace

double am_simple(double uc, double fc, double phic, const SineModulation& mod,
                 double t) {
    return (uc + eval_modulation(mod, t)) * std::sin(kTwoPi * fc * t + phic);
}

double am_product(const HarmonicCarrier& carrier, const SineModulation& mod,
                  double uc, double t) {
    require(uc != 0.0, ErrorCode::InvalidArgument, "carrier amplitude must be nonzero");
    return (1.0 + eval_modulation(mod, t) / uc) * eval_carrier(carrier, t);
}

double am_sidebands(const HarmonicCarrier& carrier, const SineModulation& mod,
                    double uc, double t) {
    require(uc != 0.0, ErrorCode::InvalidArgument, "carrier amplitude must be nonzero");
    const double h = mod.amplitude / uc;
    double value = eval_carrier(carrier, t);
    value += carrier.a0 * h * std::sin(kTwoPi * mod.frequency * t + mod.phase);
    for (std::size_t k = 0; k < carrier.amplitudes.size(); ++k) {
        const double fk = static_cast<double>(k + 1) * carrier.f0;
        const double ak = carrier.amplitudes[k];
        const double phik = carrier.phases[k];
        value += 0.5 * ak * h *
                 std::sin(kTwoPi * (fk - mod.frequency) * t + (phik - mod.phase) +
                          std::numbers::pi / 2.0);
        value -= 0.5 * ak * h *
                 std::sin(kTwoPi * (fk + mod.frequency) * t + (phik + mod.phase) +
                          std::numbers::pi / 2.0);
    }
    return value;
}

double fm_simple(double uc, double fc, double phic, double k_fm,
                 const SineModulation& mod, double t) {
    require(mod.frequency > 0.0, ErrorCode::InvalidArgument,
            "modulation frequency must be positive");
    const double swing = k_fm * mod.amplitude / mod.frequency;
    return uc * std::sin(kTwoPi * fc * t +
                         swing * std::sin(kTwoPi * mod.frequency * t + mod.phase) +
                         phic);
}

double comb_simple(double uc, double fc, double phic, const SineModulation& am,
                   double k_fm, const SineModulation& fm, double t) {
    require(fm.frequency > 0.0, ErrorCode::InvalidArgument,
            "modulation frequency must be positive");
    const double swing = k_fm * fm.amplitude / fm.frequency;
    return (uc + eval_modulation(am, t)) *
           std::sin(kTwoPi * fc * t +
                    swing * std::sin(kTwoPi * fm.frequency * t + fm.phase) + phic);
}

// ---------------------------------------------------------------------------

double eval_sine_series(const SineSeries& series, double f, double t) {
    require(series.amplitudes.size() == series.phases.size(),
            ErrorCode::LengthMismatch, "series amplitudes and phases differ");
    double value = 0.0;
    for (std::size_t j = 0; j < series.amplitudes.size(); ++j)
        value += series.amplitudes[j] *
                 std::sin(kTwoPi * static_cast<double>(j + 1) * f * t + series.phases[j]);
    return value;
}

namespace {

void check_benko_shapes(std::size_t k, std::size_t phi, std::size_t am, std::size_t fm) {
    require(k == phi, ErrorCode::LengthMismatch, "amplitudes and phases differ");
    require(am == k && fm == k, ErrorCode::LengthMismatch,
            "need one modulation series per harmonic");
}

}  // namespace

double benko2018_eval(const Benko2018Params& p, double t) {
    check_benko_shapes(p.a.size(), p.phi.size(), p.am_mod.size(), p.fm_mod.size());
    double value = p.m0 + eval_sine_series(p.trend_mod, p.fm, t);
    for (std::size_t k = 0; k < p.a.size(); ++k) {
        const double ga = eval_sine_series(p.am_mod[k], p.fm, t);
        const double gf = eval_sine_series(p.fm_mod[k], p.fm, t);
        value += (p.a[k] + ga) *
                 std::sin(kTwoPi * static_cast<double>(k + 1) * p.f0 * t + p.phi[k] + gf);
    }
    return value;
}

BenkoComponents benko2018_components(const Benko2018Params& p, double t) {
    check_benko_shapes(p.a.size(), p.phi.size(), p.am_mod.size(), p.fm_mod.size());
    BenkoComponents comp;
    comp.trend = p.m0 + eval_sine_series(p.trend_mod, p.fm, t);
    comp.h1.resize(p.a.size());
    comp.h2.resize(p.a.size());
    for (std::size_t k = 0; k < p.a.size(); ++k) {
        const double amp = p.a[k] + eval_sine_series(p.am_mod[k], p.fm, t);
        const double phase = p.phi[k] + eval_sine_series(p.fm_mod[k], p.fm, t);
        comp.h1[k] = amp * std::sin(phase);
        comp.h2[k] = amp * std::cos(phase);
    }
    return comp;
}

double benko2011_eval(const Benko2011Params& p, double t) {
    require(p.a.size() == p.phi.size(), ErrorCode::LengthMismatch,
            "amplitudes and phases differ");
    const double ga = eval_sine_series(p.am_mod, p.fm, t);
    const double gf = eval_sine_series(p.fm_mod, p.fm, t);
    double value = p.a0_mod * p.a0 + p.a0 * ga;
    for (std::size_t k = 0; k < p.a.size(); ++k)
        value += (p.a0_mod * p.a[k] + p.a[k] * ga) *
                 std::sin(kTwoPi * static_cast<double>(k + 1) * p.f0 * t + p.phi[k] +
                          static_cast<double>(k + 1) * gf);
    return value;
}

BenkoComponents benko2011_components(const Benko2011Params& p, double t) {
    require(p.a.size() == p.phi.size(), ErrorCode::LengthMismatch,
            "amplitudes and phases differ");
    const double ga = eval_sine_series(p.am_mod, p.fm, t);
    const double gf = eval_sine_series(p.fm_mod, p.fm, t);
    BenkoComponents comp;
    comp.trend = p.a0_mod * p.a0 + p.a0 * ga;
    comp.h1.resize(p.a.size());
    comp.h2.resize(p.a.size());
    for (std::size_t k = 0; k < p.a.size(); ++k) {
        const double amp = p.a0_mod * p.a[k] + p.a[k] * ga;
        const double phase = p.phi[k] + static_cast<double>(k + 1) * gf;
        comp.h1[k] = amp * std::sin(phase);
        comp.h2[k] = amp * std::cos(phase);
    }
    return comp;
}

// ---------------------------------------------------------------------------

std::vector<double> simulate_ar2(const Ar2Params& params, std::size_t n,
                                 std::uint64_t seed, std::size_t burn_in) {
    params.validate();
    Rng rng(seed);
    const double sd = std::sqrt(params.sigma2);
    double prev1 = 0.0, prev2 = 0.0;
    for (std::size_t i = 0; i < burn_in; ++i) {
        const double next =
            params.phi1 * prev1 + params.phi2 * prev2 + rng.normal(0.0, sd);
        prev2 = prev1;
        prev1 = next;
    }
    std::vector<double> path(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double next =
            params.phi1 * prev1 + params.phi2 * prev2 + rng.normal(0.0, sd);
        prev2 = prev1;
        prev1 = next;
        path[i] = next;
    }
    return path;
}

Ar2BlockData gen_ar2_blocks(const Ar2Params& params, double t0, std::size_t n,
                            std::size_t n_blocks, std::size_t block_len,
                            std::size_t keep, std::uint64_t seed) {
    require(n_blocks * block_len == n, ErrorCode::BadPartition,
            "blocks must exactly partition the series: n_blocks*block_len != N");
    require(keep >= 1 && keep <= n_blocks, ErrorCode::BadPartition,
            "must keep between 1 and n_blocks blocks");

    Ar2BlockData data;
    data.full_values = simulate_ar2(params, n, seed);
    data.full_times.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        data.full_times[i] = t0 + static_cast<double>(i + 1) * params.delta;

    // Choose `keep` distinct blocks via partial Fisher-Yates on the block ids,
    // on a stream derived from the same seed that produced the path.
    Rng rng(seed + 1);
    std::vector<std::size_t> ids(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i) ids[i] = i;
    for (std::size_t i = 0; i < keep; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n_blocks - i));
        std::swap(ids[i], ids[std::min(j, n_blocks - 1)]);
    }
    data.kept_blocks.assign(ids.begin(), ids.begin() + static_cast<long>(keep));
    std::sort(data.kept_blocks.begin(), data.kept_blocks.end());

    std::vector<double> times, values;
    times.reserve(keep * block_len);
    values.reserve(keep * block_len);
    for (std::size_t b : data.kept_blocks)
        for (std::size_t i = b * block_len; i < (b + 1) * block_len; ++i) {
            times.push_back(data.full_times[i]);
            values.push_back(data.full_values[i]);
        }
    data.subsampled = TimeSeries(std::move(times), std::move(values));
    data.embedding = embed_on_grid(data.subsampled, t0, params.delta);
    return data;
}

std::vector<double> ar2_values_on_blocks(const Ar2Params& params,
                                         const Ar2BlockData& design,
                                         std::uint64_t seed) {
    const std::size_t n = design.full_values.size();
    const std::vector<double> path = simulate_ar2(params, n, seed);
    std::vector<double> values;
    values.reserve(design.subsampled.size());
    const std::size_t block_len = design.subsampled.size() / design.kept_blocks.size();
    for (std::size_t b : design.kept_blocks)
        for (std::size_t i = b * block_len; i < (b + 1) * block_len; ++i)
            values.push_back(path[i]);
    return values;
}

}  // namespace tvharm
