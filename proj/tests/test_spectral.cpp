#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "core/simulate.hpp"
#include "core/spectral.hpp"
#include "test_util.hpp"

using namespace tvharm;
using tvharm::test::fails_with;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Literal double sums over observation pairs.
double periodogram_bruteforce(const std::vector<double>& x,
                              const std::vector<double>& t, double lambda) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < x.size(); ++k)
        for (std::size_t j = 0; j < x.size(); ++j)
            acc += x[k] * x[j] *
                   std::exp(std::complex<double>(0.0, lambda * (t[k] - t[j])));
    return acc.real();
}

double window_bruteforce(const std::vector<double>& t, double lambda) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < t.size(); ++k)
        for (std::size_t j = 0; j < t.size(); ++j)
            acc += std::exp(std::complex<double>(0.0, lambda * (t[k] - t[j])));
    return acc.real();
}

// Direct-sum transform with per-term std::polar, independent of the library's
// twiddle-table path.
std::vector<std::complex<double>> dft_bruteforce(
    const std::vector<std::complex<double>>& g) {
    const std::size_t m = g.size();
    std::vector<std::complex<double>> h(m);
    for (std::size_t k = 1; k <= m; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 1; j <= m; ++j)
            acc += g[j - 1] * std::polar(1.0, -static_cast<double>(k) *
                                                  static_cast<double>(j) * kTwoPi /
                                                  static_cast<double>(m));
        h[k - 1] = acc;
    }
    return h;
}

}  // namespace

TEST_CASE("periodogram basics") {
    CHECK(periodogram({3.0}, {1.7}, 0.9) == doctest::Approx(9.0));

    std::vector<double> t(8), x(8, 2.0);
    for (std::size_t i = 0; i < 8; ++i) t[i] = 0.3 * static_cast<double>(i) + 0.1;
    CHECK(periodogram(x, t, 0.0) == doctest::Approx(4.0 * 64.0));
}

TEST_CASE("periodogram matches the literal double sum") {
    Rng rng(90);
    std::vector<double> t(6), x(6);
    for (std::size_t i = 0; i < 6; ++i) {
        t[i] = static_cast<double>(i) + rng.uniform(0.0, 0.4);
        x[i] = rng.normal();
    }
    for (double lambda : {0.1, 0.77, 2.3, 5.9})
        CHECK(periodogram(x, t, lambda) ==
              doctest::Approx(periodogram_bruteforce(x, t, lambda)).epsilon(1e-10));
}

TEST_CASE("spectral window matches the double sum and is a squared modulus") {
    std::vector<double> t7(7);
    for (std::size_t i = 0; i < 7; ++i) t7[i] = 1.3 * static_cast<double>(i);
    CHECK(spectral_window(t7, 0.0) == doctest::Approx(49.0));

    Rng rng(91);
    std::vector<double> t(5);
    for (double& v : t) v = rng.uniform(0.0, 10.0);
    std::sort(t.begin(), t.end());
    for (double lambda : {0.3, 1.1, 4.2}) {
        const double w = spectral_window(t, lambda);
        CHECK(w >= 0.0);
        CHECK(w == doctest::Approx(window_bruteforce(t, lambda)).epsilon(1e-10));
    }
}

TEST_CASE("complete grids cancel the window off the resonant frequencies") {
    const long n = 16;
    const double delta = 0.33;
    std::vector<double> t(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i)
        t[static_cast<std::size_t>(i - 1)] = 0.67 + static_cast<double>(i) * delta;
    for (long m = 1; m < n; ++m) {
        const double lambda = kTwoPi * static_cast<double>(m) /
                              (static_cast<double>(n) * delta);
        CHECK(std::abs(spectral_window(t, lambda)) < 1e-8);
    }
    const double resonant = kTwoPi / delta;
    CHECK(spectral_window(t, resonant) ==
          doctest::Approx(static_cast<double>(n * n)).epsilon(1e-8));
}

TEST_CASE("dft and idft invert each other and match the direct sum") {
    Rng rng(92);
    std::vector<std::complex<double>> g(17);
    for (auto& v : g) v = {rng.normal(), rng.normal()};

    const auto h = dft(g);
    const auto oracle = dft_bruteforce(g);
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(std::abs(h[k] - oracle[k]) < 1e-10);

    const auto back = idft(h);
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::abs(back[j] - g[j]) < 1e-10);

    // Parseval in this convention: sum |h|^2 = m * sum |g|^2.
    double lhs = 0.0, rhs = 0.0;
    for (const auto& v : h) lhs += std::norm(v);
    for (const auto& v : g) rhs += std::norm(v);
    CHECK(lhs == doctest::Approx(17.0 * rhs).epsilon(1e-8));
}

TEST_CASE("dft of a constant sequence is concentrated at k = m") {
    const std::vector<std::complex<double>> ones(4, {1.0, 0.0});
    const auto h = dft(ones);
    CHECK(std::abs(h[3] - std::complex<double>(4.0, 0.0)) < 1e-12);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(h[k]) < 1e-12);
}

TEST_CASE("full-grid deconvolution reduces to I / (2 pi N)") {
    const long n = 64;
    const double delta = 0.5;
    GridEmbedding emb;
    emb.t0 = 0.0;
    emb.delta = delta;
    emb.n_grid = n;
    for (long i = 1; i <= n; ++i) emb.indices.push_back(i);

    Rng rng(93);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (double& v : values) v = rng.normal();

    const FourierGrid grid = FourierGrid::from_embedding(emb);
    const PeriodogramEstimate perio =
        periodogram_on_grid(values, reconstruct_times(emb), grid);
    const auto raw = deconvolve_psd(perio);
    for (std::size_t j = 0; j < raw.size(); ++j) {
        const double expected = perio.values[j] / (kTwoPi * static_cast<double>(n));
        CHECK(std::abs(raw[j] - expected) <=
              1e-8 * std::max(1e-12, std::abs(expected)));
    }
}

TEST_CASE("averaged white-noise deconvolution is flat at sigma^2 / (2 pi)") {
    const long n = 32;
    const double sigma2 = 2.5;
    GridEmbedding emb;
    emb.t0 = 0.0;
    emb.delta = 1.0;
    emb.n_grid = n;
    for (long i = 1; i <= n; ++i) emb.indices.push_back(i);

    const int reps = 600;
    std::vector<std::vector<double>> replicates;
    replicates.reserve(reps);
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(500 + static_cast<std::uint64_t>(rep));
        std::vector<double> values(static_cast<std::size_t>(n));
        for (double& v : values) v = rng.normal(0.0, std::sqrt(sigma2));
        replicates.push_back(std::move(values));
    }
    const PsdEstimate psd = estimate_psd_mean(replicates, emb, 0.5);
    const double expected = sigma2 / kTwoPi;
    for (double v : psd.raw)
        CHECK(std::abs(v - expected) < 5.0 * expected / std::sqrt(static_cast<double>(reps)) * 3.0);
}

TEST_CASE("pathological sampling patterns trip the deconvolution floor") {
    // With observations at grid indices 1 and 5 only, no observation pair has
    // lag 2 or lag 3, so the window transform vanishes at k = 2.
    GridEmbedding emb;
    emb.t0 = 0.0;
    emb.delta = 1.0;
    emb.n_grid = 5;
    emb.indices = {1, 5};

    std::vector<double> values{1.0, -1.0};
    CHECK(fails_with(ErrorCode::WindowTransformUnderflow, [&] {
        const FourierGrid grid = FourierGrid::from_embedding(emb);
        const PeriodogramEstimate perio =
            periodogram_on_grid(values, reconstruct_times(emb), grid);
        deconvolve_psd(perio);
    }));
}

TEST_CASE("flat-average smoothing matches the direct kernel sum") {
    const FourierGrid grid = FourierGrid::make(40, 0.7);
    Rng rng(94);
    std::vector<double> raw(40);
    for (double& v : raw) v = rng.uniform(0.5, 2.0);

    const double h = 0.3;
    const auto smoothed = smooth_psd(raw, grid, h, KernelNorm::FlatAverage);
    for (std::size_t j = 0; j < raw.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const double u = (grid.lambdas[j] - grid.lambdas[i]) / h;
            acc += std::exp(-0.5 * u * u) / (h * std::sqrt(kTwoPi)) * raw[i];
        }
        CHECK(smoothed[j] == doctest::Approx(acc / 40.0).epsilon(1e-10));
    }

    // Constant input stays constant under weighted-mean smoothing.
    const auto flat = smooth_psd(std::vector<double>(40, 3.3), grid, h,
                                 KernelNorm::WeightedMean);
    for (double v : flat) CHECK(v == doctest::Approx(3.3).epsilon(1e-12));
}

TEST_CASE("vanishing bandwidth reduces flat-average smoothing to a point mass") {
    const FourierGrid grid = FourierGrid::make(25, 1.0);
    Rng rng(95);
    std::vector<double> raw(25);
    for (double& v : raw) v = rng.uniform(1.0, 4.0);
    const double spacing = grid.lambdas[1] - grid.lambdas[0];
    const double h = 1e-6 * spacing;
    const auto smoothed = smooth_psd(raw, grid, h, KernelNorm::FlatAverage);
    const double k0 = 1.0 / (h * std::sqrt(kTwoPi));
    for (std::size_t j = 0; j < raw.size(); ++j)
        CHECK(smoothed[j] ==
              doctest::Approx(k0 / 25.0 * raw[j]).epsilon(1e-12));
}

TEST_CASE("ar2 psd equals the transfer-function form on random stationary draws") {
    Rng rng(96);
    for (int rep = 0; rep < 1000; ++rep) {
        Ar2Params p;
        p.phi2 = rng.uniform(-0.95, 0.95);
        p.phi1 = rng.uniform(p.phi2 - 0.999, 0.999 - p.phi2);
        p.sigma2 = rng.uniform(0.1, 5.0);
        p.delta = rng.uniform(0.1, 2.0);
        const double lambda = rng.uniform(0.0, kTwoPi / p.delta);

        const std::complex<double> z =
            std::exp(std::complex<double>(0.0, -lambda * p.delta));
        const std::complex<double> transfer = 1.0 - p.phi1 * z - p.phi2 * z * z;
        const double oracle = p.sigma2 / (kTwoPi * std::norm(transfer));
        CHECK(ar2_psd(p, lambda) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("white noise and non-stationary edge cases of the ar2 psd") {
    Ar2Params white{0.0, 0.0, 2.0, 1.0};
    for (double lambda : {0.1, 1.0, 2.5})
        CHECK(ar2_psd(white, lambda) == doctest::Approx(2.0 / kTwoPi));

    Ar2Params bad{1.5, 0.4, 1.0, 1.0};
    CHECK(fails_with(ErrorCode::NonStationary, [&] { ar2_psd(bad, 1.0); }));
}

TEST_CASE("the reference ar2 peak sits where the cosine condition predicts") {
    Ar2Params p{1.318, -0.634, 289.2, 0.33};
    const double x_star = p.phi1 * (p.phi2 - 1.0) / (4.0 * p.phi2);
    const double lambda_star = std::acos(x_star) / p.delta;

    double best_lambda = 0.0, best = -1.0;
    for (int i = 1; i <= 20000; ++i) {
        const double lambda =
            std::numbers::pi / p.delta * static_cast<double>(i) / 20000.0;
        const double v = ar2_psd(p, lambda);
        if (v > best) {
            best = v;
            best_lambda = lambda;
        }
    }
    CHECK(best_lambda == doctest::Approx(lambda_star).epsilon(1e-3));
}

TEST_CASE("whiteness check separates flat from peaked spectra") {
    const FourierGrid grid = FourierGrid::make(200, 0.33);
    PsdEstimate flat;
    flat.grid = grid;
    flat.smoothed.assign(200, 1.4);
    const WhitenessReport report = whiteness_check(flat, 0.0, kTwoPi / 0.33, 3.0);
    CHECK(report.ratio == doctest::Approx(1.0));
    CHECK(report.cv == doctest::Approx(0.0));
    CHECK(report.white);

    PsdEstimate peaked;
    peaked.grid = grid;
    peaked.smoothed.resize(200);
    const Ar2Params p{1.318, -0.634, 289.2, 0.33};
    for (std::size_t j = 0; j < 200; ++j)
        peaked.smoothed[j] = ar2_psd(p, grid.lambdas[j]);
    const WhitenessReport peaked_report =
        whiteness_check(peaked, 0.0, std::numbers::pi / 0.33, 3.0);
    CHECK_FALSE(peaked_report.white);
    CHECK(peaked_report.ratio > 10.0);

    PsdEstimate negative = flat;
    negative.smoothed[10] = -0.2;
    CHECK(fails_with(ErrorCode::NonPositivePsd, [&] {
        whiteness_check(negative, 0.0, kTwoPi / 0.33, 3.0);
    }));
    CHECK(fails_with(ErrorCode::BadRange,
                     [&] { whiteness_check(flat, 2.0, 1.0, 3.0); }));
}

TEST_CASE("the mean periodogram matches the discrete convolution of truth and window") {
    // Plant a symmetric spectrum on the full grid, synthesize matching Gaussian
    // series spectrally, and compare the Monte-Carlo mean periodogram with the
    // convolution (2 pi / N) * sum_u P(w_u) W(lambda - w_u).
    const long n = 24;
    const double delta = 0.7;
    const FourierGrid grid = FourierGrid::make(n, delta);

    std::vector<double> planted(static_cast<std::size_t>(n));
    for (long j = 1; j <= n; ++j) {
        // Symmetric under j -> n - j (required for a real-valued process),
        // strictly positive, with a bump in the middle.
        const double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        planted[static_cast<std::size_t>(j - 1)] = 1.0 + 0.8 * std::cos(angle);
    }

    std::vector<double> times(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i)
        times[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) * delta;

    const int reps = 4000;
    std::vector<double> mean_perio(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sq_perio(static_cast<std::size_t>(n), 0.0);
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(3000 + static_cast<std::uint64_t>(rep));
        // Spectral synthesis: eps_t = sum_u a_u [X_u cos(l_u t) + Y_u sin(l_u t)]
        // with a_u^2 = 2 pi P(l_u) / N gives E[eps_i eps_k] = r(i - k).
        std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
        for (long u = 0; u < n; ++u) {
            xs[static_cast<std::size_t>(u)] = rng.normal();
            ys[static_cast<std::size_t>(u)] = rng.normal();
        }
        std::vector<double> eps(static_cast<std::size_t>(n), 0.0);
        for (long i = 0; i < n; ++i)
            for (long u = 0; u < n; ++u) {
                const double a = std::sqrt(kTwoPi * planted[static_cast<std::size_t>(u)] /
                                           static_cast<double>(n));
                const double phase = grid.lambdas[static_cast<std::size_t>(u)] *
                                     times[static_cast<std::size_t>(i)];
                eps[static_cast<std::size_t>(i)] +=
                    a * (xs[static_cast<std::size_t>(u)] * std::cos(phase) +
                         ys[static_cast<std::size_t>(u)] * std::sin(phase));
            }
        for (long j = 0; j < n; ++j) {
            const double v =
                periodogram(eps, times, grid.lambdas[static_cast<std::size_t>(j)]);
            mean_perio[static_cast<std::size_t>(j)] += v;
            sq_perio[static_cast<std::size_t>(j)] += v * v;
        }
    }

    for (long j = 0; j < n; ++j) {
        mean_perio[static_cast<std::size_t>(j)] /= static_cast<double>(reps);
        sq_perio[static_cast<std::size_t>(j)] /= static_cast<double>(reps);
    }

    for (long j = 0; j < n; ++j) {
        double conv = 0.0;
        for (long u = 0; u < n; ++u)
            conv += planted[static_cast<std::size_t>(u)] *
                    spectral_window(times, grid.lambdas[static_cast<std::size_t>(j)] -
                                               grid.lambdas[static_cast<std::size_t>(u)]);
        const double expected = kTwoPi / static_cast<double>(n) * conv;
        const double variance =
            std::max(0.0, sq_perio[static_cast<std::size_t>(j)] -
                              mean_perio[static_cast<std::size_t>(j)] *
                                  mean_perio[static_cast<std::size_t>(j)]);
        const double se = std::sqrt(variance / static_cast<double>(reps));
        CHECK(std::abs(mean_perio[static_cast<std::size_t>(j)] - expected) <=
              std::max(6.0 * se, 1e-9 * expected));
    }
}
