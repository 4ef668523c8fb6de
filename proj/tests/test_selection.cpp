#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "core/selection.hpp"
#include "core/simulate.hpp"
#include "test_util.hpp"

using namespace tvharm;
using tvharm::test::fails_with;

namespace {

// Demo signal for smoothing-parameter selection: slow trend, one harmonic at
// f = 0.1 with slowly drifting amplitudes, observed on U(0, 55).
TimeSeries aic_demo_series(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> times(n);
    for (double& t : times) t = rng.uniform(0.0, 55.0);
    std::sort(times.begin(), times.end());
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = times[i];
        const double mu = -0.05 * t -
                          (-0.0002 * t + 0.0003 * t * t) *
                              std::cos(0.2 * std::numbers::pi * t) +
                          (1.0 - 0.0005 * t) * std::sin(0.2 * std::numbers::pi * t);
        values[i] = mu + rng.normal();
    }
    return TimeSeries(std::move(times), std::move(values));
}

ModelSpec aic_demo_spec() {
    // First-order penalty: the demo's trend and amplitudes are near-affine, so
    // only r = 1 makes heavy smoothing costly enough for an interior AIC
    // minimum at moderate tau.
    ModelSpec spec;
    spec.frequencies = {0.1};
    spec.degree = 3;
    spec.basis_intervals = 13 - 3;
    spec.penalty_order = 1;
    return spec;
}

}  // namespace

TEST_CASE("aic is plain arithmetic on its inputs") {
    Eigen::VectorXd y(100), fitted(100);
    y.setRandom();
    fitted = y;
    CHECK(aic(y, fitted, 5.0, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("aic is bit-reproducible") {
    Eigen::VectorXd y(37), fitted(37);
    for (int i = 0; i < 37; ++i) {
        y[i] = std::sin(0.7 * i) * 3.1;
        fitted[i] = y[i] + 0.01 * std::cos(1.3 * i);
    }
    const double first = aic(y, fitted, 4.2, 0.37);
    const double second = aic(y, fitted, 4.2, 0.37);
    CHECK(std::memcmp(&first, &second, sizeof(double)) == 0);
}

TEST_CASE("unpenalized aic combines the projection identity with the formula") {
    const TimeSeries ts = aic_demo_series(200, 51);
    ModelSpec spec = aic_demo_spec();
    spec.basis_intervals = 8 - 3;
    spec.taus = {0.0, 0.0, 0.0};
    const FitResult fit = fit_model(ts, spec);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
        ts.values().data(), static_cast<Eigen::Index>(ts.size()));
    const double c = static_cast<double>(spec.num_columns());
    CHECK(fit.edf == doctest::Approx(c).epsilon(1e-8));
    CHECK(aic(y, fit.fitted, fit.edf, fit.sigma2) ==
          doctest::Approx(fit.mse + 2.0 * c * fit.sigma2 / 200.0).epsilon(1e-10));
}

TEST_CASE("grid search returns a single candidate unchanged") {
    const TimeSeries ts = aic_demo_series(150, 53);
    ModelSpec spec = aic_demo_spec();
    spec.basis_intervals = 10 - 3;
    TuningGrid grid;
    grid.basis_sizes = {10};
    grid.degrees = {3};
    grid.orders = {2};
    grid.harmonic_counts = {1};
    grid.tau_groups = {{{1, 2, 3}, {7.5}}};
    const SelectionResult sel = grid_search(ts, spec, grid);
    REQUIRE(sel.table.size() == 1);
    CHECK(sel.best().spec.taus == std::vector<double>{7.5, 7.5, 7.5});
    CHECK(sel.best().ok);
}

TEST_CASE("moderate smoothing wins the demo tau grid") {
    const TimeSeries ts = aic_demo_series(500, 4257);
    const ModelSpec spec = aic_demo_spec();
    TuningGrid grid;
    grid.basis_sizes = {13};
    grid.degrees = {3};
    grid.orders = {1};
    grid.harmonic_counts = {1};
    grid.tau_groups = {{{1, 2, 3}, {0.0, 30.0, 200.0}}};
    const SelectionResult sel = grid_search(ts, spec, grid);
    REQUIRE(sel.table.size() == 3);
    CHECK(sel.best().spec.taus[0] == 30.0);
    CHECK(sel.table[1].aic < sel.table[0].aic);
    CHECK(sel.table[1].aic < sel.table[2].aic);
}

TEST_CASE("exact ties fall back to enumeration order") {
    const TimeSeries ts = aic_demo_series(120, 57);
    ModelSpec spec = aic_demo_spec();
    TuningGrid grid;
    grid.basis_sizes = {9};
    grid.degrees = {3};
    grid.orders = {1, 2};  // identical fits at tau = 0
    grid.harmonic_counts = {1};
    grid.tau_groups = {{{1, 2, 3}, {0.0}}};
    const SelectionResult sel = grid_search(ts, spec, grid);
    REQUIRE(sel.table.size() == 2);
    CHECK(sel.table[0].aic == sel.table[1].aic);
    CHECK(sel.best_index == 0);
    CHECK(sel.best().spec.penalty_order == 1);
}

TEST_CASE("the winner does not depend on candidate enumeration order") {
    const TimeSeries ts = aic_demo_series(250, 61);
    const ModelSpec spec = aic_demo_spec();
    TuningGrid forward, backward;
    for (TuningGrid* grid : {&forward, &backward}) {
        grid->degrees = {3};
        grid->orders = {2};
        grid->harmonic_counts = {1};
    }
    forward.basis_sizes = {8, 13, 18};
    forward.tau_groups = {{{1, 2, 3}, {0.0, 10.0, 100.0}}};
    backward.basis_sizes = {18, 13, 8};
    backward.tau_groups = {{{1, 2, 3}, {100.0, 10.0, 0.0}}};

    const SelectionResult a = grid_search(ts, spec, forward);
    const SelectionResult b = grid_search(ts, spec, backward);
    CHECK(a.best().spec.num_basis() == b.best().spec.num_basis());
    CHECK(a.best().spec.taus == b.best().spec.taus);
    CHECK(a.best().aic == b.best().aic);
}

TEST_CASE("threaded and serial grid search agree exactly") {
    const TimeSeries ts = aic_demo_series(200, 63);
    const ModelSpec spec = aic_demo_spec();
    TuningGrid grid;
    grid.basis_sizes = {8, 13};
    grid.degrees = {3};
    grid.orders = {1, 2};
    grid.harmonic_counts = {1};
    grid.tau_groups = {{{1}, {0.0, 1.0}}, {{2, 3}, {0.0, 10.0}}};
    const SelectionResult serial = grid_search(ts, spec, grid, 1);
    const SelectionResult threaded = grid_search(ts, spec, grid, 4);
    REQUIRE(serial.table.size() == threaded.table.size());
    CHECK(serial.best_index == threaded.best_index);
    for (std::size_t i = 0; i < serial.table.size(); ++i)
        CHECK(serial.table[i].aic == threaded.table[i].aic);
}

TEST_CASE("a grid whose every fit fails raises AllFitsFailed") {
    // Nine observations cannot support J = 13 basis functions without a
    // penalty, so the single tau = 0 configuration is singular.
    const TimeSeries ts = aic_demo_series(9, 67);
    ModelSpec spec = aic_demo_spec();
    spec.frequencies.clear();
    TuningGrid grid;
    grid.basis_sizes = {13};
    grid.degrees = {3};
    grid.orders = {1};
    grid.harmonic_counts = {0};
    grid.tau_groups = {{{1}, {0.0}}};
    CHECK(fails_with(ErrorCode::AllFitsFailed, [&] { grid_search(ts, spec, grid); }));
}

TEST_CASE("invalid grids are rejected up front") {
    const TimeSeries ts = aic_demo_series(100, 65);
    const ModelSpec spec = aic_demo_spec();
    TuningGrid grid;
    grid.basis_sizes = {4};
    grid.degrees = {3};
    grid.orders = {5};  // r >= J
    grid.harmonic_counts = {1};
    CHECK(fails_with(ErrorCode::InvalidArgument,
                     [&] { grid_search(ts, spec, grid); }));
}
