#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/design.hpp"
#include "core/simulate.hpp"
#include "test_util.hpp"

using namespace tvharm;
using tvharm::test::fails_with;

namespace {

SplineBasis demo_basis(const std::vector<double>& times, int n, int d) {
    const KnotVector kv = build_knots(times.front(), times.back(), n, d);
    return basis_matrix(kv, times);
}

}  // namespace

TEST_CASE("trend-only design equals the basis matrix") {
    const std::vector<double> times{0.0, 0.2, 0.35, 0.6, 0.8, 1.0};
    const SplineBasis basis = demo_basis(times, 3, 2);
    ModelSpec spec;
    spec.basis_intervals = 3;
    spec.degree = 2;
    spec.penalty_order = 1;
    const DesignMatrix design = build_design(basis, spec);
    CHECK(design.matrix.cols() == basis.matrix.cols());
    CHECK((design.matrix - basis.matrix).norm() == 0.0);
}

TEST_CASE("cosine block equals the basis and sine block vanishes at t = 0") {
    const std::vector<double> times{0.0, 0.3, 0.7, 1.0};
    const SplineBasis basis = demo_basis(times, 2, 1);
    ModelSpec spec;
    spec.frequencies = {2.5};
    spec.basis_intervals = 2;
    spec.degree = 1;
    spec.penalty_order = 1;
    const DesignMatrix design = build_design(basis, spec);
    const int J = spec.num_basis();
    for (int j = 0; j < J; ++j) {
        CHECK(design.matrix(0, J + j) == doctest::Approx(basis.matrix(0, j)));
        CHECK(design.matrix(0, 2 * J + j) == doctest::Approx(0.0));
    }
}

TEST_CASE("two-harmonic design recomputes elementwise") {
    Rng rng(5);
    std::vector<double> times;
    for (int i = 0; i < 10; ++i) times.push_back(rng.uniform());
    std::sort(times.begin(), times.end());
    const SplineBasis basis = demo_basis(times, 1, 3);  // J = 4
    ModelSpec spec;
    spec.frequencies = {3.0, 11.0};
    spec.basis_intervals = 1;
    spec.degree = 3;
    spec.penalty_order = 1;
    const DesignMatrix design = build_design(basis, spec);
    REQUIRE(design.matrix.cols() == 20);

    const double w1 = 2.0 * std::numbers::pi * 3.0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(design.matrix(i, 4 + j) ==
                  doctest::Approx(basis.matrix(i, j) * std::cos(w1 * times[static_cast<std::size_t>(i)]))
                      .epsilon(1e-15));
    CHECK(design.column_map[4].kind == ColumnKind::Cos);
    CHECK(design.column_map[4].freq_index == 1);
    CHECK(design.column_map[12].kind == ColumnKind::Sin);
}

TEST_CASE("design rows reassemble the model equation from blocks") {
    Rng rng(9);
    std::vector<double> times;
    for (int i = 0; i < 25; ++i) times.push_back(rng.uniform());
    std::sort(times.begin(), times.end());
    const SplineBasis basis = demo_basis(times, 4, 3);
    ModelSpec spec;
    spec.frequencies = {2.0, 5.0};
    spec.extra_frequencies = {7.5};
    spec.basis_intervals = 4;
    spec.degree = 3;
    spec.penalty_order = 1;
    const DesignMatrix design = build_design(basis, spec);

    const int J = spec.num_basis();
    const int K = spec.total_harmonics();
    Eigen::VectorXd theta(design.matrix.cols());
    for (int i = 0; i < theta.size(); ++i) theta[i] = rng.normal();

    // Trend-only coefficient vector reproduces B alpha exactly.
    Eigen::VectorXd trend_only = Eigen::VectorXd::Zero(theta.size());
    trend_only.head(J) = theta.head(J);
    CHECK((design.matrix * trend_only - basis.matrix * theta.head(J)).norm() == 0.0);

    const Eigen::VectorXd mu = design.matrix * theta;
    for (int i = 0; i < 25; ++i) {
        const double t = times[static_cast<std::size_t>(i)];
        const Eigen::VectorXd row = basis.matrix.row(i);
        double expected = row.dot(theta.head(J));
        for (int k = 1; k <= K; ++k) {
            const double w = design.angular[static_cast<std::size_t>(k - 1)];
            expected += row.dot(theta.segment(k * J, J)) * std::cos(w * t);
            expected += row.dot(theta.segment((K + k) * J, J)) * std::sin(w * t);
        }
        CHECK(mu[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("reflection frequencies match the reported values") {
    // The reported Nyquist frequency 24.46 is rounded in print; 24.468 (half the
    // sampling rate of the 0.0204345-day cadence) reproduces the listed values.
    const double f0 = 1.611084;
    const double f_nyquist = 24.468;
    const auto f = reflection_frequencies(f0, f_nyquist, 11, 14);
    REQUIRE(f.size() == 4);
    CHECK(std::abs(f[0] - 18.3254) < 5e-4);
    CHECK(std::abs(f[1] - 19.9365) < 5e-4);
    CHECK(std::abs(f[2] - 21.5476) < 5e-4);
    CHECK(std::abs(f[3] - 23.1587) < 5e-4);
}

TEST_CASE("reflection frequency j = 30 cancels the f0 term") {
    const auto f = reflection_frequencies(1.0, 15.0, 30, 30);
    CHECK(f[0] == 30.0);
}

TEST_CASE("non-positive reflection frequencies are rejected") {
    CHECK(fails_with(ErrorCode::NonPositiveResult,
                     [] { reflection_frequencies(10.0, 1.0, 1, 1); }));
}

TEST_CASE("model spec validation catches bad input") {
    ModelSpec spec;
    spec.frequencies = {2.0, 2.0};
    spec.basis_intervals = 3;
    spec.degree = 2;
    spec.penalty_order = 1;
    CHECK(fails_with(ErrorCode::InvalidArgument, [&] { spec.validate(); }));

    spec.frequencies = {2.0};
    spec.penalty_order = 9;
    CHECK(fails_with(ErrorCode::OrderTooHigh, [&] { spec.validate(); }));
}
