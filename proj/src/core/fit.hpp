#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/design.hpp"
#include "core/timeseries.hpp"

namespace tvharm {

// Stacked coefficient vector theta = (alpha | beta_1..beta_K | gamma_1..gamma_K),
// each block of length J.
struct Coefficients {
    Eigen::VectorXd theta;
    int basis_size = 0;       // J
    int total_harmonics = 0;  // K (harmonics plus extra frequencies)

    Eigen::VectorXd alpha() const { return block(0); }
    Eigen::VectorXd beta(int k) const { return block(k); }                    // k = 1..K
    Eigen::VectorXd gamma(int k) const { return block(total_harmonics + k); } // k = 1..K
    Eigen::VectorXd block(int b) const {
        return theta.segment(static_cast<Eigen::Index>(b) * basis_size, basis_size);
    }
};

// Fitted curves that can be evaluated at arbitrary in-domain instants.
struct FittedModel {
    KnotVector knotvec;
    std::vector<double> angular;  // w_k per frequency slot
    Coefficients coefficients;

    double eval_trend(double t) const;
    // ell = 1 for the cosine amplitude g_{1,k}, ell = 2 for the sine amplitude.
    double eval_amplitude(int ell, int k, double t) const;
    double eval_mu(double t) const;
};

struct FitResult {
    FittedModel model;
    Eigen::VectorXd fitted;     // design * theta
    Eigen::VectorXd residuals;  // y - fitted
    double edf = 0.0;           // tr(S_hat)
    double sigma2 = 0.0;        // RSS / (N - edf)
    double mse = 0.0;           // RSS / N
    Eigen::VectorXd trend;                   // B alpha at the observation times
    std::vector<Eigen::VectorXd> amplitudes; // 2K curves: g_{1,1..K} then g_{2,1..K}
};

// Penalized least squares theta = (B'B + P)^{-1} B'y with a symmetric
// positive-definite factorization; retries once with a small diagonal jitter.
FitResult fit_pols(const DesignMatrix& design, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& penalty, const SplineBasis& basis);

// tr(S_hat) computed as tr[(B'B + P)^{-1} B'B] without forming the hat matrix.
double hat_trace(const DesignMatrix& design, const Eigen::MatrixXd& penalty);

// RSS / (N - edf).
double error_variance(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted,
                      double edf);

// Trend and amplitude curves m = B alpha, g_{1,k} = B beta_k, g_{2,k} = B gamma_k
// at the basis evaluation times; first entry is the trend.
std::vector<Eigen::VectorXd> extract_components(const Coefficients& coeffs,
                                                const SplineBasis& basis);

// Whole pipeline for one configuration: knots over the observed span, basis,
// design, penalty, solve.
FitResult fit_model(const TimeSeries& ts, const ModelSpec& spec);

// Cholesky of A with one jitter retry; throws SingularSystem with the smallest
// pivot when the factorization cannot proceed.
Eigen::LLT<Eigen::MatrixXd> factorize_normal_matrix(const Eigen::MatrixXd& a);

}  // namespace tvharm
