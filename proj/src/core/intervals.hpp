#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/design.hpp"
#include "core/fit.hpp"

namespace tvharm {

// Pointwise band around a fitted curve.
struct Band {
    std::vector<double> times;
    Eigen::VectorXd center;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    double level = 0.95;
};

// Addresses the trend or one amplitude curve g_{ell,k}.
struct ComponentRef {
    bool trend = true;
    int ell = 0;  // 1 = cosine amplitude, 2 = sine amplitude
    int k = 0;    // 1-based frequency index

    static ComponentRef for_trend() { return {true, 0, 0}; }
    static ComponentRef for_amplitude(int ell, int k) { return {false, ell, k}; }
};

// Sandwich covariance sigma2 * (B'B+P)^{-1} B'B (B'B+P)^{-1}, symmetrized.
Eigen::MatrixXd theta_covariance(const DesignMatrix& design,
                                 const Eigen::MatrixXd& penalty, double sigma2);

// Gaussian band for the fitted mean curve: fitted +/- z(1-(1-level)/2) * sqrt(b' V b).
Band prediction_band(const FitResult& fit, const DesignMatrix& design,
                     const Eigen::MatrixXd& penalty, double level,
                     const std::vector<double>& times);

// Gaussian band for the trend or one amplitude curve via the block-selector
// matrices Q applied to the stacked-basis rows.
Band component_band(const FitResult& fit, const SplineBasis& basis,
                    const DesignMatrix& design, const Eigen::MatrixXd& penalty,
                    ComponentRef which, double level);

// Pointwise quantile band over replicate curves (rows = replicates). The edges
// are the ceil(M*(1-level)/2)-th smallest and largest order statistics; the
// center is the pointwise mean.
Band empirical_band(const Eigen::MatrixXd& curves, double level,
                    const std::vector<double>& times);

// Inverse standard normal CDF (rational approximation plus one Newton step).
double normal_quantile(double p);

}  // namespace tvharm
