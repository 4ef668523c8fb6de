#include "core/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tvharm {

Eigen::MatrixXd theta_covariance(const DesignMatrix& design,
                                 const Eigen::MatrixXd& penalty, double sigma2) {
    require(sigma2 >= 0.0, ErrorCode::InvalidArgument, "sigma2 must be >= 0");
    const Eigen::MatrixXd btb = design.matrix.transpose() * design.matrix;
    require(penalty.rows() == btb.rows() && penalty.cols() == btb.cols(),
            ErrorCode::ShapeMismatch, "penalty shape does not match the design");
    const auto llt = factorize_normal_matrix(btb + penalty);
    const Eigen::MatrixXd half = llt.solve(btb);            // (B'B+P)^{-1} B'B
    Eigen::MatrixXd cov = llt.solve(half.transpose());      // ... (B'B+P)^{-1}
    cov = 0.5 * (cov + cov.transpose());
    return sigma2 * cov;
}

namespace {

Band gaussian_band(const Eigen::VectorXd& center, const Eigen::VectorXd& variances,
                   double level, const std::vector<double>& times) {
    require(level > 0.0 && level < 1.0, ErrorCode::InvalidArgument,
            "level must be in (0, 1)");
    const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    Band band;
    band.times = times;
    band.level = level;
    band.center = center;
    band.lower.resize(center.size());
    band.upper.resize(center.size());
    for (Eigen::Index i = 0; i < center.size(); ++i) {
        const double hw = z * std::sqrt(std::max(0.0, variances[i]));
        band.lower[i] = center[i] - hw;
        band.upper[i] = center[i] + hw;
    }
    return band;
}

}  // namespace

Band prediction_band(const FitResult& fit, const DesignMatrix& design,
                     const Eigen::MatrixXd& penalty, double level,
                     const std::vector<double>& times) {
    const Eigen::MatrixXd cov = theta_covariance(design, penalty, fit.sigma2);
    Eigen::VectorXd variances(design.matrix.rows());
    for (Eigen::Index i = 0; i < design.matrix.rows(); ++i) {
        const Eigen::VectorXd row = design.matrix.row(i);
        variances[i] = row.dot(cov * row);
    }
    return gaussian_band(fit.fitted, variances, level, times);
}

Band component_band(const FitResult& fit, const SplineBasis& basis,
                    const DesignMatrix& design, const Eigen::MatrixXd& penalty,
                    ComponentRef which, double level) {
    const int K = fit.model.coefficients.total_harmonics;
    const int J = fit.model.coefficients.basis_size;
    int block = 0;
    if (!which.trend) {
        require(which.ell == 1 || which.ell == 2, ErrorCode::UnknownComponent,
                "component selector ell must be 1 or 2");
        require(which.k >= 1 && which.k <= K, ErrorCode::UnknownComponent,
                "component harmonic index out of range");
        block = which.ell == 1 ? which.k : K + which.k;
    }

    const Eigen::MatrixXd cov = theta_covariance(design, penalty, fit.sigma2);
    // Q zeroes every block except the selected one, so the quadratic form
    // scriptB(t)' Q V Q' scriptB(t) collapses to the (block, block) slice of V
    // applied to the plain basis row.
    const Eigen::MatrixXd cov_block = cov.block(block * J, block * J, J, J);
    const Eigen::VectorXd coefs = fit.model.coefficients.block(block);

    Eigen::VectorXd center(basis.matrix.rows());
    Eigen::VectorXd variances(basis.matrix.rows());
    for (Eigen::Index i = 0; i < basis.matrix.rows(); ++i) {
        const Eigen::VectorXd row = basis.matrix.row(i);
        center[i] = row.dot(coefs);
        variances[i] = row.dot(cov_block * row);
    }
    return gaussian_band(center, variances, level, basis.times);
}

Band empirical_band(const Eigen::MatrixXd& curves, double level,
                    const std::vector<double>& times) {
    const Eigen::Index m = curves.rows();
    require(m >= 2, ErrorCode::TooFewReplicates,
            "empirical band needs at least two replicate curves");
    require(level > 0.0 && level < 1.0, ErrorCode::InvalidArgument,
            "level must be in (0, 1)");
    const double alpha_half = (1.0 - level) / 2.0;
    // Ceiling index with a nudge so that exactly integral M*alpha/2 (e.g.
    // 200 * 0.025 = 5) is not pushed up by floating-point noise.
    const Eigen::Index k_low = static_cast<Eigen::Index>(std::max<long>(
        1, std::lround(std::ceil(static_cast<double>(m) * alpha_half - 1e-9))));
    const Eigen::Index k_high = m + 1 - k_low;

    Band band;
    band.times = times;
    band.level = level;
    band.center = curves.colwise().mean();
    band.lower.resize(curves.cols());
    band.upper.resize(curves.cols());
    std::vector<double> column(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < curves.cols(); ++j) {
        for (Eigen::Index i = 0; i < m; ++i)
            column[static_cast<std::size_t>(i)] = curves(i, j);
        std::sort(column.begin(), column.end());
        band.lower[j] = column[static_cast<std::size_t>(k_low - 1)];
        band.upper[j] = column[static_cast<std::size_t>(k_high - 1)];
    }
    return band;
}

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, ErrorCode::OutOfRange,
            "quantile argument must lie in (0, 1)");
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -normal_quantile(1.0 - p);

    // Acklam's rational approximation for the lower tail / central region.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};

    constexpr double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    // One Newton step against the exact CDF. For x <= 0 the lower-tail CDF
    // Phi(x) = erfc(-x/sqrt(2))/2 is free of cancellation.
    const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    x -= (cdf - p) / pdf;
    return x;
}

}  // namespace tvharm
