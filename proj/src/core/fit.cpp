#include "core/fit.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tvharm {

double FittedModel::eval_trend(double t) const {
    return basis_row(knotvec, t).dot(coefficients.alpha());
}

double FittedModel::eval_amplitude(int ell, int k, double t) const {
    require(ell == 1 || ell == 2, ErrorCode::UnknownComponent,
            "amplitude selector ell must be 1 (cos) or 2 (sin)");
    require(k >= 1 && k <= coefficients.total_harmonics, ErrorCode::UnknownComponent,
            "harmonic index out of range");
    const Eigen::VectorXd coefs =
        ell == 1 ? coefficients.beta(k) : coefficients.gamma(k);
    return basis_row(knotvec, t).dot(coefs);
}

double FittedModel::eval_mu(double t) const {
    const Eigen::VectorXd row = basis_row(knotvec, t);
    double mu = row.dot(coefficients.alpha());
    for (int k = 1; k <= coefficients.total_harmonics; ++k) {
        const double w = angular[static_cast<std::size_t>(k - 1)];
        mu += row.dot(coefficients.beta(k)) * std::cos(w * t);
        mu += row.dot(coefficients.gamma(k)) * std::sin(w * t);
    }
    return mu;
}

Eigen::LLT<Eigen::MatrixXd> factorize_normal_matrix(const Eigen::MatrixXd& a) {
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) return llt;

    const double jitter = 1e-10 * a.diagonal().mean();
    Eigen::MatrixXd nudged = a;
    nudged.diagonal().array() += jitter;
    llt.compute(nudged);
    if (llt.info() == Eigen::Success) return llt;

    // Report the smallest pivot from a pivoted LDL^T of the original matrix.
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    const double smallest = ldlt.vectorD().minCoeff();
    std::ostringstream msg;
    msg << "normal matrix is not positive definite (smallest pivot " << smallest
        << " after jitter " << jitter << ")";
    fail(ErrorCode::SingularSystem, msg.str());
}

namespace {

void check_shapes(const DesignMatrix& design, const Eigen::VectorXd& y,
                  const Eigen::MatrixXd& penalty) {
    const Eigen::Index c = design.matrix.cols();
    require(design.matrix.rows() == y.size(), ErrorCode::ShapeMismatch,
            "design has " + std::to_string(design.matrix.rows()) + " rows but y has " +
                std::to_string(y.size()) + " entries");
    require(penalty.rows() == c && penalty.cols() == c, ErrorCode::ShapeMismatch,
            "penalty must be c x c with c = " + std::to_string(c));
}

}  // namespace

FitResult fit_pols(const DesignMatrix& design, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& penalty, const SplineBasis& basis) {
    check_shapes(design, y, penalty);
    const Eigen::Index n = design.matrix.rows();
    const Eigen::Index c = design.matrix.cols();
    if (n < c && penalty.isZero(0.0))
        fail(ErrorCode::SingularSystem,
             "unpenalized system is underdetermined: N=" + std::to_string(n) +
                 " < c=" + std::to_string(c));

    const Eigen::MatrixXd btb = design.matrix.transpose() * design.matrix;
    const Eigen::VectorXd bty = design.matrix.transpose() * y;
    const Eigen::MatrixXd a = btb + penalty;
    const auto llt = factorize_normal_matrix(a);

    FitResult result;
    const int J = basis.knotvec.num_basis();
    result.model.knotvec = basis.knotvec;
    result.model.angular = design.angular;
    Eigen::VectorXd theta = llt.solve(bty);
    theta += llt.solve(bty - a * theta);  // one step of iterative refinement
    result.model.coefficients.theta = std::move(theta);
    result.model.coefficients.basis_size = J;
    result.model.coefficients.total_harmonics = static_cast<int>(design.angular.size());

    result.fitted = design.matrix * result.model.coefficients.theta;
    result.residuals = y - result.fitted;
    Eigen::MatrixXd smoother = llt.solve(btb);
    smoother += llt.solve(btb - a * smoother);
    result.edf = smoother.trace();
    const double rss = result.residuals.squaredNorm();
    result.mse = rss / static_cast<double>(n);
    // Interpolating fits leave no residual degrees of freedom; the error
    // variance is undefined there rather than zero.
    const double dof = static_cast<double>(n) - result.edf;
    result.sigma2 = dof > 1e-8 * static_cast<double>(n)
                        ? error_variance(y, result.fitted, result.edf)
                        : std::numeric_limits<double>::quiet_NaN();

    auto curves = extract_components(result.model.coefficients, basis);
    result.trend = std::move(curves.front());
    result.amplitudes.assign(curves.begin() + 1, curves.end());
    return result;
}

double hat_trace(const DesignMatrix& design, const Eigen::MatrixXd& penalty) {
    const Eigen::MatrixXd btb = design.matrix.transpose() * design.matrix;
    require(penalty.rows() == btb.rows() && penalty.cols() == btb.cols(),
            ErrorCode::ShapeMismatch, "penalty shape does not match the design");
    const Eigen::MatrixXd a = btb + penalty;
    const auto llt = factorize_normal_matrix(a);
    Eigen::MatrixXd smoother = llt.solve(btb);
    smoother += llt.solve(btb - a * smoother);
    return smoother.trace();
}

double error_variance(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted,
                      double edf) {
    require(y.size() == fitted.size(), ErrorCode::ShapeMismatch,
            "y and fitted differ in length");
    const double dof = static_cast<double>(y.size()) - edf;
    require(dof > 0.0, ErrorCode::DegenerateDof,
            "effective degrees of freedom exhaust the sample (edf >= N)");
    return (y - fitted).squaredNorm() / dof;
}

std::vector<Eigen::VectorXd> extract_components(const Coefficients& coeffs,
                                                const SplineBasis& basis) {
    require(coeffs.basis_size == basis.knotvec.num_basis(), ErrorCode::ShapeMismatch,
            "coefficient partition does not match the basis");
    require(coeffs.theta.size() ==
                static_cast<Eigen::Index>(coeffs.basis_size) *
                    (2 * coeffs.total_harmonics + 1),
            ErrorCode::ShapeMismatch, "theta length does not match (J, K)");

    std::vector<Eigen::VectorXd> curves;
    curves.reserve(static_cast<std::size_t>(1 + 2 * coeffs.total_harmonics));
    curves.push_back(basis.matrix * coeffs.alpha());
    for (int k = 1; k <= coeffs.total_harmonics; ++k)
        curves.push_back(basis.matrix * coeffs.beta(k));
    for (int k = 1; k <= coeffs.total_harmonics; ++k)
        curves.push_back(basis.matrix * coeffs.gamma(k));
    return curves;
}

FitResult fit_model(const TimeSeries& ts, const ModelSpec& spec) {
    spec.validate();
    const KnotVector kv = build_knots(ts.times().front(), ts.times().back(),
                                      spec.basis_intervals, spec.degree);
    const SplineBasis basis = basis_matrix(kv, ts.times());
    const DesignMatrix design = build_design(basis, spec);
    const Eigen::MatrixXd penalty = penalty_block(spec.penalty_spec());
    const Eigen::VectorXd y =
        Eigen::Map<const Eigen::VectorXd>(ts.values().data(),
                                          static_cast<Eigen::Index>(ts.size()));
    return fit_pols(design, y, penalty, basis);
}

}  // namespace tvharm
