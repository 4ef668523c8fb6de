#include "core/penalty.hpp"

namespace tvharm {

void PenaltySpec::validate() const {
    require(order >= 1, ErrorCode::InvalidArgument, "penalty order must be >= 1");
    require(order < basis_size, ErrorCode::OrderTooHigh,
            "penalty order r=" + std::to_string(order) +
                " must be smaller than the basis size J=" + std::to_string(basis_size));
    require(!taus.empty() && taus.size() % 2 == 1, ErrorCode::InvalidArgument,
            "need an odd number of taus (2K+1)");
    for (double tau : taus)
        require(tau >= 0.0, ErrorCode::InvalidArgument, "taus must be non-negative");
}

Eigen::MatrixXd difference_matrix(int r, int J) {
    require(r >= 1, ErrorCode::InvalidArgument, "difference order must be >= 1");
    require(r < J, ErrorCode::OrderTooHigh,
            "difference order r=" + std::to_string(r) +
                " requires J > r (got J=" + std::to_string(J) + ")");

    auto first_diff = [](int m) {
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m - 1, m);
        for (int i = 0; i < m - 1; ++i) {
            d(i, i) = -1.0;
            d(i, i + 1) = 1.0;
        }
        return d;
    };

    Eigen::MatrixXd out = first_diff(J);
    for (int k = 2; k <= r; ++k)
        out = first_diff(J - k + 1) * out;
    return out;
}

double tau_for_block(const PenaltySpec& spec, int block) {
    const int K = spec.num_harmonics();
    if (block == 0) return spec.taus[0];
    if (block <= K) return spec.taus[static_cast<std::size_t>(2 * block - 1)];
    return spec.taus[static_cast<std::size_t>(2 * (block - K))];
}

Eigen::MatrixXd penalty_block(const PenaltySpec& spec) {
    spec.validate();
    const int J = spec.basis_size;
    const int blocks = static_cast<int>(spec.taus.size());
    const Eigen::MatrixXd dr = difference_matrix(spec.order, J);
    const Eigen::MatrixXd dtd = dr.transpose() * dr;

    const int c = J * blocks;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(c, c);
    for (int b = 0; b < blocks; ++b) {
        const double tau = tau_for_block(spec, b);
        if (tau == 0.0) continue;
        p.block(b * J, b * J, J, J) = tau * dtd;
    }
    return p;
}

}  // namespace tvharm
