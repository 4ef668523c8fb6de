#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/errors.hpp"

namespace tvharm {

// Difference penalty acting blockwise on the stacked coefficient vector
// theta = (alpha | beta_1..beta_K | gamma_1..gamma_K). The taus follow the
// objective ordering: taus[0] weights the trend block, taus[2k-1] the k-th
// cosine-amplitude block and taus[2k] the k-th sine-amplitude block.
struct PenaltySpec {
    int order = 2;              // r
    std::vector<double> taus;   // 2K+1 non-negative weights
    int basis_size = 0;         // J

    int num_harmonics() const {
        return static_cast<int>((taus.size() - 1) / 2);
    }
    void validate() const;
};

// r-th order difference matrix, (J-r) x J, built by repeated first differences.
Eigen::MatrixXd difference_matrix(int r, int J);

// Block-diagonal penalty with k-th block tau * D_r' D_r, sized J(2K+1).
Eigen::MatrixXd penalty_block(const PenaltySpec& spec);

// Tau weight attached to coefficient block `b` (0 = trend, 1..K = cosine
// blocks, K+1..2K = sine blocks) under the objective ordering above.
double tau_for_block(const PenaltySpec& spec, int block);

}  // namespace tvharm
