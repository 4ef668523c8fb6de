#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "core/bspline.hpp"
#include "core/errors.hpp"
#include "core/penalty.hpp"

namespace tvharm {

// Everything that defines one fit: the harmonic frequencies (cycles/day), any
// extra non-harmonic frequencies, the basis configuration and the penalty.
struct ModelSpec {
    std::vector<double> frequencies;        // f_k, k = 1..K
    std::vector<double> extra_frequencies;  // f'_j, appended after the harmonics
    int basis_intervals = 10;               // n (J = n + d)
    int degree = 3;                         // d
    int penalty_order = 2;                  // r
    std::vector<double> taus;               // 2*K_total+1 weights, or one value broadcast

    // Harmonic plus extra frequencies, in design-matrix order.
    std::vector<double> all_frequencies() const;
    int total_harmonics() const {
        return static_cast<int>(frequencies.size() + extra_frequencies.size());
    }
    int num_basis() const { return basis_intervals + degree; }
    int num_columns() const { return num_basis() * (2 * total_harmonics() + 1); }

    std::vector<double> resolved_taus() const;  // broadcasts a single tau
    PenaltySpec penalty_spec() const;
    void validate() const;
};

// Which model component a design column belongs to.
enum class ColumnKind { Trend, Cos, Sin };

struct ColumnInfo {
    ColumnKind kind = ColumnKind::Trend;
    int freq_index = 0;   // 1-based index into all_frequencies(); 0 for trend
    int basis_index = 0;  // 1-based basis function index
    bool extra = false;   // true when the frequency comes from extra_frequencies
};

// Design matrix [B | C_1 B | ... | C_K B | S_1 B | ... | S_K B] with the
// diagonal C_k, S_k realised as elementwise cos/sin scaling of the basis rows.
struct DesignMatrix {
    Eigen::MatrixXd matrix;               // N x c
    std::vector<ColumnInfo> column_map;   // size c
    std::vector<double> angular;          // w_k = 2*pi*f_k per frequency slot
};

DesignMatrix build_design(const SplineBasis& basis, const ModelSpec& spec);

// Reflection frequencies f'_j = 2*f_nyquist - (anchor - j)*f0 for j in
// [j_begin, j_end]; anchor defaults to 30 (= 2K for K = 15 harmonics).
std::vector<double> reflection_frequencies(double f0, double f_nyquist,
                                           int j_begin, int j_end,
                                           int anchor = 30);

}  // namespace tvharm
