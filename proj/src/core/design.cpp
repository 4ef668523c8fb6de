#include "core/design.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace tvharm {

std::vector<double> ModelSpec::all_frequencies() const {
    std::vector<double> all = frequencies;
    all.insert(all.end(), extra_frequencies.begin(), extra_frequencies.end());
    return all;
}

std::vector<double> ModelSpec::resolved_taus() const {
    const std::size_t want = static_cast<std::size_t>(2 * total_harmonics() + 1);
    if (taus.empty()) return std::vector<double>(want, 0.0);
    if (taus.size() == 1) return std::vector<double>(want, taus[0]);
    require(taus.size() == want, ErrorCode::InvalidArgument,
            "expected " + std::to_string(want) + " taus (2K+1), got " +
                std::to_string(taus.size()));
    return taus;
}

PenaltySpec ModelSpec::penalty_spec() const {
    PenaltySpec spec;
    spec.order = penalty_order;
    spec.taus = resolved_taus();
    spec.basis_size = num_basis();
    return spec;
}

void ModelSpec::validate() const {
    require(basis_intervals >= 1, ErrorCode::InvalidArgument,
            "basis needs at least one interval");
    require(degree >= 0, ErrorCode::InvalidArgument, "degree must be non-negative");
    std::set<double> seen;
    for (double f : all_frequencies()) {
        require(f > 0.0, ErrorCode::InvalidArgument, "frequencies must be positive");
        require(seen.insert(f).second, ErrorCode::InvalidArgument,
                "frequencies must be distinct");
    }
    penalty_spec().validate();
}

DesignMatrix build_design(const SplineBasis& basis, const ModelSpec& spec) {
    require(basis.matrix.size() > 0, ErrorCode::EmptyBasis, "basis matrix is empty");
    spec.validate();
    require(basis.knotvec.num_basis() == spec.num_basis(), ErrorCode::ShapeMismatch,
            "basis was built with a different (n, d) than the model spec");

    const auto freqs = spec.all_frequencies();
    const int K = static_cast<int>(freqs.size());
    const int J = spec.num_basis();
    const Eigen::Index N = basis.matrix.rows();

    DesignMatrix design;
    design.angular.resize(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k)
        design.angular[k] = 2.0 * std::numbers::pi * freqs[k];

    design.matrix.resize(N, spec.num_columns());
    design.matrix.leftCols(J) = basis.matrix;

    Eigen::VectorXd phase(N);
    for (int k = 0; k < K; ++k) {
        for (Eigen::Index i = 0; i < N; ++i)
            phase[i] = design.angular[static_cast<std::size_t>(k)] * basis.times[static_cast<std::size_t>(i)];
        design.matrix.middleCols((1 + k) * J, J) =
            basis.matrix.array().colwise() * phase.array().cos();
        design.matrix.middleCols((1 + K + k) * J, J) =
            basis.matrix.array().colwise() * phase.array().sin();
    }

    const int num_plain = static_cast<int>(spec.frequencies.size());
    design.column_map.reserve(static_cast<std::size_t>(spec.num_columns()));
    for (int j = 1; j <= J; ++j)
        design.column_map.push_back({ColumnKind::Trend, 0, j, false});
    for (int k = 1; k <= K; ++k)
        for (int j = 1; j <= J; ++j)
            design.column_map.push_back({ColumnKind::Cos, k, j, k > num_plain});
    for (int k = 1; k <= K; ++k)
        for (int j = 1; j <= J; ++j)
            design.column_map.push_back({ColumnKind::Sin, k, j, k > num_plain});
    return design;
}

std::vector<double> reflection_frequencies(double f0, double f_nyquist,
                                           int j_begin, int j_end, int anchor) {
    require(f0 > 0.0 && f_nyquist > 0.0, ErrorCode::InvalidArgument,
            "f0 and the Nyquist frequency must be positive");
    require(j_begin <= j_end, ErrorCode::InvalidArgument, "empty j range");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(j_end - j_begin + 1));
    for (int j = j_begin; j <= j_end; ++j) {
        const double f = 2.0 * f_nyquist - static_cast<double>(anchor - j) * f0;
        if (f <= 0.0) {
            std::ostringstream msg;
            msg << "reflection frequency for j=" << j << " is non-positive (" << f << ")";
            fail(ErrorCode::NonPositiveResult, msg.str());
        }
        out.push_back(f);
    }
    return out;
}

}  // namespace tvharm
