#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "core/design.hpp"
#include "core/fit.hpp"
#include "core/timeseries.hpp"

namespace tvharm {

// AIC(tau) = mean squared residual + 2 * edf * sigma2_0 / N, with sigma2_0 the
// residual variance of the unpenalized (tau = 0) fit.
double aic(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted, double edf,
           double sigma2_0);

// One group of tau indices that move together through a shared candidate list.
// Members are 1-based positions into the tau vector (1..2K+1); for candidates
// with fewer harmonics the out-of-range members are clipped.
struct TauGroup {
    std::vector<int> members;
    std::vector<double> candidates;
};

struct TuningGrid {
    std::vector<int> basis_sizes;      // J candidates
    std::vector<int> degrees;          // d candidates
    std::vector<int> orders;           // r candidates
    std::vector<int> harmonic_counts;  // K candidates (prefixes of the template)
    std::vector<TauGroup> tau_groups;  // empty = one group spanning every tau
};

struct EvaluatedConfig {
    ModelSpec spec;
    double aic = std::numeric_limits<double>::infinity();
    double mse = std::numeric_limits<double>::infinity();
    double edf = 0.0;
    double sigma2_0 = 0.0;
    bool ok = false;
    std::string error;
};

struct SelectionResult {
    std::size_t best_index = 0;
    std::vector<EvaluatedConfig> table;  // enumeration order

    const EvaluatedConfig& best() const { return table[best_index]; }
};

// Exhaustive search over the grid. Every configuration is fitted and recorded;
// fits that fail keep AIC = +inf. Ties are broken by smaller edf, then by
// enumeration order (J, d, r, K, tau odometer). `threads` > 1 evaluates
// configurations concurrently; the table layout does not depend on scheduling.
SelectionResult grid_search(const TimeSeries& ts, const ModelSpec& spec_template,
                            const TuningGrid& grid, int threads = 1);

}  // namespace tvharm
