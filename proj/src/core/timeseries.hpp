#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "core/errors.hpp"

namespace tvharm {

// Parameters of the underlying regular grid t = t0 + k*delta, k positive integer.
struct GridInfo {
    double t0 = 0.0;
    double delta = 1.0;
};

// Unequally spaced observations (times strictly increasing, values same length).
// Immutable after construction; safe to share across threads.
class TimeSeries {
public:
    // Empty placeholder so aggregates can be built in stages; every factory and
    // the validating constructor below still enforce the invariants.
    TimeSeries() = default;

    TimeSeries(std::vector<double> times, std::vector<double> values,
               std::optional<GridInfo> grid = std::nullopt,
               double grid_tol = -1.0);

    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return times_.size(); }
    const std::optional<GridInfo>& grid() const noexcept { return grid_; }

    double time_span() const { return times_.back() - times_.front(); }

private:
    std::vector<double> times_;
    std::vector<double> values_;
    std::optional<GridInfo> grid_;
};

// Integer-grid embedding of a time series: strictly increasing indices k_i with
// t_i = t0 + k_i*delta up to grid_tol, and n_grid equal to the largest index.
struct GridEmbedding {
    std::vector<long> indices;
    long n_grid = 0;
    double t0 = 0.0;
    double delta = 1.0;
};

// Checks the TimeSeries invariants on raw arrays and returns the validated series.
TimeSeries validate(std::vector<double> times, std::vector<double> values);

// Assigns each observation the nearest integer index on the grid t0 + k*delta.
// Default grid_tol (negative input) resolves to delta * 1e-6.
GridEmbedding embed_on_grid(const TimeSeries& ts, double t0, double delta,
                            double grid_tol = -1.0);

// Reconstructs the instants t0 + k_i*delta of an embedding.
std::vector<double> reconstruct_times(const GridEmbedding& emb);

// Maps times affinely onto [0, 1]: (t_i - t_1)/(t_N - t_1).
std::vector<double> rescale_time(const TimeSeries& ts);

}  // namespace tvharm
