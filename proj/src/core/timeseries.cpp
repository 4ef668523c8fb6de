#include "core/timeseries.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace tvharm {

namespace {

void check_basic(const std::vector<double>& times, const std::vector<double>& values) {
    require(!times.empty(), ErrorCode::EmptySeries, "time series is empty");
    require(times.size() == values.size(), ErrorCode::LengthMismatch,
            "times and values differ in length: " + std::to_string(times.size()) +
                " vs " + std::to_string(values.size()));
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            std::ostringstream msg;
            msg << "times must be strictly increasing; violated at position " << i
                << " (" << times[i - 1] << " followed by " << times[i] << ")";
            fail(ErrorCode::NonMonotoneTimes, msg.str());
        }
    }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values,
                       std::optional<GridInfo> grid, double grid_tol)
    : times_(std::move(times)), values_(std::move(values)), grid_(grid) {
    check_basic(times_, values_);
    if (grid_) {
        require(grid_->delta > 0.0, ErrorCode::InvalidArgument, "grid spacing must be > 0");
        // Constructing with grid info re-derives the embedding, enforcing the
        // on-grid invariant eagerly.
        TimeSeries plain(times_, values_);
        (void)embed_on_grid(plain, grid_->t0, grid_->delta, grid_tol);
    }
}

TimeSeries validate(std::vector<double> times, std::vector<double> values) {
    check_basic(times, values);
    return TimeSeries(std::move(times), std::move(values));
}

GridEmbedding embed_on_grid(const TimeSeries& ts, double t0, double delta,
                            double grid_tol) {
    require(delta > 0.0, ErrorCode::InvalidArgument, "grid spacing must be > 0");
    if (grid_tol < 0.0) grid_tol = delta * 1e-6;

    GridEmbedding emb;
    emb.t0 = t0;
    emb.delta = delta;
    emb.indices.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts.times()[i];
        const long k = std::lround((t - t0) / delta);
        const double offset = std::abs(t - (t0 + static_cast<double>(k) * delta));
        if (k < 1 || offset > grid_tol) {
            std::ostringstream msg;
            msg << "observation " << i << " at t=" << t
                << " is off the grid t0+k*delta (nearest k=" << k
                << ", offset=" << offset << ", tol=" << grid_tol << ")";
            fail(ErrorCode::GridMismatch, msg.str());
        }
        if (!emb.indices.empty() && k <= emb.indices.back()) {
            std::ostringstream msg;
            msg << "observations " << i - 1 << " and " << i
                << " both map to grid index " << k;
            fail(ErrorCode::IndexCollision, msg.str());
        }
        emb.indices.push_back(k);
    }
    emb.n_grid = emb.indices.back();
    return emb;
}

std::vector<double> reconstruct_times(const GridEmbedding& emb) {
    std::vector<double> out;
    out.reserve(emb.indices.size());
    for (long k : emb.indices)
        out.push_back(emb.t0 + static_cast<double>(k) * emb.delta);
    return out;
}

std::vector<double> rescale_time(const TimeSeries& ts) {
    require(ts.size() >= 2, ErrorCode::DegenerateSpan,
            "rescaling needs at least two distinct instants");
    const double t1 = ts.times().front();
    const double span = ts.times().back() - t1;
    require(span > 0.0, ErrorCode::DegenerateSpan, "time span is zero");
    std::vector<double> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        out[i] = (ts.times()[i] - t1) / span;
    return out;
}

}  // namespace tvharm
