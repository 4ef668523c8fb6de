#include "core/selection.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace tvharm {

double aic(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted, double edf,
           double sigma2_0) {
    require(y.size() == fitted.size(), ErrorCode::ShapeMismatch,
            "y and fitted differ in length");
    require(sigma2_0 >= 0.0, ErrorCode::InvalidArgument, "sigma2_0 must be >= 0");
    const double n = static_cast<double>(y.size());
    return (y - fitted).squaredNorm() / n + 2.0 * edf * sigma2_0 / n;
}

namespace {

std::vector<TauGroup> normalized_groups(const TuningGrid& grid, int max_taus) {
    if (!grid.tau_groups.empty()) return grid.tau_groups;
    TauGroup all;
    for (int i = 1; i <= max_taus; ++i) all.members.push_back(i);
    all.candidates = {0.0};
    return {all};
}

void validate_grid(const ModelSpec& tmpl, const TuningGrid& grid) {
    require(!grid.basis_sizes.empty() && !grid.degrees.empty() &&
                !grid.orders.empty() && !grid.harmonic_counts.empty(),
            ErrorCode::InvalidArgument, "tuning grid has an empty axis");
    for (int j_total : grid.basis_sizes)
        for (int d : grid.degrees) {
            require(d >= 0, ErrorCode::InvalidArgument, "degree must be >= 0");
            require(j_total - d >= 1, ErrorCode::InvalidArgument,
                    "basis size J=" + std::to_string(j_total) +
                        " leaves no interval for degree d=" + std::to_string(d));
            for (int r : grid.orders)
                require(r >= 1 && r < j_total, ErrorCode::InvalidArgument,
                        "penalty order r=" + std::to_string(r) +
                            " invalid for basis size J=" + std::to_string(j_total));
        }
    for (int k : grid.harmonic_counts)
        require(k >= 0 && k <= static_cast<int>(tmpl.frequencies.size()),
                ErrorCode::InvalidArgument,
                "harmonic count exceeds the supplied frequency list");
    for (const TauGroup& g : grid.tau_groups) {
        require(!g.members.empty() && !g.candidates.empty(),
                ErrorCode::InvalidArgument, "tau group must have members and candidates");
        for (int m : g.members)
            require(m >= 1, ErrorCode::InvalidArgument, "tau indices are 1-based");
        for (double v : g.candidates)
            require(v >= 0.0, ErrorCode::InvalidArgument, "taus must be >= 0");
    }
}

}  // namespace

SelectionResult grid_search(const TimeSeries& ts, const ModelSpec& spec_template,
                            const TuningGrid& grid, int threads) {
    validate_grid(spec_template, grid);

    const int max_k_total = static_cast<int>(
        *std::max_element(grid.harmonic_counts.begin(), grid.harmonic_counts.end()) +
        spec_template.extra_frequencies.size());
    const auto groups = normalized_groups(grid, 2 * max_k_total + 1);

    // Enumerate every configuration up front so the table layout is fixed.
    std::vector<ModelSpec> configs;
    for (int j_total : grid.basis_sizes)
        for (int d : grid.degrees)
            for (int r : grid.orders)
                for (int k : grid.harmonic_counts) {
                    ModelSpec spec = spec_template;
                    spec.frequencies.assign(spec_template.frequencies.begin(),
                                            spec_template.frequencies.begin() + k);
                    spec.degree = d;
                    spec.basis_intervals = j_total - d;
                    spec.penalty_order = r;
                    const int ntaus = 2 * spec.total_harmonics() + 1;

                    // Active groups for this K, in declaration order.
                    std::vector<const TauGroup*> active;
                    for (const TauGroup& g : groups) {
                        bool any = std::any_of(g.members.begin(), g.members.end(),
                                               [&](int m) { return m <= ntaus; });
                        if (any) active.push_back(&g);
                    }
                    std::vector<std::size_t> odo(active.size(), 0);
                    while (true) {
                        spec.taus.assign(static_cast<std::size_t>(ntaus), 0.0);
                        for (std::size_t g = 0; g < active.size(); ++g)
                            for (int m : active[g]->members)
                                if (m <= ntaus)
                                    spec.taus[static_cast<std::size_t>(m - 1)] =
                                        active[g]->candidates[odo[g]];
                        configs.push_back(spec);
                        if (active.empty()) break;
                        // Advance the odometer, last group fastest.
                        bool advanced = false;
                        std::size_t pos = active.size();
                        while (pos > 0) {
                            --pos;
                            if (++odo[pos] < active[pos]->candidates.size()) {
                                advanced = true;
                                break;
                            }
                            odo[pos] = 0;
                        }
                        if (!advanced) break;
                    }
                }

    SelectionResult result;
    result.table.resize(configs.size());

    auto evaluate = [&](std::size_t i) {
        EvaluatedConfig row;
        row.spec = configs[i];
        try {
            ModelSpec base = configs[i];
            base.taus.assign(base.resolved_taus().size(), 0.0);
            const FitResult base_fit = fit_model(ts, base);
            row.sigma2_0 = base_fit.sigma2;

            const FitResult fit = fit_model(ts, configs[i]);
            const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
                ts.values().data(), static_cast<Eigen::Index>(ts.size()));
            row.aic = aic(y, fit.fitted, fit.edf, row.sigma2_0);
            row.mse = fit.mse;
            row.edf = fit.edf;
            row.ok = true;
        } catch (const Error& e) {
            row.error = e.what();
        }
        result.table[i] = std::move(row);
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1 || configs.size() < 2) {
        for (std::size_t i = 0; i < configs.size(); ++i) evaluate(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t n_workers =
            std::min<std::size_t>(static_cast<std::size_t>(nthreads), configs.size());
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < configs.size();
                     i = next.fetch_add(1))
                    evaluate(i);
            });
        for (auto& th : pool) th.join();
    }

    bool any_ok = false;
    std::size_t best = 0;
    for (std::size_t i = 0; i < result.table.size(); ++i) {
        const auto& row = result.table[i];
        if (!row.ok) continue;
        if (!any_ok || row.aic < result.table[best].aic ||
            (row.aic == result.table[best].aic && row.edf < result.table[best].edf)) {
            best = i;
            any_ok = true;
        }
    }
    require(any_ok, ErrorCode::AllFitsFailed, "every grid configuration failed to fit");
    result.best_index = best;
    return result;
}

}  // namespace tvharm
