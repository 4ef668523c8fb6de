#include "core/bspline.hpp"

#include <sstream>

namespace tvharm {

KnotVector build_knots(double t_min, double t_max, int n, int d) {
    require(t_max > t_min, ErrorCode::DegenerateDomain,
            "knot domain is degenerate: t_max <= t_min");
    require(n >= 1, ErrorCode::InvalidArgument, "need at least one interval");
    require(d >= 0, ErrorCode::InvalidArgument, "degree must be non-negative");

    KnotVector kv;
    kv.degree = d;
    kv.intervals = n;
    const int total = n + 2 * d + 1;
    const double step = (t_max - t_min) / static_cast<double>(n);
    kv.knots.resize(static_cast<std::size_t>(total));
    // Knot j sits at t_min + (j - d)*step, so the d exterior knots on each side
    // continue the uniform interior spacing.
    for (int j = 0; j < total; ++j)
        kv.knots[static_cast<std::size_t>(j)] =
            t_min + static_cast<double>(j - d) * step;
    // Pin the interior endpoints exactly.
    kv.knots[static_cast<std::size_t>(d)] = t_min;
    kv.knots[static_cast<std::size_t>(n + d)] = t_max;
    return kv;
}

namespace {

void check_in_domain(const KnotVector& kv, double t) {
    if (t < kv.domain_min() || t > kv.domain_max()) {
        std::ostringstream msg;
        msg << "t=" << t << " outside the spline domain [" << kv.domain_min()
            << ", " << kv.domain_max() << "]";
        fail(ErrorCode::OutOfDomain, msg.str());
    }
}

}  // namespace

Eigen::VectorXd basis_row(const KnotVector& kv, double t) {
    check_in_domain(kv, t);
    const int d = kv.degree;
    const int n = kv.intervals;
    const auto& xi = kv.knots;

    // Degree-0 indicators B_{j,0}, j = 1..n+2d, over the cells [xi_{j-1}, xi_j).
    // The cell ending at the right domain boundary is closed so that the
    // boundary itself evaluates to a partition of unity.
    const int m0 = n + 2 * d;
    const bool at_right_end = (t == kv.domain_max());
    std::vector<double> level(static_cast<std::size_t>(m0));
    for (int j = 1; j <= m0; ++j) {
        const double lo = xi[static_cast<std::size_t>(j - 1)];
        const double hi = xi[static_cast<std::size_t>(j)];
        const bool inside = at_right_end ? (j == n + d) : (t >= lo && t < hi);
        level[static_cast<std::size_t>(j - 1)] = inside ? 1.0 : 0.0;
    }

    // Raise the degree one level at a time; 0/0 terms count as 0.
    std::vector<double> next;
    for (int deg = 1; deg <= d; ++deg) {
        const int m = n + 2 * d - deg;  // number of degree-`deg` functions
        next.assign(static_cast<std::size_t>(m), 0.0);
        for (int j = 1; j <= m; ++j) {
            const double den1 = xi[static_cast<std::size_t>(j + deg - 1)] -
                                xi[static_cast<std::size_t>(j - 1)];
            const double den2 = xi[static_cast<std::size_t>(j + deg)] -
                                xi[static_cast<std::size_t>(j)];
            double v = 0.0;
            if (den1 != 0.0)
                v += (t - xi[static_cast<std::size_t>(j - 1)]) / den1 *
                     level[static_cast<std::size_t>(j - 1)];
            if (den2 != 0.0)
                v += (xi[static_cast<std::size_t>(j + deg)] - t) / den2 *
                     level[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(j - 1)] = v;
        }
        level.swap(next);
    }

    Eigen::VectorXd out(kv.num_basis());
    for (int j = 0; j < kv.num_basis(); ++j)
        out[j] = level[static_cast<std::size_t>(j)];
    return out;
}

double eval_basis(const KnotVector& kv, int j, double t) {
    require(j >= 1 && j <= kv.num_basis(), ErrorCode::InvalidArgument,
            "basis index out of range 1..J");
    return basis_row(kv, t)[j - 1];
}

SplineBasis basis_matrix(const KnotVector& kv, const std::vector<double>& times) {
    std::ostringstream offenders;
    bool any_bad = false;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < kv.domain_min() || times[i] > kv.domain_max()) {
            if (any_bad) offenders << ", ";
            offenders << i;
            any_bad = true;
        }
    }
    if (any_bad)
        fail(ErrorCode::OutOfDomain,
             "times outside the spline domain at indices " + offenders.str());

    SplineBasis basis;
    basis.knotvec = kv;
    basis.times = times;
    basis.matrix.resize(static_cast<Eigen::Index>(times.size()), kv.num_basis());
    for (std::size_t i = 0; i < times.size(); ++i)
        basis.matrix.row(static_cast<Eigen::Index>(i)) = basis_row(kv, times[i]).transpose();
    return basis;
}

}  // namespace tvharm
