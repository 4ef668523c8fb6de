#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/errors.hpp"

namespace tvharm {

// Uniform knot vector for B-splines of degree d over a domain split into n
// intervals. Knots are indexed 0..n+2d while basis functions are indexed
// 1..J with J = n+d; the basis B_j of degree d lives on (knots[j-1], knots[j+d]).
struct KnotVector {
    std::vector<double> knots;  // n + 2d + 1 non-decreasing values
    int degree = 0;             // d
    int intervals = 0;          // n

    int num_basis() const noexcept { return intervals + degree; }  // J
    double domain_min() const { return knots[static_cast<std::size_t>(degree)]; }
    double domain_max() const {
        return knots[static_cast<std::size_t>(intervals + degree)];
    }
};

// Evaluated basis matrix: N x J with entries B_j(t_i).
struct SplineBasis {
    KnotVector knotvec;
    Eigen::MatrixXd matrix;
    std::vector<double> times;
};

// Builds n+1 equally spaced knots on [t_min, t_max] and extends d knots on each
// side with the same spacing.
KnotVector build_knots(double t_min, double t_max, int n, int d);

// Values of all J basis functions at t (Cox-de Boor recursion run bottom-up).
// The last interior cell is closed so t == domain_max() is representable.
Eigen::VectorXd basis_row(const KnotVector& kv, double t);

// Single basis function B_j(t), j in 1..J.
double eval_basis(const KnotVector& kv, int j, double t);

// Basis matrix over a set of evaluation instants.
SplineBasis basis_matrix(const KnotVector& kv, const std::vector<double>& times);

}  // namespace tvharm
