#pragma once

#include <Eigen/Dense>
#include <functional>

namespace steklov {

struct JacobiResult {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns, sign-fixed
    int sweeps = 0;
    double off_diagonal_norm = 0.0;
};

/// Cyclic Jacobi eigensolver for symmetric matrices. Rotations are applied
/// in a fixed row-major order and eigenvector signs are fixed by making the
/// largest-magnitude entry of each column positive, so results are
/// deterministic down to the last bit for a given input.
JacobiResult jacobi_eigensolver(Eigen::MatrixXd a, double tol = 1e-12);

/// Conjugate gradient for a symmetric positive definite operator given as a
/// matrix-vector product. Converges to ||rhs - A x|| <= rel_tol * ||rhs||.
Eigen::VectorXd conjugate_gradient(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
    const Eigen::VectorXd& rhs, double rel_tol, int max_iterations);

} // namespace steklov
