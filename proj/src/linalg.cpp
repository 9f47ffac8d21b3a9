#include "steklov/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

double off_diagonal_frobenius(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index p = 0; p < a.rows(); ++p) {
        for (Eigen::Index q = p + 1; q < a.cols(); ++q) {
            sum += 2.0 * a(p, q) * a(p, q);
        }
    }
    return std::sqrt(sum);
}

} // namespace

JacobiResult jacobi_eigensolver(Eigen::MatrixXd a, double tol) {
    if (a.rows() != a.cols()) {
        throw InvalidInput("jacobi_eigensolver needs a square matrix");
    }
    const Eigen::Index n = a.rows();
    JacobiResult result;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double scale = a.norm();
    const double target = tol * std::max(scale, 1e-300);

    if (n > 1) {
        constexpr int kMaxSweeps = 64;
        int sweep = 0;
        while (off_diagonal_frobenius(a) > target) {
            if (++sweep > kMaxSweeps) {
                throw InvariantViolation(
                    "jacobi_eigensolver failed to converge");
            }
            for (Eigen::Index p = 0; p < n - 1; ++p) {
                for (Eigen::Index q = p + 1; q < n; ++q) {
                    const double apq = a(p, q);
                    if (apq == 0.0) continue;
                    // Classical rotation choosing the smaller angle root.
                    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                    const double t =
                        (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    Eigen::VectorXd ap = a.col(p);
                    Eigen::VectorXd aq = a.col(q);
                    a.col(p) = c * ap - s * aq;
                    a.col(q) = s * ap + c * aq;
                    Eigen::VectorXd rp = a.row(p);
                    Eigen::VectorXd rq = a.row(q);
                    a.row(p) = c * rp.transpose() - s * rq.transpose();
                    a.row(q) = s * rp.transpose() + c * rq.transpose();
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    Eigen::VectorXd vp = v.col(p);
                    Eigen::VectorXd vq = v.col(q);
                    v.col(p) = c * vp - s * vq;
                    v.col(q) = s * vp + c * vq;
                }
            }
        }
        result.sweeps = sweep;
    }
    result.off_diagonal_norm = off_diagonal_frobenius(a);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) {
                         return a(x, x) < a(y, y);
                     });
    result.eigenvalues.resize(n);
    result.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        result.eigenvalues(k) = a(order[static_cast<std::size_t>(k)],
                                  order[static_cast<std::size_t>(k)]);
        result.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    // Sign convention: largest-magnitude entry positive; first index on ties.
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index arg = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::abs(result.eigenvectors(i, k));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (result.eigenvectors(arg, k) < 0.0) {
            result.eigenvectors.col(k) *= -1.0;
        }
    }
    return result;
}

Eigen::VectorXd conjugate_gradient(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
    const Eigen::VectorXd& rhs, double rel_tol, int max_iterations) {
    const double rhs_norm = rhs.norm();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
    if (rhs_norm == 0.0) return x;
    Eigen::VectorXd r = rhs;
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    const double threshold = rel_tol * rhs_norm;
    for (int it = 0; it < max_iterations; ++it) {
        if (std::sqrt(rr) <= threshold) return x;
        Eigen::VectorXd ap = apply(p);
        const double pap = p.dot(ap);
        if (!(pap > 0.0)) {
            throw InvariantViolation(
                "conjugate_gradient met a non-positive-definite direction");
        }
        const double alpha = rr / pap;
        x += alpha * p;
        r -= alpha * ap;
        const double rr_next = r.squaredNorm();
        p = r + (rr_next / rr) * p;
        rr = rr_next;
    }
    if (std::sqrt(rr) > threshold) {
        throw InvariantViolation("conjugate_gradient failed to converge");
    }
    return x;
}

} // namespace steklov
