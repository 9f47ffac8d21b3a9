#include "steklov/spectrum.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "steklov/linalg.hpp"

namespace steklov {

Eigen::VectorXd laplacian_apply(const GraphWithBoundary& g,
                                const Eigen::VectorXd& v) {
    if (v.size() != g.vertex_count()) {
        throw InvalidInput("vector length " + std::to_string(v.size()) +
                           " does not match vertex count " +
                           std::to_string(g.vertex_count()));
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (const auto& [a, b] : g.edges()) {
        const double diff = v(a) - v(b);
        out(a) += diff;
        out(b) -= diff;
    }
    return out;
}

Eigen::VectorXd normal_derivative(const GraphWithBoundary& g,
                                  const Eigen::VectorXd& v) {
    if (v.size() != g.vertex_count()) {
        throw InvalidInput("vector length does not match vertex count");
    }
    const auto& boundary = g.boundary_vertices();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(boundary.size()));
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        const int i = boundary[k];
        double sum = 0.0;
        for (int j : g.neighbors(i)) {
            if (!g.is_boundary(j)) sum += v(i) - v(j);
        }
        out(static_cast<Eigen::Index>(k)) = sum;
    }
    return out;
}

namespace {

struct Partition {
    std::vector<int> position;  // vertex -> index within its block
};

Partition make_partition(const GraphWithBoundary& g) {
    Partition p;
    p.position.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    const auto& interior = g.interior_vertices();
    const auto& boundary = g.boundary_vertices();
    for (std::size_t k = 0; k < interior.size(); ++k) {
        p.position[static_cast<std::size_t>(interior[k])] =
            static_cast<int>(k);
    }
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        p.position[static_cast<std::size_t>(boundary[k])] =
            static_cast<int>(k);
    }
    return p;
}

/// Laplacian restricted to interior x interior, as a dense matrix.
Eigen::MatrixXd interior_block(const GraphWithBoundary& g,
                               const Partition& p) {
    const auto& interior = g.interior_vertices();
    const Eigen::Index ni = static_cast<Eigen::Index>(interior.size());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(ni, ni);
    for (Eigen::Index k = 0; k < ni; ++k) {
        const int v = interior[static_cast<std::size_t>(k)];
        l(k, k) = static_cast<double>(g.degree(v));
        for (int u : g.neighbors(v)) {
            if (!g.is_boundary(u)) {
                l(k, p.position[static_cast<std::size_t>(u)]) -= 1.0;
            }
        }
    }
    return l;
}

/// Interior-boundary coupling block, interior rows by boundary columns.
Eigen::MatrixXd coupling_block(const GraphWithBoundary& g,
                               const Partition& p) {
    const Eigen::Index ni =
        static_cast<Eigen::Index>(g.interior_vertices().size());
    const Eigen::Index nb =
        static_cast<Eigen::Index>(g.boundary_vertices().size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(ni, nb);
    for (const auto& [a, b] : g.edges()) {
        int interior_v = -1, boundary_v = -1;
        if (!g.is_boundary(a) && g.is_boundary(b)) {
            interior_v = a;
            boundary_v = b;
        } else if (g.is_boundary(a) && !g.is_boundary(b)) {
            interior_v = b;
            boundary_v = a;
        } else {
            continue;
        }
        c(p.position[static_cast<std::size_t>(interior_v)],
          p.position[static_cast<std::size_t>(boundary_v)]) -= 1.0;
    }
    return c;
}

/// Solves L_II X = rhs for several right-hand sides, choosing Cholesky or
/// conjugate gradient by interior size.
Eigen::MatrixXd interior_solve(const GraphWithBoundary& g, const Partition& p,
                               const Eigen::MatrixXd& rhs,
                               const SolveOptions& opts) {
    const auto& interior = g.interior_vertices();
    const Eigen::Index ni = static_cast<Eigen::Index>(interior.size());
    if (ni <= opts.dense_cap) {
        Eigen::MatrixXd l = interior_block(g, p);
        Eigen::LLT<Eigen::MatrixXd> llt(l);
        if (llt.info() != Eigen::Success) {
            throw InvariantViolation(
                "interior Laplacian block is not positive definite");
        }
        Eigen::MatrixXd x = llt.solve(rhs);
        // One step of iterative refinement tightens the worst columns.
        x += llt.solve(rhs - l * x);
        return x;
    }
    // Matrix-free route for large interiors.
    auto apply = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(ni);
        for (Eigen::Index k = 0; k < ni; ++k) {
            const int v = interior[static_cast<std::size_t>(k)];
            double acc = static_cast<double>(g.degree(v)) * x(k);
            for (int u : g.neighbors(v)) {
                if (!g.is_boundary(u)) {
                    acc -= x(p.position[static_cast<std::size_t>(u)]);
                }
            }
            out(k) = acc;
        }
        return out;
    };
    Eigen::MatrixXd x(ni, rhs.cols());
    const int max_it = static_cast<int>(10 * ni + 100);
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
        x.col(c) = conjugate_gradient(apply, rhs.col(c), opts.cg_tol, max_it);
    }
    return x;
}

void check_harmonic_residual(const GraphWithBoundary& g,
                             const Eigen::VectorXd& full, double data_scale,
                             const SolveOptions& opts) {
    const Eigen::VectorXd lap = laplacian_apply(g, full);
    double residual = 0.0;
    for (int v : g.interior_vertices()) {
        residual = std::max(residual, std::abs(lap(v)));
    }
    if (residual > opts.residual_tol * std::max(1.0, data_scale)) {
        throw InvariantViolation("harmonic extension residual " +
                                 std::to_string(residual) +
                                 " exceeds tolerance");
    }
}

} // namespace

Eigen::VectorXd harmonic_extension(const GraphWithBoundary& g,
                                   const Eigen::VectorXd& f,
                                   const SolveOptions& opts) {
    require_valid(g);
    const auto& boundary = g.boundary_vertices();
    if (f.size() != static_cast<Eigen::Index>(boundary.size())) {
        throw InvalidInput("boundary data length does not match |B|");
    }
    const Partition p = make_partition(g);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(g.vertex_count());
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        full(boundary[k]) = f(static_cast<Eigen::Index>(k));
    }
    if (!g.interior_vertices().empty()) {
        const Eigen::MatrixXd rhs = -coupling_block(g, p) * f;
        const Eigen::MatrixXd x = interior_solve(g, p, rhs, opts);
        const auto& interior = g.interior_vertices();
        for (std::size_t k = 0; k < interior.size(); ++k) {
            full(interior[k]) = x(static_cast<Eigen::Index>(k), 0);
        }
    }
    check_harmonic_residual(g, full, f.size() ? f.cwiseAbs().maxCoeff() : 0.0,
                            opts);
    return full;
}

namespace {

struct SchurResult {
    Eigen::MatrixXd dtn;       // symmetrized
    Eigen::MatrixXd solve;     // X with L_II X = -L_IB, interior x boundary
    DtnDiagnostics diagnostics;
};

SchurResult schur_complement(const GraphWithBoundary& g,
                             const SolveOptions& opts) {
    const Partition p = make_partition(g);
    const auto& boundary = g.boundary_vertices();
    const Eigen::Index nb = static_cast<Eigen::Index>(boundary.size());

    // Boundary-boundary Laplacian block. Valid inputs never have edges
    // between boundary vertices, so only the degree diagonal remains.
    Eigen::MatrixXd l_bb = Eigen::MatrixXd::Zero(nb, nb);
    for (Eigen::Index k = 0; k < nb; ++k) {
        l_bb(k, k) = static_cast<double>(
            g.degree(boundary[static_cast<std::size_t>(k)]));
    }

    SchurResult out;
    if (g.interior_vertices().empty()) {
        out.dtn = l_bb;
        out.solve.resize(0, nb);
        return out;
    }
    const Eigen::MatrixXd l_ib = coupling_block(g, p);
    out.solve = interior_solve(g, p, l_ib, opts);
    out.solve *= -1.0;  // columns extend boundary basis vectors
    Eigen::MatrixXd raw = l_bb + l_ib.transpose() * out.solve;

    const double entry_scale = std::max(raw.cwiseAbs().maxCoeff(), 1e-300);
    out.diagnostics.max_asymmetry =
        (raw - raw.transpose()).cwiseAbs().maxCoeff() / entry_scale;
    out.dtn = 0.5 * (raw + raw.transpose());
    out.diagnostics.max_row_sum =
        out.dtn.rowwise().sum().cwiseAbs().maxCoeff();
    return out;
}

} // namespace

Eigen::MatrixXd dtn_matrix(const GraphWithBoundary& g,
                           DtnDiagnostics* diagnostics,
                           const SolveOptions& opts) {
    require_valid(g);
    SchurResult schur = schur_complement(g, opts);
    if (diagnostics) *diagnostics = schur.diagnostics;
    return schur.dtn;
}

double SteklovSpectrum::sigma1() const {
    if (eigenvalues.size() < 2) {
        throw SigmaOneUndefined(
            "sigma_1 needs at least two boundary vertices, have " +
            std::to_string(eigenvalues.size()));
    }
    return eigenvalues[1];
}

SteklovSpectrum spectrum(const GraphWithBoundary& g, const SolveOptions& opts) {
    require_valid(g);
    const SchurResult schur = schur_complement(g, opts);
    const Eigen::Index nb = schur.dtn.rows();

    const JacobiResult eig = jacobi_eigensolver(schur.dtn, opts.jacobi_tol);

    SteklovSpectrum out;
    out.diagnostics = schur.diagnostics;
    out.eigenvalues.assign(eig.eigenvalues.data(),
                           eig.eigenvalues.data() + nb);
    out.eigenvectors = eig.eigenvectors;

    const auto& boundary = g.boundary_vertices();
    const auto& interior = g.interior_vertices();
    out.extensions = Eigen::MatrixXd::Zero(g.vertex_count(), nb);
    for (Eigen::Index k = 0; k < nb; ++k) {
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            out.extensions(boundary[i], k) =
                out.eigenvectors(static_cast<Eigen::Index>(i), k);
        }
    }
    if (!interior.empty()) {
        const Eigen::MatrixXd ext = schur.solve * out.eigenvectors;
        for (Eigen::Index k = 0; k < nb; ++k) {
            for (std::size_t i = 0; i < interior.size(); ++i) {
                out.extensions(interior[i], k) =
                    ext(static_cast<Eigen::Index>(i), k);
            }
        }
    }

    for (Eigen::Index k = 0; k < nb; ++k) {
        const Eigen::VectorXd full = out.extensions.col(k);
        const Eigen::VectorXd lap = laplacian_apply(g, full);
        for (int v : interior) {
            out.interior_residual =
                std::max(out.interior_residual, std::abs(lap(v)));
        }
        const Eigen::VectorXd dn = normal_derivative(g, full);
        const Eigen::VectorXd defect =
            dn - out.eigenvalues[static_cast<std::size_t>(k)] *
                     out.eigenvectors.col(k);
        out.boundary_residual =
            std::max(out.boundary_residual, defect.cwiseAbs().maxCoeff());
    }

    // The bottom of the spectrum belongs to the constant vector; anything
    // materially below zero means the Schur complement went wrong.
    if (!out.eigenvalues.empty() && out.eigenvalues.front() < -1e-9) {
        throw InvariantViolation("Steklov spectrum has eigenvalue " +
                                 std::to_string(out.eigenvalues.front()) +
                                 " below zero");
    }
    return out;
}

double rayleigh(const GraphWithBoundary& g, const Eigen::VectorXd& v) {
    if (v.size() != g.vertex_count()) {
        throw InvalidInput("vector length does not match vertex count");
    }
    double energy = 0.0;
    for (const auto& [a, b] : g.edges()) {
        const double diff = v(a) - v(b);
        energy += diff * diff;
    }
    double mass = 0.0;
    for (int i : g.boundary_vertices()) {
        mass += v(i) * v(i);
    }
    if (mass == 0.0) {
        throw ZeroBoundaryNorm("vector vanishes on the boundary");
    }
    return energy / mass;
}

namespace {

/// Gaussian elimination with partial pivoting for A X = B; A is overwritten.
/// Independent of the Cholesky and CG routes used by the primary solver.
Eigen::MatrixXd gauss_solve(Eigen::MatrixXd a, Eigen::MatrixXd b) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (a(pivot, col) == 0.0) {
            throw InvariantViolation("singular interior system");
        }
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            b.row(pivot).swap(b.row(col));
        }
        for (Eigen::Index r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            if (factor == 0.0) continue;
            a.row(r).tail(n - col) -= factor * a.row(col).tail(n - col);
            b.row(r) -= factor * b.row(col);
        }
    }
    for (Eigen::Index col = n - 1; col >= 0; --col) {
        b.row(col) /= a(col, col);
        for (Eigen::Index r = 0; r < col; ++r) {
            b.row(r) -= a(r, col) * b.row(col);
        }
    }
    return b;
}

} // namespace

double minmax_oracle(const GraphWithBoundary& g, int j, int size_cap) {
    require_valid(g);
    if (g.vertex_count() > size_cap) {
        throw ResourceLimit("minmax_oracle limited to " +
                            std::to_string(size_cap) + " vertices, got " +
                            std::to_string(g.vertex_count()));
    }
    const auto& boundary = g.boundary_vertices();
    const auto& interior = g.interior_vertices();
    const Eigen::Index nb = static_cast<Eigen::Index>(boundary.size());
    const Eigen::Index ni = static_cast<Eigen::Index>(interior.size());
    if (j < 0 || j >= nb) {
        throw InvalidInput("eigenvalue index out of range");
    }

    const Partition p = make_partition(g);
    // Minimizing the edge energy over interior values of each boundary basis
    // vector: solve the full quadratic form's stationarity equations by
    // Gaussian elimination.
    Eigen::MatrixXd representatives =
        Eigen::MatrixXd::Zero(g.vertex_count(), nb);
    for (Eigen::Index k = 0; k < nb; ++k) {
        representatives(boundary[static_cast<std::size_t>(k)], k) = 1.0;
    }
    if (ni > 0) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ni, ni);
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(ni, nb);
        for (const auto& [u, v] : g.edges()) {
            const bool ub = g.is_boundary(u);
            const bool vb = g.is_boundary(v);
            const int pu = p.position[static_cast<std::size_t>(u)];
            const int pv = p.position[static_cast<std::size_t>(v)];
            if (!ub && !vb) {
                a(pu, pu) += 1.0;
                a(pv, pv) += 1.0;
                a(pu, pv) -= 1.0;
                a(pv, pu) -= 1.0;
            } else if (!ub && vb) {
                a(pu, pu) += 1.0;
                rhs(pu, pv) += 1.0;
            } else if (ub && !vb) {
                a(pv, pv) += 1.0;
                rhs(pv, pu) += 1.0;
            }
        }
        const Eigen::MatrixXd x = gauss_solve(std::move(a), std::move(rhs));
        for (Eigen::Index r = 0; r < ni; ++r) {
            representatives.row(interior[static_cast<std::size_t>(r)]) =
                x.row(r);
        }
    }

    // Reduced quadratic form on the boundary, assembled edge by edge.
    Eigen::MatrixXd form = Eigen::MatrixXd::Zero(nb, nb);
    for (const auto& [u, v] : g.edges()) {
        const Eigen::RowVectorXd diff =
            representatives.row(u) - representatives.row(v);
        form += diff.transpose() * diff;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        0.5 * (form + form.transpose()));
    if (solver.info() != Eigen::Success) {
        throw InvariantViolation("boundary form eigensolve failed");
    }
    return solver.eigenvalues()(j);
}

} // namespace steklov
