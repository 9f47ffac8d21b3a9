#pragma once

#include <Eigen/Dense>

#include "steklov/graph.hpp"

namespace steklov {

struct SolveOptions {
    /// Interior sizes above this use matrix-free conjugate gradient instead
    /// of a dense Cholesky factorization.
    int dense_cap = 4000;
    double jacobi_tol = 1e-12;
    double cg_tol = 1e-13;
    /// Allowed infinity-norm residual of the interior harmonicity equations,
    /// relative to max(1, ||boundary data||_inf).
    double residual_tol = 1e-10;
};

/// Graph Laplacian applied to a full vertex vector: (L v)(i) = sum over
/// edges ij of v(i) - v(j).
Eigen::VectorXd laplacian_apply(const GraphWithBoundary& g,
                                const Eigen::VectorXd& v);

/// Outward normal derivative on the boundary: for boundary vertex i,
/// sum over interior neighbors j of v(i) - v(j). Indexed in the order of
/// g.boundary_vertices().
Eigen::VectorXd normal_derivative(const GraphWithBoundary& g,
                                  const Eigen::VectorXd& v);

/// Unique extension of boundary data f that is harmonic at every interior
/// vertex. Returns a full vertex vector; boundary entries equal f.
Eigen::VectorXd harmonic_extension(const GraphWithBoundary& g,
                                   const Eigen::VectorXd& f,
                                   const SolveOptions& opts = {});

struct DtnDiagnostics {
    /// Largest |L(i,j) - L(j,i)| of the raw Schur complement, relative to
    /// its largest entry, before symmetrization.
    double max_asymmetry = 0.0;
    /// Largest |row sum|; exact zero in exact arithmetic.
    double max_row_sum = 0.0;
};

/// Dirichlet-to-Neumann matrix: the Schur complement of the interior block
/// of the Laplacian onto the boundary, symmetrized by averaging.
Eigen::MatrixXd dtn_matrix(const GraphWithBoundary& g,
                           DtnDiagnostics* diagnostics = nullptr,
                           const SolveOptions& opts = {});

struct SteklovSpectrum {
    /// Ascending: sigma_0 <= ... <= sigma_{b-1}.
    std::vector<double> eigenvalues;
    /// Columns are orthonormal boundary eigenvectors, matching eigenvalues.
    Eigen::MatrixXd eigenvectors;
    /// Column k is the harmonic extension of eigenvector k to all vertices.
    Eigen::MatrixXd extensions;
    DtnDiagnostics diagnostics;
    /// Largest harmonicity residual over all extensions.
    double interior_residual = 0.0;
    /// Largest |dn v - sigma v| entry over all eigenpairs.
    double boundary_residual = 0.0;

    /// First nonzero-index eigenvalue. Throws SigmaOneUndefined when the
    /// boundary has fewer than two vertices.
    double sigma1() const;
};

SteklovSpectrum spectrum(const GraphWithBoundary& g,
                         const SolveOptions& opts = {});

/// Edge energy over boundary mass: sum over edges of (v(i)-v(j))^2 divided
/// by the squared boundary norm. Throws ZeroBoundaryNorm when v vanishes on
/// the whole boundary.
double rayleigh(const GraphWithBoundary& g, const Eigen::VectorXd& v);

/// Variational eigenvalue by the min-max principle, computed along an
/// entirely separate route from spectrum(): the boundary quadratic form is
/// reduced by Gaussian elimination of the interior variables and handed to
/// a different eigensolver. Intended as a cross-check at small sizes.
double minmax_oracle(const GraphWithBoundary& g, int j, int size_cap = 64);

} // namespace steklov
