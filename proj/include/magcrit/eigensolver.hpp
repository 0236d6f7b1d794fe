#ifndef MAGCRIT_EIGENSOLVER_HPP
#define MAGCRIT_EIGENSOLVER_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <optional>

namespace magcrit {

struct SpectralResult {
    double mu = 0.0;
    Eigen::VectorXd eigenvector; // M-normalized, v^T M v = 1
    double residual = 0.0;       // ||K v - mu M v|| / ||K v||
    int iterations = 0;
    enum class Method { ShiftInvert, DenseOracle } method = Method::ShiftInvert;
};

/// Smallest eigenvalue of the symmetric pencil K v = mu M v (M SPD) by
/// shifted inverse iteration: factor K - sigma M with sparse LDL^T, verify
/// via the factor's inertia that sigma sits below the whole spectrum
/// (lowering it otherwise), then iterate v <- (K - sigma M)^{-1} M v until
/// the relative residual drops under tol. Falls back to diagonally
/// preconditioned CG when the factorization breaks down.
///
/// shift: initial sigma; pass nullopt to start from a crude Rayleigh
/// quotient bound. Throws SolverError on non-convergence, and
/// std::invalid_argument for mismatched dimensions or a non-SPD M.
SpectralResult smallest_eigenpair(const Eigen::SparseMatrix<double>& K,
                                  const Eigen::SparseMatrix<double>& M, double tol = 1e-10,
                                  std::optional<double> shift = std::nullopt);

/// Full generalized spectrum by reduction to a standard symmetric problem
/// through the Cholesky factor of M; sorted ascending. Verification oracle
/// for the iterative path; dimension capped at 4000.
Eigen::VectorXd dense_oracle(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M);

} // namespace magcrit

#endif
