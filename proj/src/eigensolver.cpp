#include "magcrit/eigensolver.hpp"

#include "magcrit/errors.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <stdexcept>
#include <string>

namespace magcrit {

namespace {

int negative_pivots(const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>& ldlt)
{
    int n = 0;
    const auto& d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d[i] < 0.0) ++n;
    return n;
}

} // namespace

SpectralResult smallest_eigenpair(const Eigen::SparseMatrix<double>& K,
                                  const Eigen::SparseMatrix<double>& M, double tol,
                                  std::optional<double> shift)
{
    if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows())
        throw std::invalid_argument("smallest_eigenpair: dimension mismatch");
    if (K.rows() == 0) throw std::invalid_argument("smallest_eigenpair: empty pencil");
    if (!(tol > 0.0)) throw std::invalid_argument("smallest_eigenpair: tol must be positive");

    const Eigen::Index n = K.rows();
    {
        Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> mllt(M);
        if (mllt.info() != Eigen::Success)
            throw std::invalid_argument("smallest_eigenpair: M is not positive definite");
    }

    double sigma;
    if (shift) {
        sigma = *shift;
    } else {
        // crude seed: Rayleigh quotient of the all-ones vector, padded down
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
        const double rq = ones.dot(K * ones) / ones.dot(M * ones);
        sigma = rq - 0.5 * std::abs(rq) - 1.0;
    }

    // lower sigma until K - sigma M is positive definite (inertia 0), so the
    // whole spectrum sits above the shift and inverse iteration targets the
    // smallest eigenvalue
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    auto factor_below_spectrum = [&](double start, double step) -> bool {
        sigma = start;
        for (int attempt = 0; attempt < 60; ++attempt) {
            Eigen::SparseMatrix<double> A = K - sigma * M;
            ldlt.compute(A);
            if (ldlt.info() == Eigen::Success && negative_pivots(ldlt) == 0) return true;
            sigma -= step; // sigma above (or numerically on) part of the spectrum
            step *= 2.0;
        }
        return false;
    };
    bool factor_ok = factor_below_spectrum(sigma, std::max(std::abs(sigma), 1.0));

    SpectralResult out;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0);
    v += 1e-3 * Eigen::VectorXd::LinSpaced(n, -1.0, 1.0); // break symmetry
    v /= std::sqrt(v.dot(M * v));

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    Eigen::SparseMatrix<double> A_cg;
    if (!factor_ok) {
        A_cg = K - sigma * M;
        cg.setTolerance(1e-14);
        cg.setMaxIterations(20 * n);
        cg.compute(A_cg);
        if (cg.info() != Eigen::Success)
            throw SolverError("smallest_eigenpair: no usable shift found");
    }

    const int max_iter = 500;
    double mu = 0.0;
    double knorm = 1.0;
    Eigen::VectorXd kv, mv;
    for (int it = 1; it <= max_iter; ++it) {
        mv.noalias() = M * v;
        Eigen::VectorXd w = factor_ok ? ldlt.solve(mv).eval() : cg.solve(mv).eval();
        if (!w.allFinite())
            throw SolverError("smallest_eigenpair: inner solve produced non-finite values");
        const double scale = std::sqrt(w.dot(M * w));
        if (!(scale > 0.0)) throw SolverError("smallest_eigenpair: iteration collapsed");
        v = w / scale;
        kv.noalias() = K * v;
        mv.noalias() = M * v;
        mu = v.dot(kv);
        knorm = kv.norm();
        const double res = (kv - mu * mv).norm() / (knorm > 0.0 ? knorm : 1.0);
        out.iterations = it;
        if (res <= tol) {
            out.mu = mu;
            out.eigenvector = v;
            out.residual = res;
            out.method = SpectralResult::Method::ShiftInvert;
            return out;
        }
        // a distant shift converges slowly when the low end of the spectrum
        // is clustered; move it ever closer under the current Rayleigh
        // quotient, keeping it below the whole spectrum via the inertia check
        if (factor_ok && it % 25 == 0) {
            const double delta =
                std::max(1e-3 * (mu - sigma), 1e-13 * std::max(std::abs(mu), 1.0));
            if (!factor_below_spectrum(mu - delta, delta))
                throw SolverError("smallest_eigenpair: re-shift factorization failed");
        }
    }
    throw SolverError("smallest_eigenpair: no convergence within " + std::to_string(max_iter) +
                      " iterations (mu ~= " + std::to_string(mu) + ")");
}

Eigen::VectorXd dense_oracle(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M)
{
    if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows())
        throw std::invalid_argument("dense_oracle: dimension mismatch");
    if (K.rows() > 4000) throw std::invalid_argument("dense_oracle: dimension exceeds 4000");
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("dense_oracle: M Cholesky factorization failed");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("dense_oracle: eigensolver failed");
    return es.eigenvalues(); // ascending
}

} // namespace magcrit
