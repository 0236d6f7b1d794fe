#include "magcrit/eigensolver.hpp"

#include "magcrit/fem.hpp"
#include "magcrit/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace magcrit;

namespace {

Eigen::SparseMatrix<double> sparse_identity(int n)
{
    Eigen::SparseMatrix<double> m(n, n);
    m.setIdentity();
    return m;
}

} // namespace

TEST_CASE("identity pencil has eigenvalue 1")
{
    const auto I = sparse_identity(10);
    const SpectralResult res = smallest_eigenpair(I, I, 1e-12);
    CHECK(res.mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.residual <= 1e-12);
}

TEST_CASE("dense oracle on scalar and diagonal pencils")
{
    Eigen::MatrixXd K1(1, 1), M1(1, 1);
    K1 << 2.0;
    M1 << 4.0;
    const Eigen::VectorXd s1 = dense_oracle(K1, M1);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == doctest::Approx(0.5).epsilon(1e-14));

    Eigen::MatrixXd K2 = Eigen::MatrixXd::Zero(2, 2);
    K2(0, 0) = 1.0;
    K2(1, 1) = -3.0;
    const Eigen::VectorXd s2 = dense_oracle(K2, Eigen::MatrixXd::Identity(2, 2));
    REQUIRE(s2.size() == 2);
    CHECK(s2[0] == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(s2[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("iterative path matches the dense oracle on random pencils")
{
    std::mt19937 rng(424242u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 50;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd A(n, n), R(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                A(i, j) = gauss(rng);
                R(i, j) = gauss(rng);
            }
        const Eigen::MatrixXd K = 0.5 * (A + A.transpose());
        const Eigen::MatrixXd M = R * R.transpose() + n * Eigen::MatrixXd::Identity(n, n);
        const double mu_it = smallest_eigenpair(K.sparseView(), M.sparseView(), 1e-12).mu;
        const double mu_ref = dense_oracle(K, M)[0];
        CHECK(std::abs(mu_it - mu_ref) <= 1e-10 * (1.0 + std::abs(mu_ref)));
    }
}

TEST_CASE("iterative path matches the dense oracle on a coarse assembled pencil")
{
    const GradedGrid2D grid = build_grid(8, 8, 8.0, 8.0, 5e-2);
    const AssembledPencil p = assemble(ReducedQuadraticForm{0.9, 1.0}, grid);
    const double mu_it = smallest_eigenpair(p.K, p.M, 1e-12).mu;
    const double mu_ref = dense_oracle(Eigen::MatrixXd(p.K), Eigen::MatrixXd(p.M))[0];
    CHECK(std::abs(mu_it - mu_ref) <= 1e-10 * (1.0 + std::abs(mu_ref)));
}

TEST_CASE("result is shift-independent within the admissible range")
{
    const GradedGrid2D grid = build_grid(12, 16, 10.0, 10.0, 1e-2);
    const AssembledPencil p = assemble(ReducedQuadraticForm{0.7, 1.0}, grid);
    const double mu_auto = smallest_eigenpair(p.K, p.M, 1e-11).mu;
    for (double sigma : {-0.5, -1.0, -5.0}) {
        const double mu = smallest_eigenpair(p.K, p.M, 1e-11, sigma).mu;
        CHECK(std::abs(mu - mu_auto) <= 1e-9);
    }
}

TEST_CASE("invalid pencils are rejected")
{
    const auto I3 = sparse_identity(3);
    const auto I4 = sparse_identity(4);
    CHECK_THROWS_AS(smallest_eigenpair(I3, I4), std::invalid_argument);
    CHECK_THROWS_AS(smallest_eigenpair(I3, I3, -1.0), std::invalid_argument);

    Eigen::SparseMatrix<double> Mneg = -1.0 * sparse_identity(3);
    CHECK_THROWS_AS(smallest_eigenpair(I3, Mneg), std::invalid_argument);

    CHECK_THROWS_AS(dense_oracle(Eigen::MatrixXd::Identity(2, 2),
                                 -Eigen::MatrixXd::Identity(2, 2)),
                    std::invalid_argument);
}
