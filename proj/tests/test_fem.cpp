#include "magcrit/fem.hpp"

#include "magcrit/coefficients.hpp"
#include "magcrit/eigensolver.hpp"
#include "magcrit/shooting.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

using namespace magcrit;

namespace {

TrialField gaussian_trial()
{
    auto env = [](double s, double z) { return std::exp(-(s * s + z * z) / 2.0); };
    TrialField t;
    t.f = env;
    t.g = [env](double s, double z) { return 0.3 * s * env(s, z); };
    t.df_ds = [env](double s, double z) { return -s * env(s, z); };
    t.df_dz = [env](double s, double z) { return -z * env(s, z); };
    t.dg_ds = [env](double s, double z) { return 0.3 * (1.0 - s * s) * env(s, z); };
    t.dg_dz = [env](double s, double z) { return -0.3 * s * z * env(s, z); };
    return t;
}

} // namespace

TEST_CASE("weight identity w_K * w_V = 1")
{
    const ReducedQuadraticForm form{0.8, 1.0};
    for (double s : {0.1, 1.0, 7.0})
        for (double z : {-3.0, 0.5, 9.0})
            CHECK(form.kinetic_weight(s, z) * form.potential_weight(s, z) ==
                  doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("assembled matrices are symmetric and correctly dimensioned")
{
    const GradedGrid2D grid = build_grid(12, 16, 8.0, 8.0, 1e-2);
    const AssembledPencil p = assemble(ReducedQuadraticForm{0.9, 1.0}, grid);

    int expected = 0;
    for (int idx : p.dofs.f_index)
        if (idx >= 0) ++expected;
    for (int idx : p.dofs.g_index)
        if (idx >= 0) ++expected;
    CHECK(p.K.rows() == expected);
    CHECK(p.M.rows() == expected);
    CHECK(p.dofs.n_dofs == expected);

    const Eigen::MatrixXd K(p.K), M(p.M);
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * K.cwiseAbs().maxCoeff());
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * M.cwiseAbs().maxCoeff());
    // M is positive definite
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("zero trial evaluates to zero energy and norm")
{
    auto zero = [](double, double) { return 0.0; };
    TrialField t{zero, zero, zero, zero, zero, zero};
    const FormValue v = evaluate_form_on_trial(ReducedQuadraticForm{0.8, 1.0}, t);
    CHECK(v.energy == 0.0);
    CHECK(v.norm == 0.0);
}

TEST_CASE("Landau trial reduces the 2D form to the 1D functional")
{
    // f = F(z) e^{-s^2/4}, g = 0 at B = 1 gives
    //   E = 4 pi [ (1/nu) int_0^inf b F'^2 dz - nu int_0^inf a F^2 dz ],
    //   norm = 2 pi int F^2 dz
    const double nu = 0.9;
    auto F = [](double z) { return std::exp(-0.3 * z * z); };
    auto Fp = [](double z) { return -0.6 * z * std::exp(-0.3 * z * z); };

    TrialField t;
    t.f = [F](double s, double z) { return F(z) * std::exp(-s * s / 4.0); };
    t.g = [](double, double) { return 0.0; };
    t.df_ds = [F](double s, double z) { return -0.5 * s * F(z) * std::exp(-s * s / 4.0); };
    t.df_dz = [Fp](double s, double z) { return Fp(z) * std::exp(-s * s / 4.0); };
    t.dg_ds = [](double, double) { return 0.0; };
    t.dg_dz = [](double, double) { return 0.0; };

    using boost::math::quadrature::gauss_kronrod;
    const double kin = gauss_kronrod<double, 31>::integrate(
        [&](double z) { return eval_coefficients(z).b * Fp(z) * Fp(z); }, 0.0, 30.0, 10,
        1e-13);
    const double pot = gauss_kronrod<double, 31>::integrate(
        [&](double z) { return eval_coefficients(z).a * F(z) * F(z); }, 0.0, 30.0, 10, 1e-13);
    const double norm1d = gauss_kronrod<double, 31>::integrate(
        [&](double z) { return F(z) * F(z); }, 0.0, 30.0, 10, 1e-13);

    const FormValue v = evaluate_form_on_trial(ReducedQuadraticForm{nu, 1.0}, t);
    CHECK(v.energy ==
          doctest::Approx(4.0 * M_PI * (kin / nu - nu * pot)).epsilon(1e-8));
    CHECK(v.norm == doctest::Approx(4.0 * M_PI * norm1d).epsilon(1e-8));
}

TEST_CASE("field rescaling multiplies the energy by sqrt(B) and keeps the norm")
{
    const double nu = 0.6, B = 4.0;
    const TrialField base = gaussian_trial();
    const double amp = std::pow(B, 0.75), c = std::sqrt(B);
    TrialField scaled;
    scaled.f = [&, amp, c](double s, double z) { return amp * base.f(c * s, c * z); };
    scaled.g = [&, amp, c](double s, double z) { return amp * base.g(c * s, c * z); };
    scaled.df_ds = [&, amp, c](double s, double z) { return amp * c * base.df_ds(c * s, c * z); };
    scaled.df_dz = [&, amp, c](double s, double z) { return amp * c * base.df_dz(c * s, c * z); };
    scaled.dg_ds = [&, amp, c](double s, double z) { return amp * c * base.dg_ds(c * s, c * z); };
    scaled.dg_dz = [&, amp, c](double s, double z) { return amp * c * base.dg_dz(c * s, c * z); };

    const FormValue v1 = evaluate_form_on_trial(ReducedQuadraticForm{nu, 1.0}, base);
    const FormValue vB = evaluate_form_on_trial(ReducedQuadraticForm{nu, B}, scaled);
    CHECK(vB.energy == doctest::Approx(std::sqrt(B) * v1.energy).epsilon(1e-8));
    CHECK(vB.norm == doctest::Approx(v1.norm).epsilon(1e-8));
}

TEST_CASE("interpolated Landau trial brackets the discrete minimum")
{
    const double nu = 0.9;
    const ShootingResult landau = find_ground_eigenvalue({nu, Variant::Main, 170.0}, 1e-10);
    const GradedGrid2D grid = build_grid(32, 64, 15.0, 15.0, 1e-2);
    const AssembledPencil p = assemble(ReducedQuadraticForm{nu, 1.0}, grid);

    const auto& tr = landau.trace;
    auto profile = [&tr](double z) {
        auto it = std::lower_bound(tr.z.begin(), tr.z.end(), z);
        if (it == tr.z.end()) return 0.0;
        const std::size_t i = static_cast<std::size_t>(it - tr.z.begin());
        if (i == 0) return tr.f.front();
        const double t = (z - tr.z[i - 1]) / (tr.z[i] - tr.z[i - 1]);
        return (1.0 - t) * tr.f[i - 1] + t * tr.f[i];
    };
    const Eigen::VectorXd v = interpolate_landau_trial(p.dofs, grid, profile);
    const double rq = rayleigh_quotient(p, v);
    const double mu_h = smallest_eigenpair(p.K, p.M, 1e-9, rq - std::abs(rq) - 1.0).mu;

    CHECK(rq >= mu_h - 1e-12);          // Rayleigh quotient bounds the minimum
    CHECK(rq <= landau.mu + 0.05);      // and sits near the 1D value it interpolates
    CHECK(rq >= landau.mu - 0.05);
    CHECK(mu_h < landau.mu + 1e-6);     // wider class reaches at least as low
}

TEST_CASE("density grid of the zero vector is the constant -4")
{
    const GradedGrid2D grid = build_grid(10, 12, 5.0, 5.0, 1e-2);
    const AssembledPencil p = assemble(ReducedQuadraticForm{0.9, 1.0}, grid);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(p.dofs.n_dofs);
    for (double v : density_grid(zero, p.dofs, grid))
        CHECK(v == doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("minimizer density peaks at the node nearest the origin")
{
    const double nu = 0.9;
    const GradedGrid2D grid = build_grid(24, 48, 15.0, 15.0, 1e-2);
    const AssembledPencil p = assemble(ReducedQuadraticForm{nu, 1.0}, grid);
    const SpectralResult res = smallest_eigenpair(p.K, p.M, 1e-9, -1.0);
    CHECK(res.eigenvector.dot(Eigen::VectorXd(p.M * res.eigenvector)) ==
          doctest::Approx(1.0).epsilon(1e-10)); // M-normalized
    const auto field = density_grid(res.eigenvector, p.dofs, grid);
    int peak = 0;
    for (std::size_t k = 1; k < field.size(); ++k)
        if (field[k] > field[peak]) peak = static_cast<int>(k);
    const int j_origin = p.dofs.n_z_nodes / 2; // z = 0 plane
    CHECK(peak == p.dofs.node(0, j_origin));
}

TEST_CASE("assembly rejects B != 1 and invalid forms")
{
    const GradedGrid2D grid = build_grid(8, 8, 5.0, 5.0, 1e-2);
    CHECK_THROWS_AS(assemble(ReducedQuadraticForm{0.9, 2.0}, grid), std::invalid_argument);
    CHECK_THROWS_AS(assemble(ReducedQuadraticForm{0.0, 1.0}, grid), std::invalid_argument);
}
