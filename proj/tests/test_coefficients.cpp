#include "magcrit/coefficients.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace magcrit;

TEST_CASE("coefficients at the origin")
{
    const auto c = eval_coefficients(0.0);
    CHECK(c.a == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-14));
    CHECK(c.b == doctest::Approx(c.a).epsilon(1e-15));
    CHECK(c.a_prime == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(coefficient_a0() == doctest::Approx(1.2533141373).epsilon(1e-10));
}

TEST_CASE("coefficients at z = 1 against a high-precision quadrature value")
{
    const auto c = eval_coefficients(1.0);
    CHECK(c.a == doctest::Approx(0.655679542418798471).epsilon(1e-13));
    CHECK(c.b == doctest::Approx(c.a + 1.0).epsilon(1e-15));
}

TEST_CASE("identities on a dense z sample")
{
    std::mt19937 rng(12345u);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const double z = u(rng);
        const auto c = eval_coefficients(z);
        CHECK(std::abs(c.b - c.a - z) <= 1e-12 * c.b);
        CHECK(std::abs(c.a_prime - (z * c.a - 1.0)) <= 1e-12);
        CHECK(c.a * c.b >= 1.0 - 1e-13); // Jensen: E[1/r] E[r] >= 1
        CHECK(c.a > 0.0);
    }
}

TEST_CASE("finite differences of a and b match the closed-form derivatives")
{
    const double h = 1e-5;
    for (double z : {0.5, 2.0, 10.0, 40.0}) {
        const auto c = eval_coefficients(z);
        const double da =
            (eval_coefficients(z + h).a - eval_coefficients(z - h).a) / (2.0 * h);
        const double db =
            (eval_coefficients(z + h).b - eval_coefficients(z - h).b) / (2.0 * h);
        CHECK(da == doctest::Approx(z * c.a - 1.0).epsilon(1e-6).scale(1.0));
        CHECK(db == doctest::Approx(z * c.a).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("large-z asymptotics a(z) ~ 1/z")
{
    CHECK(std::abs(50.0 * eval_coefficients(50.0).a - 1.0) < 0.02);
    // frozen high-precision value of 50 a(50) - 1
    CHECK(50.0 * eval_coefficients(50.0).a - 1.0 ==
          doctest::Approx(-3.9952095732163e-4).epsilon(1e-9));
}

TEST_CASE("moments specialize and order in ell")
{
    CHECK(eval_landau_moment(0, 1.0, MomentKind::InverseRadius) ==
          doctest::Approx(eval_coefficients(1.0).a).epsilon(1e-11));
    CHECK(eval_landau_moment(0, 3.0, MomentKind::Radius) ==
          doctest::Approx(eval_coefficients(3.0).b).epsilon(1e-11));

    // exact value: int s^3 e^{-s^2/2} / (2 sqrt(s^2+1)) ds = 1/2
    CHECK(eval_landau_moment(1, 1.0, MomentKind::InverseRadius) ==
          doctest::Approx(0.5).epsilon(1e-11));
    CHECK(eval_landau_moment(1, 1.0, MomentKind::Radius) ==
          doctest::Approx(2.155679542418798471).epsilon(1e-11));

    for (double z : {0.1, 1.0, 5.0}) {
        for (int ell = 0; ell < 5; ++ell) {
            CHECK(eval_landau_moment(ell + 1, z, MomentKind::InverseRadius) <
                  eval_landau_moment(ell, z, MomentKind::InverseRadius));
            CHECK(eval_landau_moment(ell + 1, z, MomentKind::Radius) >
                  eval_landau_moment(ell, z, MomentKind::Radius));
        }
    }
}

TEST_CASE("erfcx basic values")
{
    CHECK(erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(erfcx(1.0) == doctest::Approx(0.42758357615580700442).epsilon(1e-13));
    // both branches around the series/asymptotic switch, against frozen
    // high-precision values
    CHECK(erfcx(6.4999) == doctest::Approx(0.08580696066967015).epsilon(1e-12));
    CHECK(erfcx(6.5001) == doctest::Approx(0.08580437957852321).epsilon(1e-12));
    CHECK(erfcx(10.0) == doctest::Approx(0.05614099274382259).epsilon(1e-12));
    CHECK(erfcx(25.0) == doctest::Approx(0.02254957243264136).epsilon(1e-12));
    // large-argument limit x erfcx(x) -> 1/sqrt(pi)
    CHECK(1e8 * erfcx(1e8) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("invalid inputs are rejected")
{
    CHECK_THROWS_AS(eval_coefficients(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(eval_coefficients(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(eval_landau_moment(21, 1.0, MomentKind::Radius), std::invalid_argument);
    CHECK_THROWS_AS(eval_landau_moment(-1, 1.0, MomentKind::Radius), std::invalid_argument);
}
