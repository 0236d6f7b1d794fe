#ifndef MAGCRIT_COEFFICIENTS_HPP
#define MAGCRIT_COEFFICIENTS_HPP

#include <cmath>

namespace magcrit {

/// Scaled complementary error function e^{x^2} erfc(x), overflow-free for
/// large x. Accurate to a few ulp on [0, inf).
double erfcx(double x);

/// Sturm-Liouville coefficient data at an axial coordinate z:
///   a(z) = int_0^inf s e^{-s^2/2} / sqrt(s^2+z^2) ds
///   b(z) = a(z) + z
///   a'(z) = z a(z) - 1
struct CoefficientSample {
    double z;
    double a;
    double b;
    double a_prime;
};

/// Value of a at z = 0, sqrt(pi/2). Upper bound of a on [0, inf).
inline double coefficient_a0() { return std::sqrt(M_PI / 2.0); }

/// Evaluate a, b, a' at z >= 0. Throws std::invalid_argument for negative
/// or non-finite z.
CoefficientSample eval_coefficients(double z);

enum class MomentKind { InverseRadius, Radius };

/// Generalized transverse moments of the level-ell channel,
///   a_ell(z) = E[1/sqrt(s^2+z^2)]  (kind = InverseRadius)
///   b_ell(z) = E[  sqrt(s^2+z^2)]  (kind = Radius)
/// under the normalized density s^{2ell+1} e^{-s^2/2} / (2^ell ell!) on
/// (0, inf). ell = 0 specializes to a(z), b(z). Throws for ell > 20.
double eval_landau_moment(int ell, double z, MomentKind kind);

} // namespace magcrit

#endif
