#include "magcrit/coefficients.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace magcrit {

double erfcx(double x)
{
    if (x < 6.5) {
        // x^2 <= 42.25, exp stays well inside range
        return std::exp(x * x) * std::erfc(x);
    }
    // asymptotic series 1/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!!/(2x^2)^k,
    // truncated at the smallest term (~e^{-x^2} < eps here)
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = -term * (2 * k - 1) * inv2x2;
        if (std::abs(next) >= std::abs(term)) break; // series turned divergent
        term = next;
        sum += term;
        if (std::abs(term) < 1e-18 * sum) break;
    }
    return sum / (x * std::sqrt(M_PI));
}

CoefficientSample eval_coefficients(double z)
{
    if (!std::isfinite(z) || z < 0.0)
        throw std::invalid_argument("eval_coefficients: z must be finite and >= 0, got " +
                                    std::to_string(z));
    const double a = std::sqrt(M_PI / 2.0) * erfcx(z / std::sqrt(2.0));
    return CoefficientSample{z, a, a + z, z * a - 1.0};
}

double eval_landau_moment(int ell, double z, MomentKind kind)
{
    if (ell < 0 || ell > 20)
        throw std::invalid_argument("eval_landau_moment: ell must be in [0, 20], got " +
                                    std::to_string(ell));
    if (!std::isfinite(z) || z < 0.0)
        throw std::invalid_argument("eval_landau_moment: z must be finite and >= 0");

    // log-normalization keeps the weight scale-free for moderate ell
    const double log_norm = ell * std::log(2.0) + std::lgamma(ell + 1.0);
    auto integrand = [&](double s) {
        const double log_w = (2 * ell + 1) * std::log(s) - 0.5 * s * s - log_norm;
        const double r = std::hypot(s, z);
        const double w = std::exp(log_w);
        return kind == MomentKind::InverseRadius ? w / r : w * r;
    };
    // weight peaks at s = sqrt(2 ell + 1) <= 6.4; below e^{-250} past s = 25
    using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    return quad::integrate(integrand, 0.0, 25.0, 12, 1e-12);
}

} // namespace magcrit
