#ifndef MAGCRIT_SHOOTING_HPP
#define MAGCRIT_SHOOTING_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace magcrit {

/// Coefficient pair (p, q) of the reduced eigenvalue ODE
///   f'' + (p'/p) f' + (nu/p)(lambda + nu q) f = 0,  f(0)=1, f'(0)=0.
/// Main is the Landau-channel problem (p, q) = (b, a); Lower and Upper are
/// the comparison problems (1/a, a) and (b, 1/b) bracketing it.
enum class Variant { Main, Lower, Upper };

struct SturmLiouvilleProblem {
    double nu;                 // coupling constant, in (0, 1]
    Variant variant = Variant::Main;
    double z_max = 170.0;      // truncation radius
    double rtol = 1e-10;       // integrator relative tolerance
    double atol = 1e-12;       // integrator absolute tolerance

    void validate() const;     // throws std::invalid_argument
};

struct OdeTrace {
    std::vector<double> z, f, fprime;
};

struct ProfileResult {
    double f_end = 0.0;
    double fprime_end = 0.0;
    double log_scale = 0.0;    // accumulated renormalization, actual f = f_end * e^{log_scale}
    bool renormalized = false;
    std::size_t steps = 0;
    OdeTrace trace;            // uniformly sampled, on the renormalized scale
};

/// Integrate the initial value problem from 0 to z_max with an adaptive
/// Dormand-Prince 5(4) scheme. trace_points > 0 requests that many
/// uniformly spaced samples. Throws SolverError on step underflow.
ProfileResult integrate_profile(const SturmLiouvilleProblem& problem, double lambda,
                                std::size_t trace_points = 0);

/// Endpoint mismatch g(lambda, z_max) = f(z_max)^2 + f'(z_max)^2.
/// May overflow to +inf far from an eigenvalue; use log1p_mismatch for
/// scan output.
double mismatch(const SturmLiouvilleProblem& problem, double lambda);

/// log(1 + g(lambda, z_max)), computed without overflow.
double log1p_mismatch(const SturmLiouvilleProblem& problem, double lambda);

struct ShootingResult {
    double mu = 0.0;            // converged eigenvalue
    double mismatch = 0.0;      // g at mu
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int evaluations = 0;        // ODE solves spent
    OdeTrace trace;             // profile at mu
};

/// Locate the first (lowest-lambda) minimum of lambda -> g(lambda, z_max)
/// on (-nu a(0), 0): coarse upward scan until g turns from decreasing to
/// increasing, then golden-section shrink of the bracket to width <= tol.
ShootingResult find_ground_eigenvalue(const SturmLiouvilleProblem& problem,
                                      double tol = 1e-11);

/// Same, but grows z_max until the eigenvalue stabilizes. Needed for small
/// nu where the bound state decays on scales far beyond the default
/// truncation radius.
ShootingResult find_ground_eigenvalue_converged(double nu, Variant variant,
                                                double tol = 1e-11,
                                                double z_max_start = 170.0);

struct AsymptoticPoint {
    double nu;
    double mu;                 // mu_L(nu) for the requested variant
    double product;            // nu * log|mu|
    bool ok;
    std::string error;
};

/// Diagnostic products nu*log|mu_L(nu)| for a descending nu list, computed
/// with z_max grown to convergence per entry. Failed entries carry their
/// error message instead of aborting the batch.
std::vector<AsymptoticPoint> asymptotic_diagnostic(const std::vector<double>& nu_list,
                                                   Variant variant = Variant::Main);

} // namespace magcrit

#endif
