#include "magcrit/critical_field.hpp"

#include "magcrit/coefficients.hpp"
#include "magcrit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magcrit {

std::string to_string(FieldSource s)
{
    switch (s) {
    case FieldSource::Landau: return "landau";
    case FieldSource::Unconstrained: return "unconstrained";
    case FieldSource::LowerBound: return "lower_bound";
    case FieldSource::UpperBound: return "upper_bound";
    }
    return "?";
}

double critical_field_from_mu(double mu)
{
    if (!(mu < 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("critical_field_from_mu: mu must be negative and finite "
                                    "(nonnegative mu signals an upstream failure)");
    return 4.0 / (mu * mu);
}

double to_tesla_log10(double B)
{
    if (!(B > 0.0) || !std::isfinite(B))
        throw std::invalid_argument("to_tesla_log10: B must be positive");
    return std::log10(kTeslaFactor * B);
}

CriticalFieldRecord make_record(double nu, double mu, FieldSource source)
{
    CriticalFieldRecord r;
    r.nu = nu;
    r.Z = nu * kAlphaInverse;
    r.mu = mu;
    r.B_dimensionless = critical_field_from_mu(mu);
    r.log10_tesla = to_tesla_log10(r.B_dimensionless);
    r.source = source;
    return r;
}

FemSettings default_fem_settings(double nu, double mu_landau)
{
    FemSettings s;
    s.n_s = 96;
    s.n_z = 192;
    s.L_s = 20.0;
    // axial decay goes like exp(-2 sqrt(nu |mu| z)); keep the truncation
    // bias well under the discretization error
    s.L_z = std::max(30.0, 5.5 / std::max(nu * std::abs(mu_landau), 1e-6));
    // the axis cell follows the strength of the Coulomb singularity; near
    // nu = 1 the minimizer concentrates at the origin and the discrete
    // minimum keeps drifting under axis refinement, so the default stays
    // deliberately coarse there
    s.h_min = (nu >= 0.975) ? 3e-2
                            : std::clamp(std::pow(10.0, -2.0 - 4.0 * (nu - 0.5)), 1e-5, 3e-2);
    s.shift = std::nullopt;
    return s;
}

UnconstrainedSolveResult solve_unconstrained(double nu, const std::optional<FemSettings>& settings)
{
    SturmLiouvilleProblem pb{nu, Variant::Main, 170.0};
    const ShootingResult landau = find_ground_eigenvalue(pb, 1e-10);

    const FemSettings cfg = settings ? *settings : default_fem_settings(nu, landau.mu);
    const GradedGrid2D grid = build_grid(cfg.n_s, cfg.n_z, cfg.L_s, cfg.L_z, cfg.h_min);
    const ReducedQuadraticForm form{nu, 1.0};
    AssembledPencil pencil = assemble(form, grid);

    double shift;
    if (cfg.shift) {
        shift = *cfg.shift;
    } else {
        // interpolate the 1D profile onto the grid; its Rayleigh quotient
        // upper-bounds the discrete minimum
        const auto& tr = landau.trace;
        auto profile = [&tr](double z) {
            const auto it = std::lower_bound(tr.z.begin(), tr.z.end(), z);
            if (it == tr.z.end()) return 0.0;
            const std::size_t i = static_cast<std::size_t>(it - tr.z.begin());
            if (i == 0) return tr.f.front();
            const double t = (z - tr.z[i - 1]) / (tr.z[i] - tr.z[i - 1]);
            return (1.0 - t) * tr.f[i - 1] + t * tr.f[i];
        };
        const Eigen::VectorXd v = interpolate_landau_trial(pencil.dofs, grid, profile);
        const double rq = rayleigh_quotient(pencil, v);
        shift = rq - 0.6 * std::abs(rq) - 1e-3;
    }

    UnconstrainedSolveResult out{smallest_eigenpair(pencil.K, pencil.M, cfg.eig_tol, shift),
                                 grid, pencil.dofs, cfg, landau.mu};
    return out;
}

std::vector<TableRow> build_table(const std::vector<double>& nu_list, FieldSource source,
                                  const TableOptions& options)
{
    if (nu_list.empty()) throw std::invalid_argument("build_table: empty nu list");
    for (double nu : nu_list)
        if (!(nu > 0.0) || !(nu <= 1.0))
            throw std::invalid_argument("build_table: every nu must lie in (0, 1]");

    std::vector<TableRow> rows;
    rows.reserve(nu_list.size());
    for (double nu : nu_list) {
        TableRow row;
        try {
            double mu;
            if (source == FieldSource::Unconstrained) {
                mu = solve_unconstrained(nu, options.fem).spectral.mu;
            } else {
                const Variant variant = source == FieldSource::Landau ? Variant::Main
                                        : source == FieldSource::LowerBound ? Variant::Lower
                                                                            : Variant::Upper;
                SturmLiouvilleProblem pb{nu, variant, options.z_max};
                mu = find_ground_eigenvalue(pb, options.shooting_tol).mu;
            }
            row.record = make_record(nu, mu, source);
            row.ok = true;
        } catch (const std::exception& e) {
            row.record.nu = nu;
            row.record.source = source;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> table1_nu_values()
{
    return {56.0 / kAlphaInverse, 0.5, 82.0 / kAlphaInverse, 92.0 / kAlphaInverse, 0.9, 1.0};
}

std::vector<double> table2_nu_values()
{
    std::vector<double> v;
    for (int i = 0; i <= 10; ++i) v.push_back(0.50 + 0.05 * i);
    return v;
}

std::vector<RatioPoint> comparison_ratio(const std::vector<double>& nu_list,
                                         const TableOptions& options)
{
    std::vector<RatioPoint> out;
    out.reserve(nu_list.size());
    for (double nu : nu_list) {
        RatioPoint p{nu, 0.0, false, {}};
        try {
            SturmLiouvilleProblem pb{nu, Variant::Main, options.z_max};
            const double mu_l = find_ground_eigenvalue(pb, options.shooting_tol).mu;
            const double mu = solve_unconstrained(nu, options.fem).spectral.mu;
            p.ratio = critical_field_from_mu(mu_l) / critical_field_from_mu(mu);
            p.ok = true;
        } catch (const std::exception& e) {
            p.error = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace magcrit
