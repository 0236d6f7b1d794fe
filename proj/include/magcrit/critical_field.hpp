#ifndef MAGCRIT_CRITICAL_FIELD_HPP
#define MAGCRIT_CRITICAL_FIELD_HPP

#include "magcrit/eigensolver.hpp"
#include "magcrit/fem.hpp"
#include "magcrit/shooting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace magcrit {

/// alpha^-1 fixed to the value the reference tables pair with Z = 137.037
/// at nu = 1, not the CODATA value.
inline constexpr double kAlphaInverse = 137.037;

/// m^2 c^2 / (e hbar), dimensionless field -> Tesla.
inline constexpr double kTeslaFactor = 4.414e9;

enum class FieldSource { Landau, Unconstrained, LowerBound, UpperBound };

std::string to_string(FieldSource s);

struct CriticalFieldRecord {
    double nu = 0.0;
    double Z = 0.0;              // nu * alpha^-1, emitted at full precision
    double mu = 0.0;             // negative
    double B_dimensionless = 0.0; // 4 / mu^2
    double log10_tesla = 0.0;    // log10(kTeslaFactor * B)
    FieldSource source = FieldSource::Landau;
};

/// B = 4 / mu^2. Throws std::invalid_argument for mu >= 0 (a nonnegative
/// eigenvalue signals an upstream failure).
double critical_field_from_mu(double mu);

/// log10(4.414e9 * B). Throws for B <= 0.
double to_tesla_log10(double B_dimensionless);

CriticalFieldRecord make_record(double nu, double mu, FieldSource source);

/// Production FEM settings for one nu, tuned so the default grids land on
/// the reference resolution. mu_landau feeds the domain-size and solver
/// shift heuristics; pass the 1D result for the same nu.
struct FemSettings {
    int n_s = 96;
    int n_z = 192;
    double L_s = 20.0;
    double L_z = 30.0;
    double h_min = 1e-4;
    std::optional<double> shift; // nullopt: seed from the interpolated Landau trial
    double eig_tol = 1e-10;
};

FemSettings default_fem_settings(double nu, double mu_landau);

struct UnconstrainedSolveResult {
    SpectralResult spectral;
    GradedGrid2D grid;
    DofMap dofs;
    FemSettings settings;
    double mu_landau; // 1D value used for seeding
};

/// Full pipeline for one nu: 1D solve for the seed, grid build, assembly,
/// smallest eigenpair. Pass settings to replace the per-nu defaults
/// entirely (start from default_fem_settings and adjust).
UnconstrainedSolveResult solve_unconstrained(double nu,
                                             const std::optional<FemSettings>& settings =
                                                 std::nullopt);

struct TableRow {
    CriticalFieldRecord record;
    bool ok = false;
    std::string error; // per-row failure, row excluded from numeric output
};

struct TableOptions {
    double z_max = 170.0;     // landau / bound sources
    double shooting_tol = 1e-11;
    std::optional<FemSettings> fem; // unconstrained source
};

std::vector<TableRow> build_table(const std::vector<double>& nu_list, FieldSource source,
                                  const TableOptions& options = {});

/// nu values behind the two reference tables. The Landau table couples
/// integer nuclear charges (Z = 56, 82, 92) exactly, so those entries are
/// Z / alpha^-1 rather than their 3-decimal roundings.
std::vector<double> table1_nu_values();
std::vector<double> table2_nu_values();

struct RatioPoint {
    double nu;
    double ratio; // B_L(nu) / B(nu)
    bool ok;
    std::string error;
};

/// Landau-to-unconstrained critical field ratio per nu.
std::vector<RatioPoint> comparison_ratio(const std::vector<double>& nu_list,
                                         const TableOptions& options = {});

} // namespace magcrit

#endif
