#ifndef MAGCRIT_FEM_HPP
#define MAGCRIT_FEM_HPP

#include "magcrit/grid.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <vector>

namespace magcrit {

/// Weighted quadratic form on the (s, z) half-plane obtained from the 3D
/// energy by cylindrical reduction to the two real fields (f, g), where the
/// spinor is phi = (f(s,z), g(s,z) e^{i theta}):
///   E = 2 pi  ii { w_K |Q|^2 - w_V (f^2 + g^2) } s ds dz,
///   |Q|^2 = (d_z f + d_s g + g/s - (B s/2) g)^2 + (d_s f + (B s/2) f - d_z g)^2,
/// with kinetic weight w_K = sqrt(s^2+z^2)/nu and potential weight
/// w_V = nu/sqrt(s^2+z^2). The L^2 norm is 2 pi ii (f^2+g^2) s ds dz.
struct ReducedQuadraticForm {
    double nu;
    double B = 1.0;

    double kinetic_weight(double s, double z) const;
    double potential_weight(double s, double z) const;
    void validate() const;
};

/// Node-to-matrix-index map with boundary constraints applied:
/// Dirichlet zero at s = L_s and z = +-L_z for both fields, g = 0 on the
/// axis s = 0, f natural on the axis. Free f and g indices interleave per
/// node. -1 marks a constrained node.
struct DofMap {
    int n_s_nodes = 0;
    int n_z_nodes = 0;
    std::vector<int> f_index; // n_s_nodes * n_z_nodes, row-major in (i_s, j_z)
    std::vector<int> g_index;
    int n_dofs = 0;

    int node(int i_s, int j_z) const { return i_s * n_z_nodes + j_z; }
};

using SparseMat = Eigen::SparseMatrix<double>;

struct AssembledPencil {
    SparseMat K; // energy form (indefinite)
    SparseMat M; // s-weighted L^2 form (SPD)
    DofMap dofs;
};

/// Galerkin matrices of the reduced form over nodal bilinear elements on
/// the graded grid, 4x4 tensor Gauss quadrature per cell. Requires B = 1
/// (the critical-field problem is solved at unit field and rescaled).
AssembledPencil assemble(const ReducedQuadraticForm& form, const GradedGrid2D& grid);

/// Analytic two-field trial with its partial derivatives.
struct TrialField {
    std::function<double(double, double)> f, g;
    std::function<double(double, double)> df_ds, df_dz, dg_ds, dg_dz;
};

struct FormValue {
    double energy;
    double norm; // squared L^2 norm
};

/// High-order tensor quadrature of the reduced form on an analytic trial:
/// geometric Gauss-Legendre panels concentrated at the origin over
/// [0, s_extent] x [-z_extent, z_extent].
FormValue evaluate_form_on_trial(const ReducedQuadraticForm& form, const TrialField& trial,
                                 double s_extent = 30.0, double z_extent = 30.0,
                                 int panels_per_axis = 60, int points_per_panel = 10);

/// Nodal coefficient vector interpolating the Landau-channel trial
/// f = F(z) e^{-B s^2/4}, g = 0 onto the grid's free DOFs. F is any axial
/// profile (typically the shooting solution); constrained nodes are skipped.
Eigen::VectorXd interpolate_landau_trial(const DofMap& dofs, const GradedGrid2D& grid,
                                         const std::function<double(double)>& axial_profile,
                                         double B = 1.0);

/// Rayleigh quotient v^T K v / v^T M v of the pencil.
double rayleigh_quotient(const AssembledPencil& pencil, const Eigen::VectorXd& v);

/// Density field log10(1e-4 + |phi|^4) for every grid node,
/// |phi|^2 = f^2 + g^2 taken from an M-normalized eigenvector (constrained
/// nodes contribute their boundary value 0). Row-major in (i_s, j_z).
std::vector<double> density_grid(const Eigen::VectorXd& eigenvector, const DofMap& dofs,
                                 const GradedGrid2D& grid);

} // namespace magcrit

#endif
