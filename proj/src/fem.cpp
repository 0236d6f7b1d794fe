#include "magcrit/fem.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <stdexcept>

namespace magcrit {

double ReducedQuadraticForm::kinetic_weight(double s, double z) const
{
    return std::hypot(s, z) / nu;
}

double ReducedQuadraticForm::potential_weight(double s, double z) const
{
    return nu / std::hypot(s, z);
}

void ReducedQuadraticForm::validate() const
{
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::invalid_argument("ReducedQuadraticForm: nu must lie in (0, 1]");
    if (!(B > 0.0))
        throw std::invalid_argument("ReducedQuadraticForm: B must be positive");
}

namespace {

DofMap make_dof_map(const GradedGrid2D& grid)
{
    DofMap m;
    m.n_s_nodes = static_cast<int>(grid.s_nodes.size());
    m.n_z_nodes = static_cast<int>(grid.z_nodes.size());
    const int nn = m.n_s_nodes * m.n_z_nodes;
    m.f_index.assign(nn, -1);
    m.g_index.assign(nn, -1);
    int next = 0;
    for (int i = 0; i < m.n_s_nodes; ++i) {
        for (int j = 0; j < m.n_z_nodes; ++j) {
            const bool outer = (i == m.n_s_nodes - 1) || (j == 0) || (j == m.n_z_nodes - 1);
            const bool axis = (i == 0);
            const int nid = m.node(i, j);
            if (!outer) m.f_index[nid] = next++;
            if (!outer && !axis) m.g_index[nid] = next++;
        }
    }
    m.n_dofs = next;
    return m;
}

} // namespace

AssembledPencil assemble(const ReducedQuadraticForm& form, const GradedGrid2D& grid)
{
    form.validate();
    if (std::abs(form.B - 1.0) > 0.0)
        throw std::invalid_argument("assemble: discretization is set up for B = 1");

    AssembledPencil pencil;
    pencil.dofs = make_dof_map(grid);
    const DofMap& dm = pencil.dofs;

    constexpr int nq = 4;
    const auto& qx = boost::math::quadrature::gauss<double, nq>::abscissa(); // nonneg half
    const auto& qw = boost::math::quadrature::gauss<double, nq>::weights();
    double gp[nq], gw[nq]; // points on [0,1]
    for (int k = 0; k < nq / 2; ++k) {
        gp[k] = 0.5 * (1.0 - qx[nq / 2 - 1 - k]);
        gw[k] = 0.5 * qw[nq / 2 - 1 - k];
        gp[nq - 1 - k] = 0.5 * (1.0 + qx[nq / 2 - 1 - k]);
        gw[nq - 1 - k] = 0.5 * qw[nq / 2 - 1 - k];
    }

    const int ncs = grid.n_cells_s();
    const int ncz = grid.n_cells_z();
    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(static_cast<std::size_t>(ncs) * ncz * 64);
    tm.reserve(static_cast<std::size_t>(ncs) * ncz * 32);

    const double two_pi = 2.0 * M_PI;
    for (int ic = 0; ic < ncs; ++ic) {
        const double s0 = grid.s_nodes[ic], s1 = grid.s_nodes[ic + 1];
        const double hs = s1 - s0;
        for (int jc = 0; jc < ncz; ++jc) {
            const double z0 = grid.z_nodes[jc], z1 = grid.z_nodes[jc + 1];
            const double hz = z1 - z0;
            if (!(hs > 0.0) || !(hz > 0.0))
                throw std::invalid_argument("assemble: degenerate cell");

            // local node order: (ic,jc), (ic,jc+1), (ic+1,jc), (ic+1,jc+1)
            const int nodes[4] = {dm.node(ic, jc), dm.node(ic, jc + 1), dm.node(ic + 1, jc),
                                  dm.node(ic + 1, jc + 1)};
            int ldof[8];
            for (int a = 0; a < 4; ++a) {
                ldof[a] = dm.f_index[nodes[a]];
                ldof[4 + a] = dm.g_index[nodes[a]];
            }

            Eigen::Matrix<double, 8, 8> Kl = Eigen::Matrix<double, 8, 8>::Zero();
            Eigen::Matrix<double, 8, 8> Ml = Eigen::Matrix<double, 8, 8>::Zero();
            for (int p = 0; p < nq; ++p) {
                const double sq = s0 + gp[p] * hs;
                const double ls0 = (s1 - sq) / hs, ls1 = (sq - s0) / hs;
                for (int q = 0; q < nq; ++q) {
                    const double zq = z0 + gp[q] * hz;
                    const double w = gw[p] * gw[q] * hs * hz * sq * two_pi;
                    const double lz0 = (z1 - zq) / hz, lz1 = (zq - z0) / hz;

                    const double N[4] = {ls0 * lz0, ls0 * lz1, ls1 * lz0, ls1 * lz1};
                    const double dNs[4] = {-lz0 / hs, -lz1 / hs, lz0 / hs, lz1 / hs};
                    const double dNz[4] = {-ls0 / hz, ls0 / hz, -ls1 / hz, ls1 / hz};

                    const double wK = form.kinetic_weight(sq, zq);
                    const double wV = form.potential_weight(sq, zq);
                    const double half_s = 0.5 * sq; // B = 1

                    // Q1 = d_z f + d_s g + (1/s - s/2) g ; Q2 = d_s f + (s/2) f - d_z g
                    double c1[8], c2[8], Nf[8], Ng[8];
                    for (int a = 0; a < 4; ++a) {
                        c1[a] = dNz[a];
                        c1[4 + a] = dNs[a] + (1.0 / sq - half_s) * N[a];
                        c2[a] = dNs[a] + half_s * N[a];
                        c2[4 + a] = -dNz[a];
                        Nf[a] = N[a];
                        Nf[4 + a] = 0.0;
                        Ng[a] = 0.0;
                        Ng[4 + a] = N[a];
                    }
                    for (int a = 0; a < 8; ++a) {
                        for (int b = 0; b < 8; ++b) {
                            Kl(a, b) += w * (wK * (c1[a] * c1[b] + c2[a] * c2[b]) -
                                             wV * (Nf[a] * Nf[b] + Ng[a] * Ng[b]));
                            Ml(a, b) += w * (Nf[a] * Nf[b] + Ng[a] * Ng[b]);
                        }
                    }
                }
            }
            for (int a = 0; a < 8; ++a) {
                if (ldof[a] < 0) continue;
                for (int b = 0; b < 8; ++b) {
                    if (ldof[b] < 0) continue;
                    tk.emplace_back(ldof[a], ldof[b], Kl(a, b));
                    if (Ml(a, b) != 0.0) tm.emplace_back(ldof[a], ldof[b], Ml(a, b));
                }
            }
        }
    }

    pencil.K.resize(dm.n_dofs, dm.n_dofs);
    pencil.M.resize(dm.n_dofs, dm.n_dofs);
    pencil.K.setFromTriplets(tk.begin(), tk.end());
    pencil.M.setFromTriplets(tm.begin(), tm.end());
    pencil.K.makeCompressed();
    pencil.M.makeCompressed();
    return pencil;
}

namespace {

// panel edges for the trial quadrature: geometric from ~1e-6 * L at the
// origin, so the |x| and 1/|x| weights are resolved
std::vector<double> panel_edges(double L, int panels)
{
    std::vector<double> e(panels + 1);
    e[0] = 0.0;
    const double x0 = 1e-6 * L;
    const double ratio = std::pow(L / x0, 1.0 / (panels - 1));
    double x = x0;
    for (int i = 1; i <= panels; ++i) {
        e[i] = x;
        x *= ratio;
    }
    e[panels] = L;
    return e;
}

} // namespace

FormValue evaluate_form_on_trial(const ReducedQuadraticForm& form, const TrialField& trial,
                                 double s_extent, double z_extent, int panels_per_axis,
                                 int points_per_panel)
{
    form.validate();
    if (!trial.f || !trial.g || !trial.df_ds || !trial.df_dz || !trial.dg_ds || !trial.dg_dz)
        throw std::invalid_argument("evaluate_form_on_trial: all six trial callbacks required");
    if (points_per_panel != 10)
        throw std::invalid_argument("evaluate_form_on_trial: only 10-point panels supported");

    using gauss10 = boost::math::quadrature::gauss<double, 10>;
    const auto& half_x = gauss10::abscissa();
    const auto& half_w = gauss10::weights();
    std::vector<double> xs, ws;
    for (int k = 4; k >= 0; --k) {
        xs.push_back(-half_x[k]);
        ws.push_back(half_w[k]);
    }
    for (int k = 0; k < 5; ++k) {
        xs.push_back(half_x[k]);
        ws.push_back(half_w[k]);
    }

    const std::vector<double> se = panel_edges(s_extent, panels_per_axis);
    const std::vector<double> zeh = panel_edges(z_extent, panels_per_axis);
    std::vector<double> ze; // symmetric z edges
    for (auto it = zeh.rbegin(); it != zeh.rend(); ++it) ze.push_back(-*it);
    for (std::size_t i = 1; i < zeh.size(); ++i) ze.push_back(zeh[i]);

    const double two_pi = 2.0 * M_PI;
    double energy = 0.0, norm = 0.0;
    for (std::size_t ip = 0; ip + 1 < se.size(); ++ip) {
        const double sa = se[ip], sb = se[ip + 1], hs = sb - sa;
        for (std::size_t jp = 0; jp + 1 < ze.size(); ++jp) {
            const double za = ze[jp], zb = ze[jp + 1], hz = zb - za;
            for (int p = 0; p < 10; ++p) {
                const double s = sa + 0.5 * (xs[p] + 1.0) * hs;
                for (int q = 0; q < 10; ++q) {
                    const double z = za + 0.5 * (xs[q] + 1.0) * hz;
                    const double w = 0.25 * ws[p] * ws[q] * hs * hz * s * two_pi;
                    const double f = trial.f(s, z);
                    const double g = trial.g(s, z);
                    const double q1 = trial.df_dz(s, z) + trial.dg_ds(s, z) +
                                      (1.0 / s - 0.5 * form.B * s) * g;
                    const double q2 =
                        trial.df_ds(s, z) + 0.5 * form.B * s * f - trial.dg_dz(s, z);
                    const double dens = f * f + g * g;
                    if (!std::isfinite(q1) || !std::isfinite(q2) || !std::isfinite(dens))
                        throw std::invalid_argument(
                            "evaluate_form_on_trial: non-finite integrand (trial singular?)");
                    energy += w * (form.kinetic_weight(s, z) * (q1 * q1 + q2 * q2) -
                                   form.potential_weight(s, z) * dens);
                    norm += w * dens;
                }
            }
        }
    }
    return {energy, norm};
}

Eigen::VectorXd interpolate_landau_trial(const DofMap& dofs, const GradedGrid2D& grid,
                                         const std::function<double(double)>& axial_profile,
                                         double B)
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dofs.n_dofs);
    for (int i = 0; i < dofs.n_s_nodes; ++i) {
        const double s = grid.s_nodes[i];
        const double gauss = std::exp(-0.25 * B * s * s);
        for (int j = 0; j < dofs.n_z_nodes; ++j) {
            const int fi = dofs.f_index[dofs.node(i, j)];
            if (fi >= 0) v[fi] = axial_profile(std::abs(grid.z_nodes[j])) * gauss;
        }
    }
    return v;
}

double rayleigh_quotient(const AssembledPencil& pencil, const Eigen::VectorXd& v)
{
    const double den = v.dot(pencil.M * v);
    if (!(den > 0.0)) throw std::invalid_argument("rayleigh_quotient: zero trial vector");
    return v.dot(pencil.K * v) / den;
}

std::vector<double> density_grid(const Eigen::VectorXd& eigenvector, const DofMap& dofs,
                                 const GradedGrid2D& grid)
{
    if (eigenvector.size() != dofs.n_dofs)
        throw std::invalid_argument("density_grid: eigenvector dimension mismatch");
    (void)grid;
    std::vector<double> out(static_cast<std::size_t>(dofs.n_s_nodes) * dofs.n_z_nodes);
    for (int i = 0; i < dofs.n_s_nodes; ++i) {
        for (int j = 0; j < dofs.n_z_nodes; ++j) {
            const int nid = dofs.node(i, j);
            const double f = dofs.f_index[nid] >= 0 ? eigenvector[dofs.f_index[nid]] : 0.0;
            const double g = dofs.g_index[nid] >= 0 ? eigenvector[dofs.g_index[nid]] : 0.0;
            const double dens = f * f + g * g;
            out[static_cast<std::size_t>(nid)] = std::log10(1e-4 + dens * dens);
        }
    }
    return out;
}

} // namespace magcrit
