#ifndef MAGCRIT_GRID_HPP
#define MAGCRIT_GRID_HPP

#include <vector>

namespace magcrit {

/// Tensor grid on the (s, z) half-plane with geometric (logarithmic) cell
/// grading toward the Coulomb singularity at the origin: smallest cells of
/// width ~h_min sit next to s = 0 and z = 0, and cell sizes grow by a
/// constant ratio outward. The z grid is mirror-symmetric about 0.
struct GradedGrid2D {
    std::vector<double> s_nodes; // ascending, s_nodes.front() == 0
    std::vector<double> z_nodes; // ascending, symmetric about 0
    double ratio_s = 1.0;
    double ratio_z = 1.0;
    double L_s = 0.0;
    double L_z = 0.0;
    double h_min = 0.0;

    int n_cells_s() const { return static_cast<int>(s_nodes.size()) - 1; }
    int n_cells_z() const { return static_cast<int>(z_nodes.size()) - 1; }

    /// Bisect every cell in both directions. Nodes of the parent grid are
    /// kept, so the refined FE space nests the original one.
    GradedGrid2D refined() const;
};

/// Build the graded grid. n_s cells cover [0, L_s]; n_z cells (even) cover
/// [-L_z, L_z] with n_z/2 per half. Throws std::invalid_argument on
/// infeasible parameters (counts < 8, h_min too large for any ratio >= 1).
GradedGrid2D build_grid(int n_s, int n_z, double L_s, double L_z, double h_min);

/// Geometric 1D subdivision of [0, L] into n cells, first cell ~h_min.
/// Degenerates to a uniform grid when h_min == L/n.
std::vector<double> graded_axis(int n, double L, double h_min, double* ratio_out = nullptr);

} // namespace magcrit

#endif
