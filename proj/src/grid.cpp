#include "magcrit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace magcrit {

std::vector<double> graded_axis(int n, double L, double h_min, double* ratio_out)
{
    if (n < 1 || !(L > 0.0) || !(h_min > 0.0))
        throw std::invalid_argument("graded_axis: need n >= 1, L > 0, h_min > 0");
    if (h_min * n > L * (1.0 + 1e-12))
        throw std::invalid_argument("graded_axis: h_min too large, no grading ratio >= 1 fits "
                                    "(h_min * n = " + std::to_string(h_min * n) +
                                    " > L = " + std::to_string(L) + ")");

    std::vector<double> x(n + 1);
    double ratio = 1.0;
    if (h_min * n >= L * (1.0 - 1e-12)) {
        for (int i = 0; i <= n; ++i) x[i] = L * static_cast<double>(i) / n;
    } else {
        // solve h_min (r^n - 1)/(r - 1) = L for the ratio by bisection
        double lo = 1.0 + 1e-15, hi = 2.0;
        auto span = [&](double r) { return h_min * (std::pow(r, n) - 1.0) / (r - 1.0); };
        while (span(hi) < L) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (span(mid) < L ? lo : hi) = mid;
        }
        ratio = 0.5 * (lo + hi);
        x[0] = 0.0;
        double h = h_min;
        for (int i = 1; i <= n; ++i) {
            x[i] = x[i - 1] + h;
            h *= ratio;
        }
        const double scale = L / x[n]; // absorb the bisection residual
        for (int i = 1; i <= n; ++i) x[i] *= scale;
        x[n] = L;
    }
    if (ratio_out) *ratio_out = ratio;
    return x;
}

GradedGrid2D build_grid(int n_s, int n_z, double L_s, double L_z, double h_min)
{
    if (n_s < 8 || n_z < 8)
        throw std::invalid_argument("build_grid: need at least 8 cells per direction");
    if (n_z % 2 != 0)
        throw std::invalid_argument("build_grid: n_z must be even (mirror-symmetric z grid)");
    if (!(L_s > 0.0) || !(L_z > 0.0))
        throw std::invalid_argument("build_grid: extents must be positive");

    GradedGrid2D g;
    g.L_s = L_s;
    g.L_z = L_z;
    g.h_min = h_min;
    g.s_nodes = graded_axis(n_s, L_s, h_min, &g.ratio_s);

    const std::vector<double> half = graded_axis(n_z / 2, L_z, h_min, &g.ratio_z);
    g.z_nodes.reserve(n_z + 1);
    for (auto it = half.rbegin(); it != half.rend(); ++it) g.z_nodes.push_back(-*it);
    for (std::size_t i = 1; i < half.size(); ++i) g.z_nodes.push_back(half[i]);
    g.z_nodes[n_z / 2] = 0.0;
    return g;
}

GradedGrid2D GradedGrid2D::refined() const
{
    GradedGrid2D g;
    g.L_s = L_s;
    g.L_z = L_z;
    g.h_min = 0.5 * h_min;
    g.ratio_s = ratio_s;
    g.ratio_z = ratio_z;
    auto bisect = [](const std::vector<double>& x) {
        std::vector<double> y;
        y.reserve(2 * x.size());
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            y.push_back(x[i]);
            y.push_back(0.5 * (x[i] + x[i + 1]));
        }
        y.push_back(x.back());
        return y;
    };
    g.s_nodes = bisect(s_nodes);
    g.z_nodes = bisect(z_nodes);
    return g;
}

} // namespace magcrit
