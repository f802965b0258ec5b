#include "qpot/relax.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpot/errors.hpp"

namespace qpot {

double optimal_omega(const Grid4& g) {
    // Jacobi spectral radius for the box lattice; a safe upper bound for the
    // ball, where the true radius is smaller and SOR still converges.
    const double rho = std::cos(std::numbers::pi / (g.n_axis() - 1));
    const double w = 2.0 / (1.0 + std::sqrt(1.0 - rho * rho));
    return std::min(w, 1.95);
}

double laplacian_at(const GridFunction& u, int64_t idx) {
    const Grid4& g = *u.grid();
    const auto& s = g.strides();
    const std::vector<double>& v = u.values();
    const double c = v[static_cast<size_t>(idx)];
    double acc = 0.0;
    for (int m = 0; m < 4; ++m)
        acc += v[static_cast<size_t>(idx + s[m])] + v[static_cast<size_t>(idx - s[m])];
    return (acc - 8.0 * c) / (g.spacing() * g.spacing());
}

double max_residual(const GridFunction& u, const std::vector<double>* rhs4,
                    const std::vector<int64_t>& active) {
    double r = 0.0;
    for (int64_t idx : active) {
        const double want = rhs4 ? (*rhs4)[static_cast<size_t>(idx)] : 0.0;
        r = std::max(r, std::abs(laplacian_at(u, idx) - want));
    }
    return r;
}

SweepResult sor_solve(GridFunction& u, const std::vector<double>* rhs4,
                      const std::vector<int64_t>& active, double omega, double tol,
                      int max_sweeps) {
    const Grid4& g = *u.grid();
    const auto& s = g.strides();
    const double h2 = g.spacing() * g.spacing();
    std::vector<double>& v = u.values();
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        for (int64_t idx : active) {
            const size_t i = static_cast<size_t>(idx);
            double nb = v[i + s[0]] + v[i - s[0]];
            nb += v[static_cast<size_t>(idx + s[1])] + v[static_cast<size_t>(idx - s[1])];
            nb += v[static_cast<size_t>(idx + s[2])] + v[static_cast<size_t>(idx - s[2])];
            nb += v[static_cast<size_t>(idx + s[3])] + v[static_cast<size_t>(idx - s[3])];
            const double rhs = rhs4 ? (*rhs4)[i] : 0.0;
            const double gs = 0.125 * (nb - h2 * rhs);
            v[i] += omega * (gs - v[i]);
        }
        if (sweep % 8 == 0 || sweep == max_sweeps) {
            const double r = max_residual(u, rhs4, active);
            if (r <= tol) return {sweep, r};
        }
    }
    throw SolverError("sor_solve: no convergence within sweep cap");
}

SweepResult projected_sor(GridFunction& u, const std::vector<double>* rhs4,
                          const std::vector<double>& obstacle,
                          const std::vector<int64_t>& active, double omega,
                          double tol_change, int max_sweeps) {
    const Grid4& g = *u.grid();
    const auto& s = g.strides();
    const double h2 = g.spacing() * g.spacing();
    std::vector<double>& v = u.values();
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        double change = 0.0;
        for (int64_t idx : active) {
            const size_t i = static_cast<size_t>(idx);
            double nb = v[i + s[0]] + v[i - s[0]];
            nb += v[static_cast<size_t>(idx + s[1])] + v[static_cast<size_t>(idx - s[1])];
            nb += v[static_cast<size_t>(idx + s[2])] + v[static_cast<size_t>(idx - s[2])];
            nb += v[static_cast<size_t>(idx + s[3])] + v[static_cast<size_t>(idx - s[3])];
            const double rhs = rhs4 ? (*rhs4)[i] : 0.0;
            const double gs = 0.125 * (nb - h2 * rhs);
            const double cand = std::min(v[i] + omega * (gs - v[i]), obstacle[i]);
            change = std::max(change, std::abs(cand - v[i]));
            v[i] = cand;
        }
        if (change <= tol_change) return {sweep, change};
    }
    throw SolverError("projected_sor: no convergence within sweep cap");
}

} // namespace qpot
