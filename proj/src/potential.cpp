#include "qpot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpot/errors.hpp"
#include "qpot/relax.hpp"

namespace qpot {

MeasureGrid ma_measure(const GridFunction& u, bool expect_subharmonic, double* min_raw) {
    const auto& grid = u.grid();
    const double h2 = grid->spacing() * grid->spacing();
    const double neg_tol = 1e-6 * u.norm_inf() / h2;
    MeasureGrid m{grid, std::vector<double>(static_cast<size_t>(grid->node_count()), 0.0)};
    double worst = std::numeric_limits<double>::infinity();
    for (int64_t idx : grid->interior()) {
        const double d = 0.25 * laplacian_at(u, idx);
        worst = std::min(worst, d);
        m.density[static_cast<size_t>(idx)] = std::max(d, 0.0);
    }
    if (grid->interior().empty()) worst = 0.0;
    if (min_raw) *min_raw = worst;
    if (expect_subharmonic && worst < -neg_tol)
        throw SolverError("ma_measure: negative density " + std::to_string(worst) +
                          " on a function claimed subharmonic");
    return m;
}

GridFunction solve_dirichlet(const MeasureGrid& f, const GridFunction& g,
                             const SolveOptions& opts) {
    const auto& grid = g.grid();
    if (!f.grid->same(*grid)) throw InvalidInput("solve_dirichlet: grid mismatch");
    GridFunction u(grid, 0.0);
    for (int64_t idx : grid->boundary())
        u[idx] = g[idx];
    if (opts.warm_start) {
        if (!opts.warm_start->grid()->same(*grid))
            throw InvalidInput("solve_dirichlet: warm start grid mismatch");
        for (int64_t idx : grid->interior()) u[idx] = (*opts.warm_start)[idx];
    }
    std::vector<double> rhs4(static_cast<size_t>(grid->node_count()), 0.0);
    double fmax = 0.0;
    for (int64_t idx : grid->interior()) {
        const double d = f.density[static_cast<size_t>(idx)];
        rhs4[static_cast<size_t>(idx)] = 4.0 * d;
        fmax = std::max(fmax, std::abs(d));
    }
    const double tol = opts.tol >= 0.0 ? opts.tol : 1e-8 * (1.0 + fmax);
    const double omega = opts.omega > 0.0 ? opts.omega : optimal_omega(*grid);
    sor_solve(u, &rhs4, grid->interior(), omega, tol, opts.max_sweeps);
    return u;
}

GridFunction project_subharmonic(const GridFunction& u, const ObstacleOptions& opts) {
    GridFunction v = u;
    projected_sor(v, nullptr, u.values(), u.grid()->interior(), opts.omega, opts.tol_change,
                  opts.max_sweeps);
    return v;
}

GridFunction maximal_extension(const GridFunction& u, const std::vector<int64_t>& mask) {
    const auto& grid = u.grid();
    if (mask.empty()) return u;
    const auto& s = grid->strides();
    for (int64_t idx : mask) {
        if (grid->kind(idx) != NodeKind::Interior)
            throw InvalidInput("maximal_extension: mask node not interior");
        for (int m = 0; m < 4; ++m)
            for (int dir = -1; dir <= 1; dir += 2)
                if (grid->kind(idx + dir * s[m]) != NodeKind::Interior)
                    throw InvalidInput("maximal_extension: mask touches the boundary");
    }
    std::vector<int64_t> active(mask);
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    GridFunction w = u;
    sor_solve(w, nullptr, active, optimal_omega(*grid), 1e-9, 1000000);
    GridFunction out = u;
    for (int64_t idx : active) out[idx] = std::max(u[idx], w[idx]);
    return out;
}

MeasureGrid truncate_measure(const GridFunction& u, double level_j, bool expect_subharmonic) {
    if (!(level_j > 0.0)) throw InvalidInput("truncate_measure: level must be positive");
    const GridFunction w = gf_max(u, -level_j);
    MeasureGrid m = ma_measure(w, expect_subharmonic);
    for (int64_t idx : u.grid()->interior())
        if (u[idx] <= -level_j) m.density[static_cast<size_t>(idx)] = 0.0;
    return m;
}

ComparisonReport verify_comparison(const GridFunction& u, const GridFunction& v,
                                   double slack_c) {
    const auto& grid = u.grid();
    if (!v.grid()->same(*grid)) throw InvalidInput("verify_comparison: grid mismatch");
    for (int64_t idx : grid->boundary())
        if (u[idx] < v[idx] - 1e-12)
            throw InvalidInput("verify_comparison: requires u >= v on the boundary");
    const MeasureGrid mu = ma_measure(u);
    const MeasureGrid mv = ma_measure(v);
    ComparisonReport rep;
    const double vol = grid->cell_volume();
    for (int64_t idx : grid->interior()) {
        if (u[idx] < v[idx]) {
            rep.lhs += mv.density[static_cast<size_t>(idx)] * vol;
            rep.rhs += mu.density[static_cast<size_t>(idx)] * vol;
            ++rep.node_count;
        }
    }
    rep.slack = slack_c * grid->spacing() * std::max(mu.total_mass(), mv.total_mass());
    rep.pass = rep.lhs <= rep.rhs + rep.slack;
    return rep;
}

std::vector<int64_t> sublevel_nodes(const GridFunction& u, double threshold) {
    std::vector<int64_t> out;
    for (int64_t idx : u.grid()->interior())
        if (u[idx] < threshold) out.push_back(idx);
    return out;
}

std::vector<int64_t> ball_nodes(const Grid4& g, const std::array<double, 4>& center, double r) {
    std::vector<int64_t> out;
    const double r2 = r * r;
    for (int64_t idx : g.interior()) {
        const std::array<double, 4> x = g.coords(idx);
        double d2 = 0.0;
        for (int m = 0; m < 4; ++m) d2 += (x[m] - center[m]) * (x[m] - center[m]);
        if (d2 <= r2) out.push_back(idx);
    }
    return out;
}

} // namespace qpot
