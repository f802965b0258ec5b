#include "qpot/energy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qpot/errors.hpp"

namespace qpot {

namespace {

// Energy of the scaled potential c * psi given psi's own measure; the
// measure scales linearly with c at n = 1.
double scaled_energy(const GridFunction& psi, const MeasureGrid& mu_psi,
                     const Weight& chi, double c) {
    const auto& grid = psi.grid();
    double h4 = grid->cell_volume();
    double e = 0.0;
    for (int64_t p : grid->interior())
        e += -chi.chi(c * psi[p]) * c * mu_psi.density[static_cast<size_t>(p)] * h4;
    return e;
}

double integral_against(const GridFunction& psi, const MeasureGrid& mu,
                        const Weight& chi, double c) {
    const auto& grid = psi.grid();
    double h4 = grid->cell_volume();
    double v = 0.0;
    for (int64_t p : grid->interior())
        v += -chi.chi(c * psi[p]) * mu.density[static_cast<size_t>(p)] * h4;
    return v;
}

// Sum of 1-5 random paraboloid bumps, a nonnegative density whose potential
// spans the admissible cone with controllable energy.
std::vector<double> random_bump_density(const Grid4& grid, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nb(1, 5);
    double l = grid.half_extent();
    std::uniform_real_distribution<double> cdist(-0.6 * l, 0.6 * l);
    std::uniform_real_distribution<double> rdist(0.2 * l, 0.6 * l);
    std::uniform_real_distribution<double> adist(0.5, 8.0);
    int bumps = nb(rng);
    std::vector<double> g(static_cast<size_t>(grid.node_count()), 0.0);
    for (int b = 0; b < bumps; ++b) {
        std::array<double, 4> c;
        for (auto& cm : c) cm = cdist(rng);
        double r = rdist(rng);
        double a = adist(rng);
        for (int64_t p : grid.interior()) {
            auto x = grid.coords(p);
            double d2 = 0.0;
            for (int m = 0; m < 4; ++m) d2 += (x[m] - c[m]) * (x[m] - c[m]);
            double v = 1.0 - d2 / (r * r);
            if (v > 0.0) g[static_cast<size_t>(p)] += a * v;
        }
    }
    return g;
}

}  // namespace

EnergyReport energy_chi(const GridFunction& u, const Weight& chi,
                        const EnergyOptions& opts) {
    const auto& grid = u.grid();
    MeasureGrid mu = ma_measure(u);
    double h4 = grid->cell_volume();
    EnergyReport rep;
    for (int64_t p : grid->interior())
        rep.e_chi += -chi.chi(u[p]) * mu.density[static_cast<size_t>(p)] * h4;
    rep.finite = std::isfinite(rep.e_chi);

    if (opts.with_profile) {
        double top = u.norm_inf();
        if (top > 0.0) {
            rep.has_profile = true;
            int k = std::max(2, opts.profile_points);
            double lo = 1e-3 * top;
            double ratio = std::pow(top / lo, 1.0 / (k - 1));
            CapacityOptions cap_opts = opts.cap;
            cap_opts.allow_boundary_adjacent = true;
            cap_opts.validate_samples = 0;  // profile wants values, not audits
            double prev_f = 0.0, prev_t = 0.0;
            for (int i = 0; i < k; ++i) {
                double t = lo * std::pow(ratio, i);
                auto nodes = sublevel_nodes(u, -t);
                double cap = nodes.empty()
                                 ? 0.0
                                 : capacity(grid, std::move(nodes), cap_opts).value;
                rep.profile_t.push_back(t);
                rep.profile_cap.push_back(cap);
                double f = t * chi.chi_prime(-t) * cap;
                if (i > 0) rep.hat_e += 0.5 * (f + prev_f) * (t - prev_t);
                prev_f = f;
                prev_t = t;
            }
        }
    }
    return rep;
}

Condition4Result estimate_condition4(const MeasureGrid& mu, const Weight& chi,
                                     const Condition4Options& opts) {
    const auto& grid = mu.grid;
    Condition4Result res;
    std::mt19937_64 rng(opts.seed);
    GridFunction zero_boundary(grid);

    for (int s = 0; s < opts.samples; ++s) {
        MeasureGrid g{grid, random_bump_density(*grid, rng)};
        GridFunction psi = solve_dirichlet(g, zero_boundary, opts.solve);
        MeasureGrid mu_psi = ma_measure(psi);

        double e1 = scaled_energy(psi, mu_psi, chi, 1.0);
        double n1 = integral_against(psi, mu, chi, 1.0);
        if (e1 <= 0.0 && n1 <= 0.0) {
            ++res.skipped;
            continue;
        }

        // Locate the scale where the energy crosses 1; the ratio of interest
        // peaks there, so fan scales geometrically around it.
        double c_star = 1.0;
        if (e1 > 0.0) {
            double lo = 1.0, hi = 1.0;
            if (e1 < 1.0) {
                while (scaled_energy(psi, mu_psi, chi, hi) < 1.0 && hi < 1e30) hi *= 2.0;
                lo = hi * 0.5;
            } else {
                while (scaled_energy(psi, mu_psi, chi, lo) > 1.0 && lo > 1e-30) lo *= 0.5;
                hi = lo * 2.0;
            }
            for (int it = 0; it < 40; ++it) {
                double mid = std::sqrt(lo * hi);
                (scaled_energy(psi, mu_psi, chi, mid) < 1.0 ? lo : hi) = mid;
            }
            c_star = std::sqrt(lo * hi);
        }

        int k = std::max(1, opts.scale_points);
        for (int j = 0; j < k; ++j) {
            double c = c_star * std::pow(2.0, j - (k - 1) / 2.0);
            double num = integral_against(psi, mu, chi, c);
            double den = std::max(1.0, scaled_energy(psi, mu_psi, chi, c));
            double ratio = num / den;
            if (ratio > res.a_est) {
                res.a_est = ratio;
                res.best_numerator = num;
                res.best_denominator = den;
            }
        }
        ++res.used_samples;
    }
    return res;
}

MaSolveReport solve_ma_energy(const MeasureGrid& mu, const Weight& chi,
                              const SolveOptions& opts) {
    const auto& grid = mu.grid;
    double h4 = grid->cell_volume();
    double maxd = mu.max_density();
    if (maxd > 1.0 / h4)
        throw OutOfModelError("measure density exceeds the 1/h^4 grid threshold");

    GridFunction zero_boundary(grid);
    MaSolveReport rep{GridFunction(grid), {}, {}, {}, true, 0.0, 0.0};

    double level = 1.0;
    bool first = true;
    GridFunction prev(grid);
    for (;;) {
        MeasureGrid mj{grid, std::vector<double>(static_cast<size_t>(grid->node_count()), 0.0)};
        for (int64_t p : grid->interior())
            mj.density[static_cast<size_t>(p)] =
                std::min(mu.density[static_cast<size_t>(p)], level);
        SolveOptions so = opts;
        if (!first) so.warm_start = &prev;
        GridFunction phi = solve_dirichlet(mj, zero_boundary, so);
        rep.levels.push_back(level);
        rep.level_mass.push_back(mj.total_mass());
        if (!first) {
            double worst = 0.0;
            for (int64_t p : grid->interior())
                worst = std::max(worst, phi[p] - prev[p]);
            rep.monotone_slack = std::max(rep.monotone_slack, worst);
        }
        prev = std::move(phi);
        if (level >= maxd) break;
        level *= 2.0;
        first = false;
    }
    rep.monotone = rep.monotone_slack <= 1e-8 * (1.0 + prev.norm_inf());

    MeasureGrid recovered = ma_measure(prev);
    for (int64_t p : grid->interior())
        rep.residual = std::max(rep.residual,
                                std::abs(recovered.density[static_cast<size_t>(p)] -
                                         mu.density[static_cast<size_t>(p)]));
    rep.energy = energy_chi(prev, chi);
    rep.phi = std::move(prev);
    return rep;
}

}  // namespace qpot
