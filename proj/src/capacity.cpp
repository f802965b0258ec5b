#include "qpot/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qpot/errors.hpp"
#include "qpot/relax.hpp"

namespace qpot {

namespace {

// Admissible competitor for the sup definition: w = max(-1, a(|x - c|^2 - d))
// with d large enough that w <= 0 on the whole lattice. Subharmonic (max of
// subharmonic), pinched in [-1, 0].
GridFunction sample_competitor(const std::shared_ptr<const Grid4>& grid,
                               std::mt19937_64& rng) {
    double l = grid->half_extent();
    std::uniform_real_distribution<double> cdist(-0.5 * l, 0.5 * l);
    std::uniform_real_distribution<double> adist(0.2, 4.0);
    std::array<double, 4> c;
    for (auto& ci : c) ci = cdist(rng);
    double d = 0.0;
    for (double ci : c) {
        double far = l + std::abs(ci);
        d += far * far;
    }
    d += grid->spacing();
    double a = adist(rng) / d;
    GridFunction w(grid);
    auto fill = [&](const std::vector<int64_t>& nodes) {
        for (int64_t p : nodes) {
            auto x = grid->coords(p);
            double r2 = 0.0;
            for (int m = 0; m < 4; ++m) r2 += (x[m] - c[m]) * (x[m] - c[m]);
            w[p] = std::max(-1.0, a * (r2 - d));
        }
    };
    fill(grid->interior());
    fill(grid->boundary());
    return w;
}

}  // namespace

CapacityResult capacity(const std::shared_ptr<const Grid4>& grid,
                        std::vector<std::int64_t> set_nodes,
                        const CapacityOptions& opts) {
    std::sort(set_nodes.begin(), set_nodes.end());
    set_nodes.erase(std::unique(set_nodes.begin(), set_nodes.end()), set_nodes.end());

    const auto& strides = grid->strides();
    std::vector<char> in_set(static_cast<size_t>(grid->node_count()), 0);
    for (int64_t p : set_nodes) {
        if (p < 0 || p >= grid->node_count() || grid->kind(p) != NodeKind::Interior)
            throw InvalidInput("capacity set must consist of interior nodes");
        if (!opts.allow_boundary_adjacent)
            for (int m = 0; m < 4; ++m)
                for (int s = -1; s <= 1; s += 2)
                    if (grid->kind(p + s * strides[m]) == NodeKind::Boundary)
                        throw InvalidInput("capacity set touches the boundary ring");
        in_set[static_cast<size_t>(p)] = 1;
    }

    CapacityResult res{GridFunction(grid)};
    res.set_size = static_cast<int64_t>(set_nodes.size());
    if (set_nodes.empty()) return res;

    // Pinned linear solve: v = -1 on the set, discretely harmonic elsewhere,
    // 0 on the boundary. The 0 / -1 obstacle is inactive off the set (v is
    // the harmonic lift of data in [-1, 0]), so this already is the extremal.
    GridFunction& v = res.extremal;
    for (int64_t p : set_nodes) v[p] = -1.0;
    std::vector<int64_t> off_set;
    off_set.reserve(grid->interior().size() - set_nodes.size());
    for (int64_t p : grid->interior())
        if (!in_set[static_cast<size_t>(p)]) off_set.push_back(p);
    auto lin = sor_solve(v, nullptr, off_set, optimal_omega(*grid), opts.linear_tol,
                         opts.obstacle.max_sweeps);
    res.sweeps = lin.sweeps;

    // Certifying polish: projected sweeps against the exact obstacle must not
    // move the iterate beyond its own stopping tolerance.
    std::vector<double> obstacle(static_cast<size_t>(grid->node_count()), 0.0);
    for (int64_t p : set_nodes) obstacle[static_cast<size_t>(p)] = -1.0;
    auto pol = projected_sor(v, nullptr, obstacle, grid->interior(),
                             opts.obstacle.omega, opts.obstacle.tol_change,
                             opts.obstacle.max_sweeps);
    res.sweeps += pol.sweeps;

    res.value = ma_measure(v).total_mass();

    // Lower-bound validation against the sup definition. The discrete
    // comparison argument makes mass_w(E) <= Cap(E) exact for exactly
    // subharmonic competitors; the slack only absorbs solver residual in the
    // extremal's own mass.
    std::mt19937_64 rng(opts.seed);
    res.sup_slack = std::max(1e-7, 1e-6 * res.value);
    for (int k = 0; k < opts.validate_samples; ++k) {
        GridFunction w = sample_competitor(grid, rng);
        double mass_on_set = ma_measure(w).mass_on(set_nodes);
        res.sup_gap = std::max(res.sup_gap, mass_on_set - res.value);
    }
    res.sup_pass = res.sup_gap <= res.sup_slack;
    return res;
}

BallCapacityResult capacity_ball(const std::shared_ptr<const Grid4>& grid,
                                 const std::array<double, 4>& center, double r,
                                 const CapacityOptions& opts) {
    if (!(r > 0.0)) throw InvalidInput("capacity_ball requires r > 0");
    double h = grid->spacing();
    double cnorm = 0.0;
    for (double cm : center) cnorm += cm * cm;
    cnorm = std::sqrt(cnorm);
    double rdom = grid->domain() == DomainKind::Ball ? grid->radius() : grid->half_extent();
    if (cnorm + r >= rdom - 2.0 * h)
        throw InvalidInput("capacity_ball needs the ball strictly inside the domain");

    auto dist2 = [&](const std::array<double, 4>& x) {
        double d = 0.0;
        for (int m = 0; m < 4; ++m) d += (x[m] - center[m]) * (x[m] - center[m]);
        return d;
    };
    // Crossing fraction along p -> q of the sphere |y - c| = rad, where p is
    // outside-or-on and q inside (or vice versa); the quadratic in the step
    // parameter has exactly one root in (0, 1).
    auto crossing = [&](const std::array<double, 4>& p, int axis, double step,
                        const std::array<double, 4>& c, double rad) {
        double yd = (p[axis] - c[axis]) * step;  // (y . d) * h with d the unit arm
        double y2 = 0.0;
        for (int m = 0; m < 4; ++m) y2 += (p[m] - c[m]) * (p[m] - c[m]);
        // roots of t^2 + 2 t (y.d) + |y|^2 - rad^2 = 0, in units of the arm
        double a = yd / std::abs(step);
        double disc = a * a - (y2 - rad * rad);
        disc = std::max(disc, 0.0);
        double t1 = -a - std::sqrt(disc);
        double t2 = -a + std::sqrt(disc);
        double t = (t1 > 1e-12 && t1 <= std::abs(step) + 1e-12) ? t1 : t2;
        return std::clamp(t / std::abs(step), 1e-3, 1.0);
    };

    const auto& strides = grid->strides();
    const int64_t total = grid->node_count();
    std::vector<char> in_ball(static_cast<size_t>(total), 0);
    std::vector<int64_t> active;
    for (int64_t p : grid->interior()) {
        if (dist2(grid->coords(p)) <= r * r)
            in_ball[static_cast<size_t>(p)] = 1;
        else
            active.push_back(p);
    }
    if (active.empty()) throw InvalidInput("capacity_ball: no annulus nodes");

    // Per active node and arm: neighbor index (or -1 for a pinned arm), the
    // arm weight 2 / (theta (theta_plus + theta_minus)), and the pinned value.
    struct Arm {
        int64_t nb = -1;
        double w = 0.0;
        double pinned = 0.0;
        double theta = 1.0;
        int kind = 0;  // 0 free, 1 inner interface, 2 outer interface
    };
    std::vector<std::array<Arm, 8>> arms(active.size());
    std::vector<double> diag(active.size(), 0.0);
    for (size_t i = 0; i < active.size(); ++i) {
        int64_t p = active[i];
        auto xp = grid->coords(p);
        for (int m = 0; m < 4; ++m) {
            double th[2] = {1.0, 1.0};
            Arm arm[2];
            for (int s = 0; s < 2; ++s) {
                double step = s == 0 ? h : -h;
                int64_t q = p + (s == 0 ? strides[m] : -strides[m]);
                if (grid->kind(q) == NodeKind::Interior) {
                    if (in_ball[static_cast<size_t>(q)]) {
                        arm[s].kind = 1;
                        arm[s].pinned = -1.0;
                        th[s] = crossing(xp, m, step, center, r);
                    } else {
                        arm[s].nb = q;
                    }
                } else if (grid->domain() == DomainKind::Ball) {
                    arm[s].kind = 2;
                    arm[s].pinned = 0.0;
                    th[s] = crossing(xp, m, step, {0, 0, 0, 0}, grid->radius());
                } else {
                    // box face node carries exact boundary data 0
                    arm[s].kind = 2;
                    arm[s].pinned = 0.0;
                    arm[s].nb = -1;
                }
                arm[s].theta = th[s];
            }
            for (int s = 0; s < 2; ++s) {
                arm[s].w = 2.0 / (th[s] * (th[0] + th[1]));
                arms[i][2 * m + s] = arm[s];
                diag[i] += arm[s].w;
            }
        }
    }

    // Continuum extremal of the concentric problem as the initial iterate;
    // exact up to O(h^2) for the centered case, a safe clamp otherwise.
    GridFunction v(grid);
    double ri2 = 1.0 / (r * r), ro2 = 1.0 / (rdom * rdom);
    for (size_t i = 0; i < active.size(); ++i) {
        double d2 = std::max(dist2(grid->coords(active[i])), r * r);
        v[active[i]] = std::clamp(-(1.0 / d2 - ro2) / (ri2 - ro2), -1.0, 0.0);
    }
    for (int64_t p : grid->interior())
        if (in_ball[static_cast<size_t>(p)]) v[p] = -1.0;

    double omega = std::min(optimal_omega(*grid), 1.9);
    int sweeps = 0;
    const int check_every = 8;
    for (;; ++sweeps) {
        if (sweeps >= opts.obstacle.max_sweeps)
            throw SolverError("capacity_ball failed to converge");
        for (size_t i = 0; i < active.size(); ++i) {
            double acc = 0.0;
            for (const Arm& a : arms[i])
                acc += a.w * (a.nb >= 0 ? v[a.nb] : a.pinned);
            double gs = acc / diag[i];
            v[active[i]] += omega * (gs - v[active[i]]);
        }
        if (sweeps % check_every != 0) continue;
        // Diagonally scaled residual: cut arms inflate raw stencil weights.
        double res = 0.0;
        for (size_t i = 0; i < active.size(); ++i) {
            double acc = 0.0;
            for (const Arm& a : arms[i])
                acc += a.w * (a.nb >= 0 ? v[a.nb] : a.pinned);
            res = std::max(res, std::abs(acc / diag[i] - v[active[i]]));
        }
        if (res <= 1e-12) break;
    }

    BallCapacityResult out{std::move(v)};
    out.sweeps = sweeps;
    double flux_in = 0.0, flux_out = 0.0;
    double h3 = h * h * h;
    for (size_t i = 0; i < active.size(); ++i) {
        double up = out.extremal[active[i]];
        for (const Arm& a : arms[i]) {
            if (a.kind == 1) flux_in += (up + 1.0) / (a.theta * h) * h3;
            if (a.kind == 2) flux_out += (-up) / (a.theta * h) * h3;
        }
    }
    out.flux_inner = flux_in / 4.0;
    out.flux_outer = flux_out / 4.0;
    out.value = 0.5 * (out.flux_inner + out.flux_outer);
    return out;
}

SandwichReport capacity_sandwich_check(const GridFunction& u, double s, double t,
                                       double slack_c, const CapacityOptions& opts) {
    if (!(s > 0.0) || !(t > 0.0)) throw InvalidInput("sandwich requires s, t > 0");
    const auto& grid = u.grid();
    for (int64_t p : grid->boundary())
        if (std::abs(u[p]) > 1e-12)
            throw InvalidInput("sandwich input must vanish on the boundary");

    SandwichReport rep;
    rep.s = s;
    rep.t = t;
    MeasureGrid mu = ma_measure(u);
    rep.slack = slack_c * grid->spacing() * mu.total_mass();

    auto outer = sublevel_nodes(u, -s);
    auto inner = sublevel_nodes(u, -s - t);
    rep.outer_size = static_cast<int64_t>(outer.size());
    rep.inner_size = static_cast<int64_t>(inner.size());
    if (outer.empty()) {
        rep.vacuous = true;
        rep.pass = true;
        return rep;
    }
    rep.middle = mu.mass_on(outer);
    rep.upper = s * capacity(grid, outer, opts).value;
    if (!inner.empty()) rep.lower = t * capacity(grid, inner, opts).value;
    rep.pass = rep.lower <= rep.middle + rep.slack && rep.middle <= rep.upper + rep.slack;
    return rep;
}

}  // namespace qpot
