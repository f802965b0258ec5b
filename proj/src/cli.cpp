#include "qpot/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "qpot/capacity.hpp"
#include "qpot/energy.hpp"
#include "qpot/envelope.hpp"
#include "qpot/errors.hpp"
#include "qpot/field_parser.hpp"
#include "qpot/grid.hpp"
#include "qpot/hypercomplex.hpp"
#include "qpot/hyperhermitian.hpp"
#include "qpot/potential.hpp"
#include "qpot/relax.hpp"
#include "qpot/weights.hpp"

namespace qpot {

namespace {

constexpr std::uint64_t default_seed = 12345;
constexpr double pi = 3.14159265358979323846;

struct Context {
    const Config& cfg;
    std::string out_dir;
    std::uint64_t seed;
    int grid_n;
    RunReport& rep;
};

std::shared_ptr<const Grid4> make_grid(const Context& ctx) {
    std::string domain = ctx.cfg.get_string("grid.domain", "ball");
    double radius = ctx.cfg.get_double("grid.radius", 1.0);
    if (domain == "ball") return Grid4::make_ball(ctx.grid_n, radius);
    if (domain == "box") return Grid4::make_box(ctx.grid_n);
    throw InvalidInput("grid.domain must be ball or box, got " + domain);
}

std::vector<double> point_from(const Context& ctx, const std::string& key, int n) {
    auto p = ctx.cfg.get_doubles(key, std::vector<double>(static_cast<size_t>(4 * n), 0.0));
    if (static_cast<int>(p.size()) != 4 * n)
        throw InvalidInput("config key '" + key + "' needs " + std::to_string(4 * n) +
                           " coordinates");
    return p;
}

void save_grid_artifacts(const Context& ctx, const GridFunction& u,
                         const std::string& name) {
    if (ctx.out_dir.empty()) return;
    u.save(ctx.out_dir + "/" + name + ".qpgrid");
    u.export_csv(ctx.out_dir + "/" + name + ".csv");
}

HyperHermitianMatrix random_hyperhermitian(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> diag(-2.0, 2.0);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    std::vector<std::vector<Quaternion>> e(static_cast<size_t>(n),
                                           std::vector<Quaternion>(static_cast<size_t>(n)));
    for (int r = 0; r < n; ++r) {
        e[r][r] = Quaternion(diag(rng));
        for (int c = r + 1; c < n; ++c) {
            Quaternion q(off(rng), off(rng), off(rng), off(rng));
            e[r][c] = q;
            e[c][r] = q.conj();
        }
    }
    return HyperHermitianMatrix::from_entries(e);
}

// 1/2 sum over all 4n real coordinates of x_m^2, the potential of the
// reference form: its ddJ coefficients are exactly c(2k, 2k+1) = 1.
ScalarField reference_potential(int n) {
    Polynomial p(4 * n);
    for (int m = 0; m < 4 * n; ++m) {
        Polynomial t = Polynomial::variable(4 * n, m);
        p += 0.5 * t * t;
    }
    return make_polynomial_field(n, std::move(p));
}

GridFunction pit_obstacle(const std::shared_ptr<const Grid4>& grid, double a, double b,
                          const std::array<double, 4>& c) {
    GridFunction f(grid);
    auto fill = [&](const std::vector<int64_t>& nodes) {
        for (int64_t p : nodes) {
            auto x = grid->coords(p);
            double d2 = 0.0;
            for (int m = 0; m < 4; ++m) d2 += (x[m] - c[m]) * (x[m] - c[m]);
            f[p] = -std::max(0.0, a - b * d2);
        }
    };
    fill(grid->interior());
    fill(grid->boundary());
    return f;
}

// Boundary-zero potential carrying the same discrete MA measure as the
// sampled expression.
GridFunction to_boundary_zero(const GridFunction& raw) {
    MeasureGrid mu = ma_measure(raw);
    return solve_dirichlet(mu, GridFunction(raw.grid()));
}

GridFunction sampled_field(const Context& ctx, const std::shared_ptr<const Grid4>& grid,
                           const std::string& key, const std::string& fallback) {
    std::string expr = ctx.cfg.get_string(key, fallback);
    return GridFunction::sample(grid, parse_field(expr, 1));
}

void cmd_moore_det(Context& ctx) {
    int n = ctx.cfg.get_int("moore.n", 2);
    int count = ctx.cfg.get_int("moore.count", 50);
    if (n < 1 || count < 1) throw InvalidInput("moore.n and moore.count must be positive");
    std::mt19937_64 rng(ctx.seed);
    double worst = 0.0;
    double first_det = 0.0;
    for (int k = 0; k < count; ++k) {
        auto a = random_hyperhermitian(n, rng);
        double m = moore_det(a);
        if (k == 0) first_det = m;
        std::complex<double> d = complexify(a).determinant();
        double scale = std::max(1.0, std::abs(d));
        worst = std::max(worst, std::abs(m * m - d.real()) / scale);
        worst = std::max(worst, std::abs(d.imag()) / scale);
    }
    ctx.rep.results["n"] = n;
    ctx.rep.results["count"] = count;
    ctx.rep.results["first_det"] = first_det;
    ctx.rep.results["worst_relative_gap"] = worst;
    ctx.rep.add_verdict("moore_sq_matches_complexification", worst <= 1e-8, worst, 0.0,
                        1e-8);
}

void cmd_ma_eval(Context& ctx) {
    int n = ctx.cfg.get_int("field.n", 1);
    ScalarField u = parse_field(ctx.cfg.require_string("field.expr"), n);
    auto p = point_from(ctx, "field.point", n);
    double val = ma_density(u, p);
    double lap = laplacian(u, p);
    auto form = ddj_coefficients(u, p);
    double bridge_gap = std::abs(4.0 * form.trace_pairs().real() - lap);
    double tol = 1e-8 * (1.0 + std::abs(lap));
    ctx.rep.results["ma_density"] = val;
    ctx.rep.results["laplacian"] = lap;
    ctx.rep.results["trace_pairs"] = form.trace_pairs().real();
    ctx.rep.add_verdict("trace_bridge", bridge_gap <= tol, bridge_gap, 0.0, tol);
}

void cmd_qpsh_check(Context& ctx) {
    int n = ctx.cfg.get_int("field.n", 1);
    ScalarField u = parse_field(ctx.cfg.require_string("field.expr"), n);
    int samples = ctx.cfg.get_int("qpsh.samples", 200);
    double w = ctx.cfg.get_double("qpsh.halfwidth", 1.0);
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> dist(-w, w);
    double min_ev = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (int k = 0; k < samples; ++k) {
        std::vector<double> p(static_cast<size_t>(4 * n));
        for (auto& c : p) c = dist(rng);
        auto ev = complexification_eigenvalues(quaternionic_hessian(u, p));
        min_ev = std::min(min_ev, ev(0));
        scale = std::max(scale, std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
    }
    double tol = 1e-8 * std::max(1.0, scale);
    ctx.rep.results["samples"] = samples;
    ctx.rep.results["min_eigenvalue"] = min_ev;
    ctx.rep.add_verdict("qpsh_on_samples", min_ev >= -tol, min_ev, 0.0, tol);
}

void cmd_solve_dirichlet(Context& ctx) {
    auto grid = make_grid(ctx);
    GridFunction dens = sampled_field(ctx, grid, "dirichlet.density", "0");
    MeasureGrid f{grid, std::vector<double>(static_cast<size_t>(grid->node_count()), 0.0)};
    for (int64_t p : grid->interior()) {
        double d = dens[p];
        if (d < -1e-12)
            throw InvalidInput("dirichlet.density must be nonnegative");
        f.density[static_cast<size_t>(p)] = std::max(0.0, d);
    }
    double extra_mass = ctx.cfg.get_double("dirichlet.point_mass", 0.0);
    if (extra_mass > 0.0) {
        int c = (ctx.grid_n - 1) / 2;
        f.density[static_cast<size_t>(grid->index(c, c, c, c))] +=
            extra_mass / grid->cell_volume();
    }
    GridFunction g = sampled_field(ctx, grid, "dirichlet.boundary", "0");
    GridFunction u = solve_dirichlet(f, g);
    std::vector<double> rhs4(f.density.size());
    for (size_t i = 0; i < rhs4.size(); ++i) rhs4[i] = 4.0 * f.density[i];
    double res = max_residual(u, &rhs4, grid->interior());
    double tol = 1e-8 * (1.0 + f.max_density());
    ctx.rep.results["residual"] = res;
    ctx.rep.results["min_u"] = u.min_interior();
    ctx.rep.results["total_mass"] = f.total_mass();
    ctx.rep.add_verdict("residual_within_tol", res <= tol, res, 0.0, tol);
    save_grid_artifacts(ctx, u, "dirichlet_u");
}

void cmd_envelope(Context& ctx) {
    auto grid = make_grid(ctx);
    std::string kind = ctx.cfg.get_string("envelope.kind", "pit");
    GridFunction f(grid);
    if (kind == "pit") {
        double a = ctx.cfg.get_double("envelope.depth", 0.8);
        double b = ctx.cfg.get_double("envelope.steepness", 8.0);
        auto cl = ctx.cfg.get_doubles("envelope.center", {0.0, 0.0, 0.0, 0.0});
        if (cl.size() != 4) throw InvalidInput("envelope.center needs 4 coordinates");
        f = pit_obstacle(grid, a, b, {cl[0], cl[1], cl[2], cl[3]});
    } else if (kind == "expr") {
        f = sampled_field(ctx, grid, "envelope.expr", "0");
    } else {
        throw InvalidInput("envelope.kind must be pit or expr");
    }
    EnvelopeResult env = envelope(f);
    double worst_above = -std::numeric_limits<double>::infinity();
    for (int64_t p : grid->interior())
        worst_above = std::max(worst_above, env.envelope[p] - f[p]);
    double ratio = env.total_mass > 0.0 ? env.off_contact_mass / env.total_mass : 0.0;
    double bound = 10.0 * grid->spacing();
    int64_t contact = std::count(env.contact.begin(), env.contact.end(), uint8_t{1});
    ctx.rep.results["total_mass"] = env.total_mass;
    ctx.rep.results["off_contact_mass"] = env.off_contact_mass;
    ctx.rep.results["contact_nodes"] = contact;
    ctx.rep.results["iterations"] = env.iterations;
    ctx.rep.add_verdict("minorant", worst_above <= 1e-12, worst_above, 0.0, 1e-12);
    ctx.rep.add_verdict("mass_concentration", ratio <= bound, ratio, bound, 0.0);
    save_grid_artifacts(ctx, env.envelope, "envelope");
}

void cmd_capacity(Context& ctx) {
    auto grid = make_grid(ctx);
    auto cl = ctx.cfg.get_doubles("capacity.center", {0.0, 0.0, 0.0, 0.0});
    if (cl.size() != 4) throw InvalidInput("capacity.center needs 4 coordinates");
    double r = ctx.cfg.get_double("capacity.set_radius", 0.5);
    std::array<double, 4> center{cl[0], cl[1], cl[2], cl[3]};
    auto nodes = ball_nodes(*grid, center, r);
    CapacityOptions opts;
    opts.seed = ctx.seed;
    auto res = capacity(grid, nodes, opts);
    bool fitted = ctx.cfg.get_bool("capacity.fitted", true);
    double value = res.value;
    if (fitted) {
        auto fit = capacity_ball(grid, center, r, opts);
        value = fit.value;
        ctx.rep.results["value"] = fit.value;
        ctx.rep.results["flux_inner"] = fit.flux_inner;
        ctx.rep.results["flux_outer"] = fit.flux_outer;
        save_grid_artifacts(ctx, fit.extremal, "extremal_fitted");
    } else {
        ctx.rep.results["value"] = res.value;
    }
    ctx.rep.results["value_lattice"] = res.value;
    ctx.rep.results["set_size"] = res.set_size;
    ctx.rep.results["sweeps"] = res.sweeps;
    ctx.rep.results["sup_gap"] = res.sup_gap;
    double sup_gap_vs_value = res.sup_gap + res.value - value;
    ctx.rep.add_verdict("sup_lower_bound", sup_gap_vs_value <= res.sup_slack,
                        sup_gap_vs_value, 0.0, res.sup_slack);
    save_grid_artifacts(ctx, res.extremal, "extremal");
}

void cmd_sandwich(Context& ctx) {
    auto grid = make_grid(ctx);
    GridFunction raw =
        sampled_field(ctx, grid, "sandwich.u", "x0^2+x1^2+x2^2+x3^2-1");
    GridFunction u = to_boundary_zero(raw);
    auto s_list = ctx.cfg.get_doubles("sandwich.s", {0.3});
    auto t_list = ctx.cfg.get_doubles("sandwich.t", {0.2});
    auto lower = nlohmann::ordered_json::array();
    auto middle = nlohmann::ordered_json::array();
    auto upper = nlohmann::ordered_json::array();
    for (double s : s_list)
        for (double t : t_list) {
            auto chain = capacity_sandwich_check(u, s, t);
            char name[64];
            std::snprintf(name, sizeof name, "sandwich_s%g_t%g", s, t);
            ctx.rep.add_verdict(name, chain.pass, chain.lower, chain.upper, chain.slack);
            lower.push_back(chain.lower);
            middle.push_back(chain.middle);
            upper.push_back(chain.upper);
        }
    ctx.rep.results["lower"] = lower;
    ctx.rep.results["middle"] = middle;
    ctx.rep.results["upper"] = upper;
    save_grid_artifacts(ctx, u, "sandwich_u");
}

void cmd_energy(Context& ctx) {
    auto grid = make_grid(ctx);
    GridFunction u = sampled_field(ctx, grid, "energy.u", "x0^2+x1^2+x2^2+x3^2-1");
    Weight chi = make_weight(ctx.cfg.get_string("weight.spec", "p1"));
    EnergyOptions opts;
    opts.with_profile = ctx.cfg.get_bool("energy.profile", false);
    EnergyReport rep = energy_chi(u, chi, opts);
    ctx.rep.results["weight"] = chi.name();
    ctx.rep.results["e_chi"] = rep.e_chi;
    if (rep.has_profile) {
        ctx.rep.results["hat_e"] = rep.hat_e;
        ctx.rep.results["profile_t"] = rep.profile_t;
        ctx.rep.results["profile_cap"] = rep.profile_cap;
        if (!ctx.out_dir.empty()) {
            std::ofstream csv(ctx.out_dir + "/profile.csv");
            csv << "t,cap\n";
            for (size_t i = 0; i < rep.profile_t.size(); ++i) {
                char line[64];
                std::snprintf(line, sizeof line, "%.17g,%.17g\n", rep.profile_t[i],
                              rep.profile_cap[i]);
                csv << line;
            }
        }
    }
    ctx.rep.add_verdict("energy_finite", rep.finite, rep.e_chi, 0.0, 0.0);
}

void cmd_condition4(Context& ctx) {
    auto grid = make_grid(ctx);
    GridFunction phi = sampled_field(ctx, grid, "condition4.phi", "x0^2+x1^2+x2^2+x3^2-1");
    MeasureGrid mu = ma_measure(phi);
    Weight chi = make_weight(ctx.cfg.get_string("weight.spec", "p1"));
    Condition4Options opts;
    opts.samples = ctx.cfg.get_int("condition4.samples", 16);
    opts.seed = ctx.seed;
    auto res = estimate_condition4(mu, chi, opts);
    ctx.rep.results["a_est"] = res.a_est;
    ctx.rep.results["used_samples"] = res.used_samples;
    ctx.rep.results["skipped"] = res.skipped;
    ctx.rep.results["best_numerator"] = res.best_numerator;
    ctx.rep.results["best_denominator"] = res.best_denominator;
    ctx.rep.add_verdict("estimate_finite", std::isfinite(res.a_est) && res.a_est >= 0.0,
                        res.a_est, 0.0, 0.0);
}

void cmd_solve_ma(Context& ctx) {
    auto grid = make_grid(ctx);
    GridFunction dens = sampled_field(ctx, grid, "solvema.density", "2");
    MeasureGrid mu{grid, std::vector<double>(static_cast<size_t>(grid->node_count()), 0.0)};
    for (int64_t p : grid->interior()) {
        if (dens[p] < -1e-12) throw InvalidInput("solvema.density must be nonnegative");
        mu.density[static_cast<size_t>(p)] = std::max(0.0, dens[p]);
    }
    Weight chi = make_weight(ctx.cfg.get_string("weight.spec", "p1"));
    MaSolveReport rep = solve_ma_energy(mu, chi);
    double tol = 1e-8 * (1.0 + mu.max_density());
    ctx.rep.results["e_chi"] = rep.energy.e_chi;
    ctx.rep.results["levels"] = rep.levels;
    ctx.rep.results["min_phi"] = rep.phi.min_interior();
    ctx.rep.results["residual"] = rep.residual;
    ctx.rep.add_verdict("truncations_nonincreasing", rep.monotone, rep.monotone_slack,
                        0.0, 1e-8);
    ctx.rep.add_verdict("measure_recovered", rep.residual <= tol, rep.residual, 0.0, tol);
    save_grid_artifacts(ctx, rep.phi, "solve_ma_phi");
}

void cmd_verify_all(Context& ctx) {
    std::mt19937_64 rng(ctx.seed);

    {  // Moore determinant internal consistency, n = 1..3.
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n)
            for (int k = 0; k < 10; ++k) {
                auto a = random_hyperhermitian(n, rng);
                double m = moore_det(a);
                std::complex<double> d = complexify(a).determinant();
                double scale = std::max(1.0, std::abs(d));
                worst = std::max(worst, std::abs(m * m - d.real()) / scale);
            }
        ctx.rep.add_verdict("moore_sq_matches_complexification", worst <= 1e-8, worst,
                            0.0, 1e-8);
    }
    {  // 2x2 closed form a*b - |q|^2.
        std::uniform_real_distribution<double> dist(-1.5, 1.5);
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            double a = dist(rng), b = dist(rng);
            Quaternion q(dist(rng), dist(rng), dist(rng), dist(rng));
            auto m = HyperHermitianMatrix::from_entries(
                {{Quaternion(a), q}, {q.conj(), Quaternion(b)}});
            worst = std::max(worst,
                             std::abs(moore_det(m) - (a * b - q.norm_sq())));
        }
        ctx.rep.add_verdict("moore_2x2_closed_form", worst <= 1e-10, worst, 0.0, 1e-10);
    }
    {  // ddJ of the reference potential is the reference form.
        double worst = 0.0;
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int n = 1; n <= 3; ++n) {
            std::vector<double> p(static_cast<size_t>(4 * n));
            for (auto& c : p) c = dist(rng);
            auto form = ddj_coefficients(reference_potential(n), p);
            for (int i = 0; i < 2 * n; ++i)
                for (int j = 0; j < 2 * n; ++j) {
                    std::complex<double> want =
                        (j == i + 1 && i % 2 == 0) ? 1.0 : ((i == j + 1 && j % 2 == 0) ? -1.0 : 0.0);
                    worst = std::max(worst, std::abs(form.c(i, j) - want));
                }
        }
        ctx.rep.add_verdict("reference_form_identity", worst <= 1e-10, worst, 0.0, 1e-10);
    }
    {  // 4 * trace of the pair coefficients equals the Laplacian.
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        std::uniform_int_distribution<int> pick(0, 7);
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            int n = 1 + k % 2;
            Polynomial poly(4 * n);
            for (int t = 0; t < 6; ++t) {
                Polynomial mono = Polynomial::constant(4 * n, coef(rng));
                for (int d = 0; d < 3; ++d)
                    mono *= Polynomial::variable(4 * n, pick(rng) % (4 * n));
                poly += mono;
            }
            ScalarField u = make_polynomial_field(n, std::move(poly));
            std::vector<double> p(static_cast<size_t>(4 * n));
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            for (auto& c : p) c = dist(rng);
            double lap = laplacian(u, p);
            double gap = std::abs(4.0 * ddj_coefficients(u, p).trace_pairs().real() - lap);
            worst = std::max(worst, gap / (1.0 + std::abs(lap)));
        }
        ctx.rep.add_verdict("trace_bridge", worst <= 1e-8, worst, 0.0, 1e-8);
    }
    {  // MA density of the squared norm is 2.
        ScalarField u = parse_field("x0^2+x1^2+x2^2+x3^2", 1);
        std::vector<double> pt{0.3, -0.2, 0.1, 0.4};
        double val = ma_density(u, pt);
        ctx.rep.add_verdict("ma_density_squared_norm", std::abs(val - 2.0) <= 1e-10,
                            val, 2.0, 1e-10);
    }

    auto grid = make_grid(ctx);
    double h = grid->spacing();
    ScalarField quad = parse_field("x0^2+x1^2+x2^2+x3^2-1", 1);
    GridFunction exact = GridFunction::sample(grid, quad);

    {  // Quadratic Dirichlet data reproduced through the solver.
        MeasureGrid f = make_constant_measure(grid, 2.0);
        GridFunction g(grid);
        g.set_boundary(quad);
        GridFunction u = solve_dirichlet(f, g);
        double worst = 0.0;
        for (int64_t p : grid->interior())
            worst = std::max(worst, std::abs(u[p] - exact[p]));
        ctx.rep.add_verdict("dirichlet_quadratic_exact", worst <= 1e-7, worst, 0.0, 1e-7);
    }
    {  // Comparison principle on a nested pair.
        GridFunction u2(grid);
        for (int64_t p : grid->interior()) u2[p] = 2.0 * exact[p];
        for (int64_t p : grid->boundary()) u2[p] = 2.0 * exact[p];
        auto cmp = verify_comparison(u2, exact);
        ctx.rep.add_verdict("comparison_principle", cmp.pass, cmp.lhs, cmp.rhs, cmp.slack);
    }
    {  // Envelope of a subharmonic obstacle is the obstacle, mass on contact.
        EnvelopeResult env = envelope(exact);
        double diff = 0.0;
        for (int64_t p : grid->interior())
            diff = std::max(diff, std::abs(env.envelope[p] - exact[p]));
        ctx.rep.add_verdict("envelope_subharmonic_identity", diff <= 1e-12, diff, 0.0,
                            1e-12);
        ctx.rep.add_verdict("envelope_subharmonic_mass", env.off_contact_mass == 0.0,
                            env.off_contact_mass, 0.0, 0.0);
    }
    {  // Pit obstacle: mass concentrates on the contact set.
        GridFunction pit = pit_obstacle(grid, 0.8, 8.0, {0.0, 0.0, 0.0, 0.0});
        auto conc = mass_concentration_check(pit);
        ctx.rep.add_verdict("envelope_pit_concentration", conc.pass, conc.ratio,
                            conc.bound, 0.0);
    }
    {  // Condenser capacity against the closed form, and monotonicity.
        CapacityOptions copts;
        copts.seed = ctx.seed;
        double want = pi * pi / 3.0;
        auto fit = capacity_ball(grid, {0, 0, 0, 0}, 0.5, copts);
        double rel = std::abs(fit.value - want) / want;
        ctx.rep.add_verdict("capacity_condenser", rel <= 0.05, fit.value, want, 0.05);
        auto inner = capacity(grid, ball_nodes(*grid, {0, 0, 0, 0}, 0.5), copts);
        ctx.rep.add_verdict("capacity_sup_bound", inner.sup_pass, inner.sup_gap, 0.0,
                            inner.sup_slack);
        auto small = capacity(grid, ball_nodes(*grid, {0, 0, 0, 0}, 0.3), copts);
        ctx.rep.add_verdict("capacity_monotone", small.value <= inner.value + 1e-9,
                            small.value, inner.value, 1e-9);
    }
    {  // Sandwich chain on the boundary-zero quadratic.
        GridFunction u = to_boundary_zero(exact);
        auto chain = capacity_sandwich_check(u, 0.3, 0.2);
        ctx.rep.add_verdict("capacity_sandwich", chain.pass, chain.lower, chain.upper,
                            chain.slack);
    }
    {  // Linear-weight energy against the closed form.
        Weight chi1 = make_power_weight(1.0);
        double e = energy_chi(exact, chi1).e_chi;
        double want = pi * pi / 3.0;
        double rel = std::abs(e - want) / want;
        ctx.rep.add_verdict("energy_closed_form", rel <= 0.10, e, want, 0.10);
    }
    {  // Sub-homogeneity of the shipped concave weights.
        for (const auto& spec : {"p1", "p2", "p3", "log"}) {
            auto srep = check_subhomogeneity(make_weight(spec), 2000, ctx.seed + 7);
            ctx.rep.add_verdict(std::string("subhomogeneity_") + spec, srep.pass,
                                srep.worst_relative_violation, 0.0, 1e-9);
        }
    }
    {  // Domination constant estimate is finite; the solve loop closes.
        MeasureGrid mu = ma_measure(exact);
        Condition4Options c4;
        c4.samples = 8;
        c4.seed = ctx.seed + 11;
        auto est = estimate_condition4(mu, make_power_weight(1.0), c4);
        ctx.rep.add_verdict("condition4_finite",
                            std::isfinite(est.a_est) && est.a_est > 0.0, est.a_est, 0.0,
                            0.0);
        auto sol = solve_ma_energy(mu, make_power_weight(1.0));
        double worst = 0.0;
        GridFunction u0 = to_boundary_zero(exact);
        for (int64_t p : grid->interior())
            worst = std::max(worst, std::abs(sol.phi[p] - u0[p]));
        ctx.rep.add_verdict("solve_ma_recovery", worst <= 5.0 * h * h, worst, 0.0,
                            5.0 * h * h);
    }
}

using Handler = void (*)(Context&);

const std::vector<std::pair<std::string, Handler>>& dispatch_table() {
    static const std::vector<std::pair<std::string, Handler>> table = {
        {"moore-det", cmd_moore_det},   {"ma-eval", cmd_ma_eval},
        {"qpsh-check", cmd_qpsh_check}, {"solve-dirichlet", cmd_solve_dirichlet},
        {"envelope", cmd_envelope},     {"capacity", cmd_capacity},
        {"sandwich", cmd_sandwich},     {"energy", cmd_energy},
        {"condition4", cmd_condition4}, {"solve-ma", cmd_solve_ma},
        {"verify-all", cmd_verify_all},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : dispatch_table()) v.push_back(name);
        return v;
    }();
    return names;
}

RunReport run_command(const RunRequest& req) {
    Handler handler = nullptr;
    for (const auto& [name, fn] : dispatch_table())
        if (name == req.command) handler = fn;
    if (!handler) throw InvalidInput("unknown command '" + req.command + "'");

    RunReport rep;
    rep.command = req.command;
    rep.config_digest = fnv1a_digest(req.config.source_text());
    rep.seed = req.seed.value_or(req.config.get_u64("run.seed", default_seed));
    int grid_n = req.grid_n.value_or(req.config.get_int("grid.n", 17));

    if (!req.out_dir.empty()) std::filesystem::create_directories(req.out_dir);

    Context ctx{req.config, req.out_dir, rep.seed, grid_n, rep};
    auto t0 = std::chrono::steady_clock::now();
    handler(ctx);
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!req.out_dir.empty()) rep.save(req.out_dir + "/report.json");
    return rep;
}

}  // namespace qpot
