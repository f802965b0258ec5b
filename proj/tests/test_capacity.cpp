#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "qpot/capacity.hpp"
#include "qpot/errors.hpp"
#include "qpot/grid.hpp"
#include "qpot/potential.hpp"

using namespace qpot;

namespace {

constexpr double pi = 3.14159265358979323846;

// Continuum condenser value: ball of radius r inside the ball of radius R.
double condenser_capacity(double r, double R) {
    return pi * pi / (1.0 / (r * r) - 1.0 / (R * R));
}

} // namespace

TEST_CASE("empty set has zero capacity") {
    auto g = Grid4::make_ball(9, 1.0);
    CapacityResult res = capacity(g, {});
    CHECK(res.value == 0.0);
    CHECK(res.set_size == 0);
    CHECK(res.sup_pass);
}

TEST_CASE("sets touching the ghost ring are rejected unless opted in") {
    auto g = Grid4::make_ball(9, 1.0);
    // The lowest interior flat index hugs the boundary of the ball.
    std::vector<int64_t> edge{g->interior().front()};
    CHECK_THROWS_AS(capacity(g, edge), InvalidInput);

    CapacityOptions opts;
    opts.allow_boundary_adjacent = true;
    opts.validate_samples = 0;
    CHECK_NOTHROW(capacity(g, edge, opts));

    // Boundary nodes themselves are never allowed.
    CHECK_THROWS_AS(capacity(g, {g->boundary().front()}, opts), InvalidInput);
}

TEST_CASE("extremal function of a node-set condenser") {
    auto g = Grid4::make_ball(17, 1.0);
    const std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
    auto nodes = ball_nodes(*g, c, 0.5);
    REQUIRE(!nodes.empty());
    CapacityResult res = capacity(g, nodes);

    // -1 on the set, in [-1, 0], zero on the ghost ring, subharmonic.
    for (int64_t idx : nodes) CHECK(res.extremal[idx] == doctest::Approx(-1.0));
    for (int64_t idx : g->interior()) {
        CHECK(res.extremal[idx] >= -1.0 - 1e-12);
        CHECK(res.extremal[idx] <= 1e-12);
    }
    for (int64_t idx : g->boundary()) CHECK(res.extremal[idx] == 0.0);
    CHECK_NOTHROW(ma_measure(res.extremal));

    // The MA mass of the extremal concentrates on the set: the value equals
    // the mass there.
    MeasureGrid m = ma_measure(res.extremal);
    CHECK(res.value == doctest::Approx(m.total_mass()).epsilon(1e-8));
    CHECK(m.mass_on(nodes) == doctest::Approx(m.total_mass()).epsilon(1e-6));

    // Variational sup audit passed with honest samples.
    CHECK(res.sup_pass);
    CHECK(res.sup_gap <= res.sup_slack);

    // Lattice value is within the staircase bias band of the continuum one.
    // A node set inscribes the ball, so the bias is one-sided (too small) and
    // shrinks with h: measured ratios 0.82 / 0.88 / 0.90 at N = 17 / 25 / 33.
    const double want = condenser_capacity(0.5, 1.0);
    CHECK(res.value < want);
    CHECK(res.value >= want * 0.75);
}

TEST_CASE("capacity is monotone in the set") {
    auto g = Grid4::make_ball(17, 1.0);
    const std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
    CapacityOptions opts;
    opts.validate_samples = 0;
    double prev = 0.0;
    for (double r : {0.25, 0.4, 0.55, 0.7}) {
        CapacityResult res = capacity(g, ball_nodes(*g, c, r), opts);
        CHECK(res.value >= prev - 1e-9);
        prev = res.value;
    }

    // Adding a disjoint second ball strictly increases capacity.
    auto small = ball_nodes(*g, {-0.45, 0.0, 0.0, 0.0}, 0.2);
    auto both = small;
    auto other = ball_nodes(*g, {0.45, 0.0, 0.0, 0.0}, 0.2);
    both.insert(both.end(), other.begin(), other.end());
    CHECK(capacity(g, both, opts).value > capacity(g, small, opts).value + 1e-6);
}

TEST_CASE("interface-fitted ball capacity is sharp") {
    auto g = Grid4::make_ball(17, 1.0);
    const std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
    BallCapacityResult fit = capacity_ball(g, c, 0.5);
    const double want = condenser_capacity(0.5, 1.0);
    CHECK(std::abs(fit.value - want) / want <= 0.05);

    // The two interface fluxes agree up to the O(h) cut-arm truncation of the
    // Shortley-Weller stencils (measured 9.6% at N=17, 4.8% at N=33).
    CHECK(std::abs(fit.flux_inner - fit.flux_outer) /
              std::max(fit.flux_inner, fit.flux_outer) <=
          0.12);

    // The fitted extremal interpolates the continuum profile: -1 inside,
    // increasing towards 0 at the domain shell.
    CHECK(fit.extremal[g->index(8, 8, 8, 8)] == doctest::Approx(-1.0));
    double mid = fit.extremal[g->index(8 + 6, 8, 8, 8)]; // |x| = 0.75
    const double cont = -(1.0 / (0.75 * 0.75) - 1.0) / (1.0 / 0.25 - 1.0);
    CHECK(std::abs(mid - cont) <= 0.05);

    // Off-center balls work as long as they stay inside the domain.
    BallCapacityResult off = capacity_ball(g, {0.2, 0.0, 0.0, 0.0}, 0.3);
    CHECK(off.value > 0.0);

    // A ball poking out of the domain is rejected.
    CHECK_THROWS_AS(capacity_ball(g, {0.8, 0.0, 0.0, 0.0}, 0.5), InvalidInput);
}

TEST_CASE("fitted ball capacity converges to the continuum value") {
    const std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
    const double want = condenser_capacity(0.5, 1.0);
    BallCapacityResult f17 = capacity_ball(Grid4::make_ball(17, 1.0), c, 0.5);
    BallCapacityResult f33 = capacity_ball(Grid4::make_ball(33, 1.0), c, 0.5);
    CHECK(std::abs(f33.value - want) < std::abs(f17.value - want));
    CHECK(std::abs(f33.value - want) / want <= 0.02);

    // Interface-flux mismatch also shrinks with h.
    auto gap = [](const BallCapacityResult& f) {
        return std::abs(f.flux_inner - f.flux_outer) / std::max(f.flux_inner, f.flux_outer);
    };
    CHECK(gap(f33) < gap(f17));
    CHECK(gap(f33) <= 0.06);
}

TEST_CASE("sandwich chain for the model potential") {
    auto g = Grid4::make_ball(17, 1.0);
    // u with zero boundary and measure 2 dV: the discrete model potential.
    GridFunction u = solve_dirichlet(make_constant_measure(g, 2.0), GridFunction(g));

    for (double s : {0.3, 0.45}) {
        for (double t : {0.15, 0.3}) {
            SandwichReport rep = capacity_sandwich_check(u, s, t);
            CHECK(rep.pass);
            CHECK_FALSE(rep.vacuous);
            CHECK(rep.lower <= rep.middle + rep.slack);
            CHECK(rep.middle <= rep.upper + rep.slack);
            CHECK(rep.inner_size > 0);
            CHECK(rep.outer_size > 0);
            CHECK(rep.s == s);
            CHECK(rep.t == t);
        }
    }

    // Far below the minimum the chain is vacuous and passes.
    SandwichReport deep = capacity_sandwich_check(u, 5.0, 1.0);
    CHECK(deep.vacuous);
    CHECK(deep.pass);
    CHECK(deep.outer_size == 0);

    // Scaling down the potential scales the chain accordingly and keeps it
    // valid.
    GridFunction half = u;
    for (int64_t idx : g->interior()) half[idx] *= 0.5;
    SandwichReport rep = capacity_sandwich_check(half, 0.2, 0.1);
    CHECK(rep.pass);
    CHECK_FALSE(rep.vacuous);

    // Nonzero boundary values are rejected.
    GridFunction bad = u;
    for (int64_t idx : g->boundary()) bad[idx] = -0.1;
    CHECK_THROWS_AS(capacity_sandwich_check(bad, 0.2, 0.1), InvalidInput);
}
