#pragma once

#include <cstdint>
#include <vector>

#include "qpot/grid.hpp"

namespace qpot {

// Discrete Monge-Ampere measure of a grid potential at n = 1: density is
// Delta_h u / 4 per interior node. Raw densities in (-neg_tol, 0) are clamped
// to 0 where neg_tol = 1e-6 * |u|_inf / h^2; a raw density at or below
// -neg_tol on a function claimed subharmonic throws SolverError. min_raw, when
// given, receives the minimum raw density over interior nodes before clamping
// (0 when the interior is empty).
MeasureGrid ma_measure(const GridFunction& u, bool expect_subharmonic = true,
                       double* min_raw = nullptr);

struct SolveOptions {
    double tol = -1.0;     // < 0: auto = 1e-8 * (1 + max density)
    double omega = -1.0;   // < 0: auto near-optimal
    int max_sweeps = 1000000;
    const GridFunction* warm_start = nullptr; // interior initial values
};

// Solves Delta_h u = 4 * f on interior nodes with Dirichlet data g on boundary
// nodes, to residual |Delta_h u - 4 f|_inf <= tol.
GridFunction solve_dirichlet(const MeasureGrid& f, const GridFunction& g,
                             const SolveOptions& opts = {});

struct ObstacleOptions {
    double omega = 1.5;         // fixed projected-sweep relaxation factor
    double tol_change = 1e-10;  // per-sweep max change stopping rule
    int max_sweeps = 1000000;
};

// Largest discretely subharmonic minorant of u with u's own boundary values.
GridFunction project_subharmonic(const GridFunction& u, const ObstacleOptions& opts = {});

// u^mask: equals u outside the mask; inside it is the discrete harmonic
// extension of u clipped to stay >= u. Mask nodes and their 8 neighbors must
// all be interior. For subharmonic u the result is subharmonic, >= u, and
// discretely harmonic on the open set where it exceeds u.
GridFunction maximal_extension(const GridFunction& u, const std::vector<int64_t>& mask);

// ma_measure(max(u, -j)) restricted to the node set {u > -j}.
MeasureGrid truncate_measure(const GridFunction& u, double level_j,
                             bool expect_subharmonic = true);

struct ComparisonReport {
    double lhs = 0.0;   // mass of ma_measure(v) on {u < v}
    double rhs = 0.0;   // mass of ma_measure(u) on {u < v}
    double slack = 0.0; // allowed overshoot = slack_c * h * max total mass
    int64_t node_count = 0;
    bool pass = false;
};

// Discrete comparison principle check on S = {u < v}: mass_v(S) <= mass_u(S)
// up to slack. Requires u >= v on boundary nodes.
ComparisonReport verify_comparison(const GridFunction& u, const GridFunction& v,
                                   double slack_c = 10.0);

// Interior nodes where u < threshold.
std::vector<int64_t> sublevel_nodes(const GridFunction& u, double threshold);

// Interior nodes with |x - center| <= r.
std::vector<int64_t> ball_nodes(const Grid4& g, const std::array<double, 4>& center, double r);

} // namespace qpot
