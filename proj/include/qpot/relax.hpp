#pragma once

#include <cstdint>
#include <vector>

#include "qpot/grid.hpp"

namespace qpot {

struct SweepResult {
    int sweeps = 0;
    double residual = 0.0; // final residual (sor_solve) or per-sweep change (projected)
};

// Near-optimal over-relaxation factor for the 9-point Laplacian on this grid.
double optimal_omega(const Grid4& g);

// Gauss-Seidel/SOR sweeps in ascending flat-index order solving
// Delta_h u = rhs4 on `active` nodes (all other nodes held fixed). rhs4 may be
// null for the homogeneous problem. Stops when the max residual over active
// nodes is <= tol; throws SolverError after max_sweeps.
SweepResult sor_solve(GridFunction& u, const std::vector<double>* rhs4,
                      const std::vector<int64_t>& active, double omega, double tol,
                      int max_sweeps);

// Projected variant for upper obstacles: after each relaxed update the value
// is clipped to min(candidate, obstacle). Deterministic ascending sweeps; stops
// when the max per-node change in a sweep is <= tol_change.
SweepResult projected_sor(GridFunction& u, const std::vector<double>* rhs4,
                          const std::vector<double>& obstacle,
                          const std::vector<int64_t>& active, double omega,
                          double tol_change, int max_sweeps);

// Max over active nodes of |Delta_h u - rhs4|.
double max_residual(const GridFunction& u, const std::vector<double>* rhs4,
                    const std::vector<int64_t>& active);

// Discrete Laplacian at one node (center + 8 axis neighbors over h^2).
double laplacian_at(const GridFunction& u, int64_t idx);

} // namespace qpot
