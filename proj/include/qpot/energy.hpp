#pragma once

#include <cstdint>
#include <vector>

#include "qpot/capacity.hpp"
#include "qpot/grid.hpp"
#include "qpot/potential.hpp"
#include "qpot/weights.hpp"

namespace qpot {

struct EnergyOptions {
    bool with_profile = false;
    int profile_points = 32;       // geometric t-grid, 1e-3 |u| .. |u|
    CapacityOptions cap;           // used for the profile solves
};

struct EnergyReport {
    double e_chi = 0.0;            // sum of -chi(u) * density * h^4
    bool finite = true;
    bool has_profile = false;
    std::vector<double> profile_t;
    std::vector<double> profile_cap;
    double hat_e = 0.0;            // trapezoid of t * chi'(-t) * Cap({u < -t})
};

// Weighted Monge-Ampere energy of a nonpositive subharmonic grid potential,
// optionally with the capacity profile of its sublevel sets and the capacity
// route energy integral.
EnergyReport energy_chi(const GridFunction& u, const Weight& chi,
                        const EnergyOptions& opts = {});

struct Condition4Options {
    int samples = 32;
    std::uint64_t seed = 1;
    int scale_points = 7;          // geometric scale fan around unit energy
    SolveOptions solve;
};

struct Condition4Result {
    double a_est = 0.0;            // max over samples of integral / max(1, E_chi)
    int used_samples = 0;
    int skipped = 0;
    double best_numerator = 0.0;
    double best_denominator = 1.0;
};

// Certified lower bound on the best constant A in the domination condition
// "integral of -chi(psi) d(mu) <= A max(1, E_chi(psi))": random boundary-zero
// potentials psi (Dirichlet solves of 1-5 nonnegative bumps), each swept over
// a deterministic scale fan centered where E_chi crosses 1, reduced by max.
Condition4Result estimate_condition4(const MeasureGrid& mu, const Weight& chi,
                                     const Condition4Options& opts = {});

struct MaSolveReport {
    GridFunction phi;
    EnergyReport energy;
    std::vector<double> levels;    // truncation heights 1, 2, 4, ...
    std::vector<double> level_mass;
    bool monotone = true;          // phi_j nonincreasing in j
    double monotone_slack = 0.0;
    double residual = 0.0;         // max |density(phi) - density(mu)|
};

// Solves (MA density of phi) = density(mu) with zero boundary data through
// the nonincreasing truncation scheme min(density, j), j doubling, and
// returns the limit potential with its energy. Densities above 1/h^4 are out
// of model (a single cell already holds more mass than the scheme resolves).
MaSolveReport solve_ma_energy(const MeasureGrid& mu, const Weight& chi,
                              const SolveOptions& opts = {});

}  // namespace qpot
