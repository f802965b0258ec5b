#pragma once

#include <cstdint>
#include <vector>

#include "qpot/grid.hpp"
#include "qpot/potential.hpp"

namespace qpot {

struct EnvelopeResult {
    GridFunction envelope;
    std::vector<uint8_t> contact; // 1 at interior nodes with P(f) >= f - contact_eps
    double contact_eps = 0.0;     // 10 * h^2 * |f|_inf
    double off_contact_mass = 0.0;
    double total_mass = 0.0;
    int iterations = 0;
    double final_change = 0.0;
};

// Largest discretely subharmonic minorant of the obstacle f with the given
// boundary data (default overload: f's own boundary values). Requires f <= 0
// at interior nodes and boundary <= f on boundary nodes; boundary-node values
// of f only serve as default Dirichlet data and may have either sign.
EnvelopeResult envelope(const GridFunction& f, const GridFunction& boundary,
                        const ObstacleOptions& opts = {});
EnvelopeResult envelope(const GridFunction& f, const ObstacleOptions& opts = {});

// Independent reference algorithm: damped Jacobi iteration of
// w <- min(f, neighbor average), started at the obstacle. Same fixpoint as the
// projected-sweep route; used to cross-check it.
GridFunction envelope_lift_min(const GridFunction& f, const GridFunction& boundary,
                               double tol_change = 2e-12, int max_sweeps = 4000000);

// Envelopes of a pointwise nonincreasing obstacle sequence; throws on
// non-monotone input. Results are nonincreasing as well.
std::vector<EnvelopeResult> envelope_monotone_limit(const std::vector<GridFunction>& f_seq,
                                                    const ObstacleOptions& opts = {});

struct MassConcentrationReport {
    double total_mass = 0.0;
    double off_contact_mass = 0.0;
    double ratio = 0.0; // off / total (0 when total is 0)
    double bound = 0.0; // 10 * h
    int64_t contact_nodes = 0;
    int64_t interior_nodes = 0;
    bool pass = false;
};

// Checks that the Monge-Ampere mass of P(f) concentrates on the contact set
// {P(f) = f} up to the O(h) bound.
MassConcentrationReport mass_concentration_check(const GridFunction& f,
                                                 const ObstacleOptions& opts = {});

} // namespace qpot
