#include "qpot/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "qpot/errors.hpp"
#include "qpot/relax.hpp"

namespace qpot {

namespace {

void check_envelope_input(const GridFunction& f, const GridFunction& boundary) {
    const auto& grid = f.grid();
    if (!boundary.grid()->same(*grid)) throw InvalidInput("envelope: grid mismatch");
    for (int64_t idx : grid->interior())
        if (f[idx] > 1e-12) throw InvalidInput("envelope: obstacle must satisfy f <= 0");
    for (int64_t idx : grid->boundary())
        if (boundary[idx] > f[idx] + 1e-12)
            throw InvalidInput("envelope: infeasible boundary data (boundary > f)");
}

} // namespace

EnvelopeResult envelope(const GridFunction& f, const GridFunction& boundary,
                        const ObstacleOptions& opts) {
    check_envelope_input(f, boundary);
    const auto& grid = f.grid();
    GridFunction v = f;
    for (int64_t idx : grid->boundary()) v[idx] = boundary[idx];
    const SweepResult sr = projected_sor(v, nullptr, f.values(), grid->interior(), opts.omega,
                                         opts.tol_change, opts.max_sweeps);
    EnvelopeResult out{std::move(v), {}, 0.0, 0.0, 0.0, sr.sweeps, sr.residual};
    out.contact_eps = 10.0 * grid->spacing() * grid->spacing() * f.norm_inf();
    out.contact.assign(static_cast<size_t>(grid->node_count()), 0);
    const MeasureGrid m = ma_measure(out.envelope);
    const double vol = grid->cell_volume();
    for (int64_t idx : grid->interior()) {
        const double mass = m.density[static_cast<size_t>(idx)] * vol;
        out.total_mass += mass;
        if (out.envelope[idx] >= f[idx] - out.contact_eps)
            out.contact[static_cast<size_t>(idx)] = 1;
        else
            out.off_contact_mass += mass;
    }
    return out;
}

EnvelopeResult envelope(const GridFunction& f, const ObstacleOptions& opts) {
    return envelope(f, f, opts);
}

GridFunction envelope_lift_min(const GridFunction& f, const GridFunction& boundary,
                               double tol_change, int max_sweeps) {
    check_envelope_input(f, boundary);
    const auto& grid = f.grid();
    const auto& s = grid->strides();
    GridFunction w = f;
    for (int64_t idx : grid->boundary()) w[idx] = boundary[idx];
    std::vector<double> next(w.values());
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        const std::vector<double>& v = w.values();
        double change = 0.0;
        for (int64_t idx : grid->interior()) {
            const size_t i = static_cast<size_t>(idx);
            double nb = 0.0;
            for (int m = 0; m < 4; ++m)
                nb += v[static_cast<size_t>(idx + s[m])] + v[static_cast<size_t>(idx - s[m])];
            const double cand = std::min(f[idx], 0.125 * nb);
            change = std::max(change, std::abs(cand - v[i]));
            next[i] = cand;
        }
        w.values().swap(next);
        if (change <= tol_change) return w;
    }
    throw SolverError("envelope_lift_min: no convergence within sweep cap");
}

std::vector<EnvelopeResult> envelope_monotone_limit(const std::vector<GridFunction>& f_seq,
                                                    const ObstacleOptions& opts) {
    if (f_seq.empty()) throw InvalidInput("envelope_monotone_limit: empty sequence");
    for (size_t k = 1; k < f_seq.size(); ++k) {
        if (!f_seq[k].grid()->same(*f_seq[0].grid()))
            throw InvalidInput("envelope_monotone_limit: grid mismatch");
        for (int64_t idx : f_seq[0].grid()->interior())
            if (f_seq[k][idx] > f_seq[k - 1][idx] + 1e-12)
                throw InvalidInput("envelope_monotone_limit: sequence not nonincreasing");
    }
    std::vector<EnvelopeResult> out;
    out.reserve(f_seq.size());
    for (const GridFunction& f : f_seq) out.push_back(envelope(f, opts));
    return out;
}

MassConcentrationReport mass_concentration_check(const GridFunction& f,
                                                 const ObstacleOptions& opts) {
    const EnvelopeResult er = envelope(f, opts);
    const auto& grid = f.grid();
    MassConcentrationReport rep;
    rep.total_mass = er.total_mass;
    rep.off_contact_mass = er.off_contact_mass;
    rep.ratio = er.total_mass > 0.0 ? er.off_contact_mass / er.total_mass : 0.0;
    rep.bound = 10.0 * grid->spacing();
    rep.interior_nodes = static_cast<int64_t>(grid->interior().size());
    for (int64_t idx : grid->interior())
        rep.contact_nodes += er.contact[static_cast<size_t>(idx)];
    rep.pass = rep.ratio <= rep.bound;
    return rep;
}

} // namespace qpot
