#include "qpot/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <utility>

#include "qpot/errors.hpp"

namespace qpot {

namespace {

double clamp_domain(double t) {
    if (t > 1e-9) throw InvalidInput("weight evaluated at positive argument");
    return std::min(t, 0.0);
}

}  // namespace

Weight::Weight(std::string name, Kind kind, double m,
               std::function<double(double)> chi_fn,
               std::function<double(double)> chi_prime_fn)
    : name_(std::move(name)),
      kind_(kind),
      m_(m),
      chi_(std::move(chi_fn)),
      chi_prime_(std::move(chi_prime_fn)) {}

double Weight::chi(double t) const {
    double v = chi_(clamp_domain(t));
    if (!std::isfinite(v)) throw OutOfModelError("weight chi overflow at t = " + std::to_string(t));
    return v;
}

double Weight::chi_prime(double t) const {
    double v = chi_prime_(clamp_domain(t));
    if (!std::isfinite(v)) throw OutOfModelError("weight chi' overflow at t = " + std::to_string(t));
    return v;
}

Weight make_power_weight(double p) {
    if (!(p > 0.0)) throw InvalidInput("power weight requires p > 0");
    auto kind = p < 1.0 ? Weight::Kind::Convex : Weight::Kind::SubhomogeneousConcave;
    char buf[32];
    std::snprintf(buf, sizeof buf, "p%g", p);
    return Weight(
        buf, kind, p,
        [p](double t) { return -std::pow(-t, p); },
        [p](double t) {
            // chi'(t) = p (-t)^{p-1}; infinite at t = 0 for p < 1, which the
            // evaluator reports as overflow rather than clipping.
            return p * std::pow(-t, p - 1.0);
        });
}

Weight make_log_weight() {
    // chi(t) = -s log(1+s) with s = -t; chi'(t) = log(1+s) + s/(1+s).
    return Weight(
        "log", Weight::Kind::SubhomogeneousConcave, 2.0,
        [](double t) { return t * std::log1p(-t); },
        [](double t) {
            double s = -t;
            return std::log1p(s) + s / (1.0 + s);
        });
}

Weight make_weight(const std::string& spec) {
    if (spec == "log") return make_log_weight();
    if (!spec.empty() && spec.front() == 'p') {
        try {
            size_t used = 0;
            double p = std::stod(spec.substr(1), &used);
            if (used == spec.size() - 1) return make_power_weight(p);
        } catch (const std::exception&) {
        }
    }
    throw InvalidInput("unknown weight spec '" + spec +
                       "' (expected p<exponent> or log)");
}

SubhomogeneityReport check_subhomogeneity(const Weight& w, int samples,
                                          std::uint64_t seed) {
    SubhomogeneityReport rep;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_t(std::log(1e-6), std::log(1e6));
    std::uniform_real_distribution<double> log_c(0.0, std::log(100.0));
    double m = w.m();
    for (int k = 0; k < samples; ++k) {
        double t = -std::exp(log_t(rng));
        double c = std::exp(log_c(rng));
        double lhs = -w.chi(c * t);
        double rhs = std::pow(c, m) * (-w.chi(t));
        double scale = std::max(lhs, 1e-300);
        double rel = (lhs - rhs) / scale;
        if (rel > rep.worst_relative_violation) {
            rep.worst_relative_violation = rel;
            rep.worst_t = t;
            rep.worst_c = c;
        }
    }
    rep.pass = rep.worst_relative_violation <= 1e-9;
    return rep;
}

}  // namespace qpot
