#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qpot {

// Increasing weight chi: (-inf, 0] -> (-inf, 0] with chi(0) = 0, used to
// define weighted Monge-Ampere energies. Two families:
//   Convex               (convex decreasing modulus; includes chi_p with p < 1)
//   SubhomogeneousConcave (|t chi'(t)| <= M |chi(t)|; includes chi_p, p >= 1)
class Weight {
public:
    enum class Kind { Convex, SubhomogeneousConcave };

    Weight(std::string name, Kind kind, double m,
           std::function<double(double)> chi_fn,
           std::function<double(double)> chi_prime_fn);

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }
    // Sub-homogeneity exponent: -chi(c t) <= -c^M chi(t) for c >= 1, t <= 0.
    // Meaningful for SubhomogeneousConcave; for Convex members it is the
    // value of sup |t chi'| / |chi| over the sample used to fit it.
    double m() const { return m_; }

    // Both evaluators require t <= 0 (a small positive roundoff is clamped)
    // and throw OutOfModelError if the result overflows to non-finite.
    double chi(double t) const;
    double chi_prime(double t) const;

private:
    std::string name_;
    Kind kind_;
    double m_;
    std::function<double(double)> chi_;
    std::function<double(double)> chi_prime_;
};

// chi_p(t) = -(-t)^p, p > 0. Convex for p < 1, sub-homogeneous concave with
// M = p for p >= 1 (p = 1 is the linear boundary case, equality throughout).
Weight make_power_weight(double p);

// chi(t) = -(-t) * log(1 + (-t)), a genuinely sub-homogeneous concave member
// with M = 2: |t chi'| / |chi| = 1 + s/((1+s) log(1+s)) <= 2 for s = -t > 0.
Weight make_log_weight();

// Named lookup used by the CLI config: "p0.5", "p1", "p2", "p3", "log".
Weight make_weight(const std::string& spec);

struct SubhomogeneityReport {
    int samples = 0;
    // max over samples of (-chi(c t)) - c^M (-chi(t)), scaled by |chi(c t)|
    double worst_relative_violation = 0.0;
    double worst_t = 0.0;
    double worst_c = 0.0;
    bool pass = false;
};

// Samples (t, c) with t <= 0, c >= 1 over a broad light-tailed range and
// checks -chi(c t) <= -c^M chi(t).
SubhomogeneityReport check_subhomogeneity(const Weight& w, int samples,
                                          std::uint64_t seed);

}  // namespace qpot
