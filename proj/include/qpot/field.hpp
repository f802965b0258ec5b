#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>

#include "qpot/polynomial.hpp"

namespace qpot {

// Real-valued field on H^n viewed as R^{4n}. `poly`, when present, provides
// exact partial derivatives of any order; otherwise finite differences apply.
struct ScalarField {
    int n = 1; // quaternionic dimension; the field takes 4n real coordinates
    std::function<double(std::span<const double>)> evaluate;
    std::shared_ptr<const Polynomial> poly;
    std::string smoothness = "smooth";

    [[nodiscard]] int real_dim() const { return 4 * n; }
    [[nodiscard]] bool has_analytic() const { return poly != nullptr; }
    double operator()(std::span<const double> x) const { return evaluate(x); }
};

inline ScalarField make_field(int n, std::function<double(std::span<const double>)> f,
                              std::string smoothness = "smooth") {
    ScalarField u;
    u.n = n;
    u.evaluate = std::move(f);
    u.smoothness = std::move(smoothness);
    return u;
}

inline ScalarField make_polynomial_field(int n, Polynomial p) {
    ScalarField u;
    u.n = n;
    auto sp = std::make_shared<const Polynomial>(std::move(p));
    u.poly = sp;
    u.evaluate = [sp](std::span<const double> x) { return sp->eval(x); };
    u.smoothness = "polynomial";
    return u;
}

} // namespace qpot
