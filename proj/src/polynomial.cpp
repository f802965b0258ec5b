#include "qpot/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "qpot/errors.hpp"

namespace qpot {

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw InvalidInput("Polynomial: nvars must be >= 1");
}

Polynomial Polynomial::constant(int nvars, double c) {
    Polynomial p(nvars);
    if (c != 0.0) p.terms_.push_back({c, std::vector<int>(nvars, 0)});
    return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
    Polynomial p(nvars);
    if (index < 0 || index >= nvars) throw InvalidInput("Polynomial: variable index out of range");
    std::vector<int> e(nvars, 0);
    e[index] = 1;
    p.terms_.push_back({1.0, std::move(e)});
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& t : terms_) {
        int s = 0;
        for (int e : t.exps) s += e;
        d = std::max(d, s);
    }
    return d;
}

double Polynomial::eval(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& t : terms_) {
        double m = t.coef;
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < t.exps[v]; ++k) m *= x[v];
        acc += m;
    }
    return acc;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw InvalidInput("Polynomial: derivative index out of range");
    Polynomial out(nvars_);
    for (const auto& t : terms_) {
        if (t.exps[var] == 0) continue;
        Term d = t;
        d.coef *= d.exps[var];
        d.exps[var] -= 1;
        out.terms_.push_back(std::move(d));
    }
    out.normalize();
    return out;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw InvalidInput("Polynomial: negative exponent");
    Polynomial acc = Polynomial::constant(nvars_, 1.0);
    for (int i = 0; i < k; ++i) acc *= *this;
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& r) {
    if (r.nvars_ != nvars_) throw InvalidInput("Polynomial: mixed variable counts");
    terms_.insert(terms_.end(), r.terms_.begin(), r.terms_.end());
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& r) {
    if (r.nvars_ != nvars_) throw InvalidInput("Polynomial: mixed variable counts");
    for (const auto& t : r.terms_) terms_.push_back({-t.coef, t.exps});
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& r) {
    if (r.nvars_ != nvars_) throw InvalidInput("Polynomial: mixed variable counts");
    std::vector<Term> out;
    out.reserve(terms_.size() * r.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : r.terms_) {
            Term t{a.coef * b.coef, a.exps};
            for (int v = 0; v < nvars_; ++v) t.exps[v] += b.exps[v];
            out.push_back(std::move(t));
        }
    terms_ = std::move(out);
    normalize();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (auto& t : terms_) t.coef *= s;
    normalize();
    return *this;
}

void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exps < b.exps; });
    std::vector<Term> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().exps == t.exps)
            out.back().coef += t.coef;
        else
            out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
    terms_ = std::move(out);
}

} // namespace qpot
