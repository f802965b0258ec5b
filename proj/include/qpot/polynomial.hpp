#pragma once

#include <span>
#include <vector>

namespace qpot {

// Sparse real polynomial in a fixed number of variables. Terms are kept
// normalized (sorted exponent tuples, like terms merged, zero terms dropped),
// so evaluation and derivatives are deterministic.
class Polynomial {
  public:
    struct Term {
        double coef;
        std::vector<int> exps; // size == nvars
    };

    explicit Polynomial(int nvars);
    static Polynomial constant(int nvars, double c);
    static Polynomial variable(int nvars, int index);

    [[nodiscard]] int nvars() const { return nvars_; }
    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] int degree() const;

    [[nodiscard]] double eval(std::span<const double> x) const;
    [[nodiscard]] Polynomial derivative(int var) const;
    [[nodiscard]] Polynomial pow(int k) const;

    Polynomial& operator+=(const Polynomial& r);
    Polynomial& operator-=(const Polynomial& r);
    Polynomial& operator*=(const Polynomial& r);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= -1.0; }

  private:
    void normalize();

    int nvars_;
    std::vector<Term> terms_;
};

} // namespace qpot
