#include "qpot/field_parser.hpp"

#include <cctype>
#include <string>

namespace qpot {

namespace {

class Parser {
  public:
    Parser(const std::string& s, int nvars) : s_(s), nvars_(nvars) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected input");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw FieldParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[nodiscard]] char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }

    Polynomial factor() {
        if (eat('-')) return -factor();
        Polynomial b = base();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected integer exponent");
            b = b.pow(static_cast<int>(read_uint()));
        }
        return b;
    }

    Polynomial base() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == 'x') {
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected variable index");
            const unsigned long idx = read_uint();
            if (idx >= static_cast<unsigned long>(nvars_)) fail("variable index out of range");
            return Polynomial::variable(nvars_, static_cast<int>(idx));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        fail("expected number, variable or '('");
    }

    Polynomial number() {
        const double num = read_decimal();
        if (eat('/')) {
            skip_ws();
            if (pos_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                       s_[pos_] == '.'))
                fail("expected denominator");
            const double den = read_decimal();
            if (den == 0.0) fail("zero denominator");
            return Polynomial::constant(nvars_, num / den);
        }
        return Polynomial::constant(nvars_, num);
    }

    unsigned long read_uint() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected digits");
        return std::stoul(s_.substr(start, pos_ - start));
    }

    double read_decimal() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && s_[start] == '.')) fail("expected number");
        return std::stod(s_.substr(start, pos_ - start));
    }

    const std::string& s_;
    int nvars_;
    size_t pos_ = 0;
};

} // namespace

ScalarField parse_field(const std::string& expr, int n) {
    if (n < 1) throw InvalidInput("parse_field: n must be >= 1");
    Parser p(expr, 4 * n);
    return make_polynomial_field(n, p.parse());
}

} // namespace qpot
