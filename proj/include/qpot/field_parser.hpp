#pragma once

#include <cstddef>
#include <string>

#include "qpot/errors.hpp"
#include "qpot/field.hpp"

namespace qpot {

struct FieldParseError : InvalidInput {
    size_t offset; // 0-based position in the expression

    FieldParseError(const std::string& msg, size_t off)
        : InvalidInput(msg + " at offset " + std::to_string(off)), offset(off) {}
};

// Parses a polynomial expression in x0..x{4n-1} with +, -, *, ^, parentheses
// and rational coefficients (integers, decimals, or a/b fractions). Returns a
// polynomial-backed field with exact derivatives. Throws FieldParseError with
// the offending offset on malformed input.
ScalarField parse_field(const std::string& expr, int n);

} // namespace qpot
