#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "laurentlab/ring/polynomial.hpp"

namespace laurentlab::ring {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message);
    /// Zero-based character offset of the offending input.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Canonical text: terms in descending graded-lex order joined by " + " and
/// " - ", each term as coeff*var^exp*var with unit coefficients and unit
/// exponents elided, e.g. "x0^2*x1^-1 - 3*x2 + 1". The zero polynomial is "0".
std::string to_string(const LaurentPolynomial& p);

/// Reads the canonical grammar. Terms may come in any order and repeat; a
/// minus sign between terms must be surrounded by blanks because variable
/// names may contain '-'.
LaurentPolynomial parse_polynomial(const TablePtr& table, std::string_view text);

} // namespace laurentlab::ring
