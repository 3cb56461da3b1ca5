#pragma once

#include <optional>
#include <span>
#include <vector>

#include "laurentlab/ring/polynomial.hpp"

namespace laurentlab::ring::detail {

/// Product of two descending term lists using exponent vectors packed into
/// at most 256 bits. Returns nullopt when the exponent ranges do not fit.
std::optional<std::vector<Term>> packed_multiply(std::span<const Term> a, std::span<const Term> b);

} // namespace laurentlab::ring::detail
