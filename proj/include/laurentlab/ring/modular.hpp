#pragma once

#include <cstdint>
#include <vector>

#include "laurentlab/ring/polynomial.hpp"

namespace laurentlab::ring::modp {

/// The Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b)
{
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(r & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
    std::uint64_t s = lo + hi;
    return s >= kPrime ? s - kPrime : s;
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b)
{
    return a >= b ? a - b : a + kPrime - b;
}

std::uint64_t pow(std::uint64_t b, std::int64_t e);
std::uint64_t inv(std::uint64_t a);
std::uint64_t reduce(const mpz_class& c);

/// Value of p at a point of (Z/p)^n, indexed by variable. Throws
/// DivisionByZero when a coordinate with a negative exponent is zero.
std::uint64_t evaluate(const LaurentPolynomial& p, const std::vector<std::uint64_t>& point);

} // namespace laurentlab::ring::modp
