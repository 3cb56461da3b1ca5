#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "laurentlab/ring/variable_table.hpp"

namespace laurentlab::ring {

struct VarPower {
    VarIndex var;
    std::int32_t exp;

    friend bool operator==(const VarPower&, const VarPower&) = default;
};

/// Laurent monomial stored sparsely: (variable, exponent) pairs sorted by
/// variable index with every exponent nonzero. The empty monomial is 1.
class Monomial {
public:
    using Storage = boost::container::small_vector<VarPower, 8>;

    Monomial() = default;

    static Monomial variable(VarIndex v, std::int32_t exp = 1);
    /// Accepts unsorted input with repeats; merges and drops zero exponents.
    static Monomial from_powers(std::vector<VarPower> powers);
    static Monomial from_powers(std::initializer_list<VarPower> powers)
    {
        return from_powers(std::vector<VarPower>(powers));
    }
    /// Input must be strictly increasing in variable with nonzero exponents.
    static Monomial from_sorted_powers(std::span<const VarPower> powers);

    const Storage& powers() const noexcept { return powers_; }
    bool is_one() const noexcept { return powers_.empty(); }
    std::int64_t degree() const noexcept { return degree_; }
    std::int32_t exponent(VarIndex v) const noexcept;
    bool is_nonnegative() const noexcept;

    Monomial operator*(const Monomial& other) const;
    Monomial operator/(const Monomial& other) const;
    Monomial pow(std::int64_t e) const;
    Monomial inverse() const { return pow(-1); }

    /// True when other / *this has no negative exponent.
    bool divides(const Monomial& other) const noexcept;

    /// Componentwise minimum / maximum of exponents (absent variables count as 0).
    static Monomial componentwise_min(const Monomial& a, const Monomial& b);
    static Monomial componentwise_max(const Monomial& a, const Monomial& b);

    std::size_t hash() const noexcept;

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept
    {
        return a.degree_ == b.degree_ && a.powers_ == b.powers_;
    }

private:
    Storage powers_;
    std::int64_t degree_ = 0;

    void recompute_degree() noexcept;
};

/// Graded lexicographic comparison: total degree first, then the exponent of
/// the lowest-indexed variable where the two differ. Returns -1, 0 or 1.
int graded_lex_compare(const Monomial& a, const Monomial& b) noexcept;

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Strictly-descending order predicate for sorting term lists.
struct DescendingGradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept
    {
        return graded_lex_compare(a, b) > 0;
    }
};

} // namespace laurentlab::ring
