#pragma once

#include <map>
#include <memory>
#include <vector>

#include "laurentlab/ring/rational.hpp"

namespace laurentlab::ring {

/// Fixed list of prime (irreducible, non-unit) Laurent polynomials that may
/// appear in denominators.
struct FactorBasis {
    TablePtr table;
    std::vector<LaurentPolynomial> factors;
};
using BasisPtr = std::shared_ptr<const FactorBasis>;

BasisPtr make_basis(TablePtr table, std::vector<LaurentPolynomial> factors);

/// Element of the Laurent ring localized at the basis factors:
/// core * prod factors[j]^exps[j], with core not divisible by any factor.
///
/// Membership of a value in the Laurent ring extended by a set of factors is
/// then a sign check on the exponents. Division is exact or fails with
/// NotDivisible, which is how an iteration reports leaving the ring.
class LocalizedPolynomial {
public:
    explicit LocalizedPolynomial(BasisPtr basis);
    /// Pulls out every basis factor dividing p.
    LocalizedPolynomial(BasisPtr basis, LaurentPolynomial p);

    /// factors[j] itself.
    static LocalizedPolynomial factor(BasisPtr basis, std::size_t j);
    /// core * prod factors^exps, pulling any further factors out of core.
    static LocalizedPolynomial from_parts(BasisPtr basis, LaurentPolynomial core, std::vector<std::int64_t> exps);

    const BasisPtr& basis() const noexcept { return basis_; }
    const LaurentPolynomial& core() const noexcept { return core_; }
    const std::vector<std::int64_t>& exponents() const noexcept { return exps_; }
    bool is_zero() const noexcept { return core_.is_zero(); }

    /// True when every factor exponent is nonnegative.
    bool is_laurent() const noexcept;
    /// Expanded Laurent polynomial; requires is_laurent().
    LaurentPolynomial to_laurent() const;
    /// num / den with den the product of negatively exponented factors.
    Fraction to_fraction() const;

    LocalizedPolynomial pow(std::int64_t e) const;

    friend LocalizedPolynomial operator+(const LocalizedPolynomial& a, const LocalizedPolynomial& b);
    friend LocalizedPolynomial operator-(const LocalizedPolynomial& a, const LocalizedPolynomial& b);
    friend LocalizedPolynomial operator*(const LocalizedPolynomial& a, const LocalizedPolynomial& b);
    /// Exact quotient; throws NotDivisible when the core of b does not divide.
    friend LocalizedPolynomial operator/(const LocalizedPolynomial& a, const LocalizedPolynomial& b);
    friend bool operator==(const LocalizedPolynomial& a, const LocalizedPolynomial& b)
    {
        return a.core_ == b.core_ && a.exps_ == b.exps_;
    }

private:
    BasisPtr basis_;
    LaurentPolynomial core_;
    std::vector<std::int64_t> exps_;

    void extract_factors();
    LaurentPolynomial factor_power(std::size_t j, std::int64_t e) const;
};

/// Reduced quotient equal to v. No gcd is needed: the core is free of the
/// basis factors, which are prime and pairwise non-associate.
RationalFunction to_rational(const LocalizedPolynomial& v);

/// Image of p when every variable of p maps to a value whose core is a signed
/// monomial. Terms are grouped by their factor exponents, so the work is one
/// multiplication by factor powers per group instead of per term.
LocalizedPolynomial substitute_units(const LaurentPolynomial& p, const std::map<VarIndex, LocalizedPolynomial>& values,
                                     const BasisPtr& basis);

} // namespace laurentlab::ring
