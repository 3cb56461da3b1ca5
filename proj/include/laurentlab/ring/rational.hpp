#pragma once

#include "laurentlab/ring/polynomial.hpp"

namespace laurentlab::ring {

/// Quotient of Laurent polynomials in lowest terms.
///
/// The denominator is in normal form (positive leading coefficient, no
/// monomial content) and coprime to the numerator, so each value has exactly
/// one representation and equality is componentwise.
class RationalFunction {
public:
    explicit RationalFunction(LaurentPolynomial numerator);

    /// Reduces by the gcd. Throws DivisionByZero for a zero denominator.
    static RationalFunction make(LaurentPolynomial numerator, LaurentPolynomial denominator);
    /// Skips the gcd; the caller guarantees the two are coprime.
    static RationalFunction from_coprime(LaurentPolynomial numerator, LaurentPolynomial denominator);

    const LaurentPolynomial& numerator() const noexcept { return num_; }
    const LaurentPolynomial& denominator() const noexcept { return den_; }
    const TablePtr& table() const noexcept { return num_.table(); }

    bool is_zero() const noexcept { return num_.is_zero(); }
    /// True when the value lies in the Laurent ring.
    bool is_laurent() const noexcept { return den_.is_one(); }

    RationalFunction operator-() const;
    RationalFunction inverse() const;
    RationalFunction pow(std::int64_t e) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    LaurentPolynomial num_;
    LaurentPolynomial den_;

    RationalFunction(LaurentPolynomial num, LaurentPolynomial den) : num_(std::move(num)), den_(std::move(den)) {}
};

/// Unreduced quotient; cheap to build, compared by cross-multiplication.
struct Fraction {
    LaurentPolynomial num;
    LaurentPolynomial den;

    RationalFunction reduce() const { return RationalFunction::make(num, den); }
    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
};

} // namespace laurentlab::ring
