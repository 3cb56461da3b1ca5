#include "laurentlab/ring/rational.hpp"

#include "laurentlab/ring/gcd.hpp"

namespace laurentlab::ring {

RationalFunction::RationalFunction(LaurentPolynomial numerator)
    : num_(std::move(numerator)), den_(num_.table(), 1)
{
}

RationalFunction RationalFunction::from_coprime(LaurentPolynomial numerator, LaurentPolynomial denominator)
{
    if (numerator.table() != denominator.table()) {
        throw TableMismatch();
    }
    if (denominator.is_zero()) {
        throw DivisionByZero();
    }
    if (numerator.is_zero()) {
        return RationalFunction(std::move(numerator));
    }
    auto [mono, rest] = split_monomial_content(denominator);
    bool negative = rest.leading_term().coeff < 0;
    if (negative) {
        rest = -rest;
    }
    LaurentPolynomial num = numerator.mul_term(mono.inverse(), negative ? -1 : 1);
    return RationalFunction(std::move(num), std::move(rest));
}

RationalFunction RationalFunction::make(LaurentPolynomial numerator, LaurentPolynomial denominator)
{
    if (denominator.is_zero()) {
        throw DivisionByZero();
    }
    if (numerator.is_zero() || denominator.is_unit()) {
        return from_coprime(std::move(numerator), std::move(denominator));
    }
    LaurentPolynomial g = gcd(numerator, denominator);
    if (!g.is_one()) {
        numerator = exact_div(numerator, g);
        denominator = exact_div(denominator, g);
    }
    return from_coprime(std::move(numerator), std::move(denominator));
}

RationalFunction RationalFunction::operator-() const
{
    return RationalFunction(-num_, den_);
}

RationalFunction RationalFunction::inverse() const
{
    if (num_.is_zero()) {
        throw DivisionByZero();
    }
    return from_coprime(den_, num_);
}

RationalFunction RationalFunction::pow(std::int64_t e) const
{
    if (e < 0) {
        return inverse().pow(-e);
    }
    // Powers of coprime polynomials stay coprime.
    return RationalFunction(num_.pow(e), den_.pow(e));
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
{
    if (a.is_zero() || b.is_zero()) {
        return RationalFunction(LaurentPolynomial(a.table()));
    }
    LaurentPolynomial g1 = gcd(a.num_, b.den_);
    LaurentPolynomial g2 = gcd(b.num_, a.den_);
    LaurentPolynomial num = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    LaurentPolynomial den = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    return RationalFunction::from_coprime(std::move(num), std::move(den));
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
{
    return a * b.inverse();
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
{
    if (a.den_.is_one() && b.den_.is_one()) {
        return RationalFunction(a.num_ + b.num_);
    }
    LaurentPolynomial g = gcd(a.den_, b.den_);
    LaurentPolynomial da = exact_div(a.den_, g);
    LaurentPolynomial db = exact_div(b.den_, g);
    LaurentPolynomial num = a.num_ * db + b.num_ * da;
    LaurentPolynomial den = da * b.den_;
    if (num.is_zero()) {
        return RationalFunction(std::move(num));
    }
    if (!g.is_one()) {
        // Any common factor of num and den already divides g.
        LaurentPolynomial h = gcd(num, g);
        if (!h.is_one()) {
            num = exact_div(num, h);
            den = exact_div(den, h);
        }
    }
    return RationalFunction::from_coprime(std::move(num), std::move(den));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b)
{
    return a + (-b);
}

} // namespace laurentlab::ring
