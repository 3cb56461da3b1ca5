#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "laurentlab/ring/rational.hpp"

namespace laurentlab::ring {

class SubstitutionError : public RingError {
public:
    using RingError::RingError;
};

/// Variable of the source table -> value over a common target table.
using Assignment = std::map<VarIndex, RationalFunction>;

/// Image of p under the homomorphism fixed by the assignment, as an
/// unreduced fraction over a common denominator. Every variable of p must be
/// assigned; zero may not be assigned to a variable with a negative exponent.
/// target is used when p is constant.
Fraction substitute_fraction(const LaurentPolynomial& p, const Assignment& values, const TablePtr& target);

/// Reduced image of p.
RationalFunction substitute(const LaurentPolynomial& p, const Assignment& values, const TablePtr& target);

/// Reduced image of a quotient.
RationalFunction substitute(const RationalFunction& f, const Assignment& values, const TablePtr& target);

/// Image of p when every value is a Laurent polynomial and the result is known
/// to be Laurent; throws NotDivisible otherwise.
LaurentPolynomial substitute_laurent(const LaurentPolynomial& p, const Assignment& values, const TablePtr& target);

/// Rational value of p at an integer or rational point, indexed by variable.
mpq_class evaluate(const LaurentPolynomial& p, const std::vector<mpq_class>& point);

} // namespace laurentlab::ring
