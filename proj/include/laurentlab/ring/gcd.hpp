#pragma once

#include "laurentlab/ring/polynomial.hpp"

namespace laurentlab::ring {

/// Associate of p with no monomial content and a positive leading coefficient.
/// Two Laurent polynomials are associates iff their normal forms agree.
LaurentPolynomial normalize(const LaurentPolynomial& p);

/// Greatest common divisor in the Laurent ring, returned in normal form.
/// gcd(a, 0) is normalize(a); gcd(0, 0) throws DivisionByZero.
LaurentPolynomial gcd(const LaurentPolynomial& a, const LaurentPolynomial& b);

/// True when gcd(a, b) is a unit.
bool coprime(const LaurentPolynomial& a, const LaurentPolynomial& b);

namespace detail {

/// Tries to prove that two ordinary polynomials share no factor involving a
/// common variable by reducing modulo a prime at random points. Returns false
/// when the test is inconclusive, never when it succeeded.
bool modular_coprime_certificate(const LaurentPolynomial& a, const LaurentPolynomial& b);

} // namespace detail

} // namespace laurentlab::ring
