#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "laurentlab/ring/monomial.hpp"
#include "laurentlab/ring/variable_table.hpp"

namespace laurentlab::ring {

class RingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands refer to different variable tables.
class TableMismatch : public RingError {
public:
    TableMismatch() : RingError("polynomial operands use different variable tables") {}
};

class DivisionByZero : public RingError {
public:
    DivisionByZero() : RingError("division by the zero polynomial") {}
};

struct Term {
    Monomial mono;
    mpz_class coeff;

    friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coeff == b.coeff; }
};

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept strictly descending in graded-lex order with no zero
/// coefficient, so equality is term-list equality and the first term is the
/// leading term. Values are immutable once built; every operation returns a
/// new polynomial.
class LaurentPolynomial {
public:
    /// The zero polynomial.
    explicit LaurentPolynomial(TablePtr table);
    LaurentPolynomial(TablePtr table, const mpz_class& constant);
    LaurentPolynomial(TablePtr table, long constant) : LaurentPolynomial(std::move(table), mpz_class(constant)) {}

    static LaurentPolynomial variable(TablePtr table, VarIndex v, std::int32_t exp = 1);
    static LaurentPolynomial variable(const TablePtr& table, std::string_view name, std::int32_t exp = 1);
    static LaurentPolynomial monomial(TablePtr table, Monomial mono, mpz_class coeff = 1);
    /// Sorts, merges like terms and drops zeros.
    static LaurentPolynomial from_terms(TablePtr table, std::vector<Term> terms);
    /// Trusts that terms are already strictly descending with nonzero coefficients.
    static LaurentPolynomial from_sorted_terms(TablePtr table, std::vector<Term> terms);

    const TablePtr& table() const noexcept { return table_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    /// Units of Z[v, 1/v] are exactly the +-1 multiples of monomials.
    bool is_unit() const noexcept;
    bool is_one() const noexcept;
    std::optional<mpz_class> constant_value() const;

    const Term& leading_term() const;
    const Term& trailing_term() const;

    LaurentPolynomial operator-() const;
    LaurentPolynomial& operator+=(const LaurentPolynomial& other);
    LaurentPolynomial& operator-=(const LaurentPolynomial& other);
    LaurentPolynomial& operator*=(const LaurentPolynomial& other);

    /// Negative exponents are allowed only for units.
    LaurentPolynomial pow(std::int64_t e) const;
    LaurentPolynomial mul_term(const Monomial& mono, const mpz_class& coeff) const;
    LaurentPolynomial mul_monomial(const Monomial& mono) const { return mul_term(mono, 1); }
    LaurentPolynomial mul_scalar(const mpz_class& c) const;
    /// Divides every coefficient by c; caller guarantees divisibility.
    LaurentPolynomial div_scalar_exact(const mpz_class& c) const;

    /// Componentwise minimum exponent over all terms (1 for the zero polynomial).
    Monomial monomial_content() const;
    /// Nonnegative gcd of the coefficients.
    mpz_class integer_content() const;
    std::vector<VarIndex> variables() const;
    bool involves(VarIndex v) const;
    std::int32_t max_degree_in(VarIndex v) const;
    std::int32_t min_degree_in(VarIndex v) const;

    /// Same terms over another table via an index map (old index -> new index).
    LaurentPolynomial rebase(TablePtr target, std::span<const VarIndex> index_map) const;
    /// Same terms over another table, mapping variables by name.
    LaurentPolynomial rebase_by_name(TablePtr target) const;

    std::size_t hash() const noexcept;

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);

private:
    TablePtr table_;
    std::vector<Term> terms_;

    void require_same_table(const LaurentPolynomial& other) const;
};

/// Raised when exact division fails. Carries a nonzero remainder witness r
/// with a = b * q + r for the partial quotient q reached before aborting.
class NotDivisible : public RingError {
public:
    NotDivisible(LaurentPolynomial remainder, std::string message);
    const LaurentPolynomial& remainder() const noexcept { return remainder_; }

private:
    LaurentPolynomial remainder_;
};

/// Exact quotient in the Laurent ring. Throws NotDivisible or DivisionByZero.
LaurentPolynomial exact_div(const LaurentPolynomial& a, const LaurentPolynomial& b);
/// Exact quotient or nullopt; never throws NotDivisible.
std::optional<LaurentPolynomial> try_div(const LaurentPolynomial& a, const LaurentPolynomial& b);
bool divides(const LaurentPolynomial& b, const LaurentPolynomial& a);

/// Splits p = m * q where m is the monomial content and q is an ordinary
/// polynomial with no variable dividing it.
std::pair<Monomial, LaurentPolynomial> split_monomial_content(const LaurentPolynomial& p);

} // namespace laurentlab::ring
