#pragma once

#include <random>

#include "laurentlab/ring/polynomial.hpp"

namespace testutil {

using laurentlab::ring::LaurentPolynomial;
using laurentlab::ring::Monomial;
using laurentlab::ring::TablePtr;
using laurentlab::ring::Term;
using laurentlab::ring::VarPower;

inline LaurentPolynomial random_poly(std::mt19937_64& rng, const TablePtr& table, int max_terms, int min_exp,
                                     int max_exp, int coeff_range = 5)
{
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(min_exp, max_exp);
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::vector<Term> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<VarPower> powers;
        for (laurentlab::ring::VarIndex v = 0; v < table->arity(); ++v) {
            powers.push_back({v, exp(rng)});
        }
        terms.push_back({Monomial::from_powers(std::move(powers)), coeff(rng)});
    }
    return LaurentPolynomial::from_terms(table, std::move(terms));
}

} // namespace testutil
