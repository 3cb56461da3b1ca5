#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laurentlab/ring/polynomial.hpp"

namespace laurentlab::ring {

/// Element of Z[t]/(t^k + 1), stored as its reduced representative
/// c_0 + c_1 t + ... + c_{k-1} t^{k-1}. Evaluating there is evaluating at a
/// primitive 2k-th root of unity.
class QuotientRingElement {
public:
    explicit QuotientRingElement(unsigned k);
    QuotientRingElement(unsigned k, const mpz_class& constant);

    /// t^j for any integer j, using t^k = -1.
    static QuotientRingElement t_power(unsigned k, std::int64_t j);

    unsigned modulus_degree() const noexcept { return static_cast<unsigned>(coeffs_.size()); }
    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const;
    /// Returns (sign, j) when the element is +-t^j.
    std::optional<std::pair<int, unsigned>> as_signed_power() const;

    QuotientRingElement operator-() const;
    /// Negative exponents are allowed only for +-t^j.
    QuotientRingElement pow(std::int64_t e) const;

    friend QuotientRingElement operator+(const QuotientRingElement& a, const QuotientRingElement& b);
    friend QuotientRingElement operator-(const QuotientRingElement& a, const QuotientRingElement& b);
    friend QuotientRingElement operator*(const QuotientRingElement& a, const QuotientRingElement& b);
    friend bool operator==(const QuotientRingElement& a, const QuotientRingElement& b)
    {
        return a.coeffs_ == b.coeffs_;
    }

    /// Readable form such as "1 + 2*t - t^3".
    std::string to_string() const;

private:
    std::vector<mpz_class> coeffs_;
};

/// Image of p in Z[t]/(t^k + 1) under the assignment; unassigned variables
/// are an error.
QuotientRingElement eval_quotient_ring(const LaurentPolynomial& p, const std::map<VarIndex, QuotientRingElement>& values,
                                       unsigned k);

} // namespace laurentlab::ring
