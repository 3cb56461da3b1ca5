#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "laurentlab/checks/checks.hpp"
#include "laurentlab/ring/localized.hpp"
#include "laurentlab/ring/polynomial.hpp"
#include "laurentlab/ring/rational.hpp"

namespace laurentlab::somos {

struct SomosParams {
    int k = 1;
    int l = 1;
    int m = 1;
};

/// Throws std::invalid_argument unless k, l, m are all positive.
void validate(const SomosParams& p);
std::string to_string(const SomosParams& p);

/// a_{-1} = -1, a_0 = 0, a_{i+1} = k a_i - a_{i-1}. Throws std::overflow_error
/// when the value leaves the int32 exponent range.
std::int64_t a_seq(int k, int i);

/// c_n, the value of x_n when every ring generator is 1, for n >= 4. Throws
/// std::domain_error if a quotient of the integer recurrence is not exact.
mpz_class c_sequence(const SomosParams& p, int n);
/// c_4 .. c_n in one pass, stopping early once a value exceeds max_bits bits.
std::vector<mpz_class> c_values(const SomosParams& p, int n, std::size_t max_bits = 0);

/// The extended Somos-4 iteration in the ring R = Z[x4..x7, f0, f1, g0, g1]^{+-}
/// together with the coordinate systems it is checked against:
///
/// - oracle coordinates x0..x7, in which x_n is a Laurent polynomial times
///   powers of the prime extension factors E_j = x_{j+4} x_j - x_{j+2}^k;
/// - u coordinates x0..x3, u2..u5, in which x_n is a monic monomial in x0..x3
///   times an element of Z[u_j^{+-}, (u_j - 1)^{+-}].
///
/// Caches only grow; a computed value never changes.
class SomosEngine {
public:
    explicit SomosEngine(SomosParams params, bool mutate = false);

    const SomosParams& params() const noexcept { return params_; }
    bool mutated() const noexcept { return mutate_; }

    /// x4 x5 x6 x7 f0 f1 g0 g1
    const ring::TablePtr& ring_table() const noexcept { return ring_; }
    /// x0 .. x7
    const ring::TablePtr& oracle_table() const noexcept { return oracle_; }
    /// x0 x1 x2 x3 u2 u3 u4 u5
    const ring::TablePtr& u_table() const noexcept { return utab_; }

    std::int64_t a(int i) const { return a_seq(params_.k, i); }

    /// F_n as a monomial in f0, f1 (even n) or g0, g1 (odd n).
    ring::LaurentPolynomial f_closed_form(int n) const;

    /// x_n in R for n >= 0, iterating from x4..x7; x0..x3 are the images of the
    /// inverse map. Throws checks::LaurentViolation when a division is not exact.
    const ring::LaurentPolynomial& x(int n);

    /// Images of x0..x7 in R (Laurent polynomials).
    const std::vector<ring::LaurentPolynomial>& inverse_images() const noexcept { return inverse_; }
    /// x0..x7 -> R.
    checks::RationalMap forward_map() const;
    /// R -> x0..x7: f0 = (x4 x0 - x2^k) / (x3^m x1^l) and so on.
    checks::RationalMap backward_map() const;

    /// Extension factors E_0..E_3 over the oracle table.
    const ring::BasisPtr& oracle_basis() const noexcept { return ebasis_; }
    /// Generators of R as localized values over the oracle table.
    const std::map<ring::VarIndex, ring::LocalizedPolynomial>& ring_in_oracle() const noexcept { return ring_in_oracle_; }

    /// x_n by direct iteration in the oracle coordinates.
    const ring::LocalizedPolynomial& oracle_localized(int n);
    /// Reduced form of oracle_localized(n).
    ring::RationalFunction oracle_x(int n);
    /// F_n recomputed from oracle iterates: (x_{n+4} x_n - x_{n+2}^k) / (x_{n+3}^m x_{n+1}^l).
    ring::LocalizedPolynomial oracle_f(int n);
    /// Iterates the oracle up to max_n while every operand core has at most
    /// budget terms; returns the last index reached (at least 7).
    int oracle_depth(int max_n, std::size_t budget);
    /// Compares x_n, mapped to oracle coordinates, against the oracle iteration
    /// at random points modulo 2^61 - 1. Returns the first mismatching index,
    /// if any.
    std::optional<int> oracle_mismatch_mod_p(int max_n, int points, std::uint64_t seed);
    /// F_n from oracle iterates, (x_{n+4} x_n - x_{n+2}^k) / (x_{n+3}^m x_{n+1}^l),
    /// against f_closed_form(n) for n <= max_n at random points modulo 2^61 - 1.
    std::optional<int> f_mismatch_mod_p(int max_n, int points, std::uint64_t seed);

    /// u_n = x_{n+2} x_{n-2} / x_n^k in R, n >= 2.
    ring::RationalFunction u_from_x(int n);

    /// Factors u_j - 1 over the u table.
    const ring::BasisPtr& u_basis() const noexcept { return ubasis_; }
    /// Generators of R as localized values over the u table.
    const std::map<ring::VarIndex, ring::LocalizedPolynomial>& ring_in_u() const noexcept { return ring_in_u_; }
    /// R -> u coordinates and back.
    checks::RationalMap ring_to_u_map() const;
    checks::RationalMap u_to_ring_map() const;

    /// Expected x0..x3 prefactor of x_n in u coordinates.
    ring::Monomial xi_prefactor(int n) const;
    /// x_n in u coordinates with its monic x0..x3 monomial removed. Throws
    /// checks::LaurentViolation when the terms do not share one such monomial.
    const ring::LocalizedPolynomial& xi_tilde(int n);
    /// u_n by the nonlinear recurrence from the generators u2..u5.
    const ring::RationalFunction& u_recurrence(int n);

    struct PResult {
        ring::LaurentPolynomial p;
        ring::LaurentPolynomial divisor;
        ring::LaurentPolynomial quotient;
    };
    /// P_{2i+2} and the divisor x_{2i-3}^m x_{2i-4}^k x_{2i-5}^l, for i >= 3.
    /// The cofactors p_{2i}, p_{2i+1} are exact quotients by x_{2i-2}. Throws
    /// checks::LaurentViolation when the divisor does not divide P.
    PResult p_polynomial(int i);

private:
    SomosParams params_;
    bool mutate_;
    ring::TablePtr ring_;
    ring::TablePtr oracle_;
    ring::TablePtr utab_;
    std::vector<ring::LaurentPolynomial> inverse_;
    std::deque<ring::LaurentPolynomial> xs_;
    ring::BasisPtr ebasis_;
    std::map<ring::VarIndex, ring::LocalizedPolynomial> ring_in_oracle_;
    std::deque<ring::LocalizedPolynomial> oracle_xs_;
    std::deque<ring::LocalizedPolynomial> oracle_fs_;
    ring::BasisPtr ubasis_;
    std::map<ring::VarIndex, ring::LocalizedPolynomial> ring_in_u_;
    std::map<int, ring::LocalizedPolynomial> xi_;
    std::deque<ring::RationalFunction> us_;

    ring::LaurentPolynomial rx(int i, std::int64_t e = 1) const;
    void extend_oracle(int n);
    std::vector<std::uint64_t> oracle_point(int max_n, std::mt19937_64& rng) const;
    std::vector<std::uint64_t> ring_point(const std::vector<std::uint64_t>& xv) const;
};

/// The nonlinear equation for u at n, checked as an identity of reduced
/// rational functions in R.
checks::VerificationRecord verify_u_equation(SomosEngine& engine, int n);

/// Evaluation at f1 = t, every other generator 1, in Z[t]/(t^k + 1): the chain
/// x8 = 0, x9 = 1, x10 = t^{k^2-1}, x11 = 1, the value t^{a_4} = (-1)^k, and
/// P_12 against its closed form, nonzero unless k = 1, l >= 2, m >= 2.
checks::VerificationRecord root_of_unity_check(SomosEngine& engine);

} // namespace laurentlab::somos
