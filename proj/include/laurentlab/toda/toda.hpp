#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "laurentlab/checks/checks.hpp"
#include "laurentlab/ring/localized.hpp"
#include "laurentlab/ring/polynomial.hpp"
#include "laurentlab/ring/rational.hpp"

namespace laurentlab::toda {

struct TodaParams {
    int k1 = 1;
    int k2 = 1;
    int l1 = 1;
    int l2 = 1;
};

void validate(const TodaParams& p);
std::string to_string(const TodaParams& p);

/// Lattice point in doubled coordinates. A point at time t has dn and dm
/// both congruent to t mod 2.
struct Point {
    int dn = 0;
    int dm = 0;

    friend Point operator+(Point a, Point b) { return {a.dn + b.dn, a.dm + b.dm}; }
    friend Point operator-(Point a, Point b) { return {a.dn - b.dn, a.dm - b.dm}; }
    friend Point operator*(int s, Point a) { return {s * a.dn, s * a.dm}; }
    friend auto operator<=>(const Point&, const Point&) = default;

    /// |dn| + |dm|, twice the diamond radius.
    int norm() const { return std::abs(dn) + std::abs(dm); }
};

inline constexpr Point e1{1, 1};
inline constexpr Point e2{-1, 1};

/// "<family>:<t>:<dn>:<dm>", e.g. "tau:5:0:-2", "F:0:2:0", "U:1:0:0".
std::string var_name(const std::string& family, int t, Point n);

/// c_2 = c_3 = 1, c_4 = 2, c_{j+1} = (c_j^{k1+k2} + c_j^{l1+l2}) / c_{j-1}.
/// Throws std::domain_error on an inexact quotient.
mpz_class c_sequence(const TodaParams& p, int t);
/// c_2 .. c_t, stopping early once a value exceeds max_bits (0: no limit).
std::vector<mpz_class> c_values(const TodaParams& p, int t, std::size_t max_bits = 0);

/// Integer fields a_{t, j e2} and b_{t, j e2} of the linear recurrence
/// y_{t+1,n} = k1 y_{t,n-e2} + k2 y_{t,n+e2} - y_{t-1,n}; both vanish off the
/// e2 axis.
class ExponentFields {
public:
    ExponentFields(const TodaParams& p, int max_t);

    std::int64_t a(int t, Point n) const;
    std::int64_t b(int t, Point n) const;
    int max_t() const noexcept { return max_t_; }

private:
    int max_t_;
    int span_;
    std::vector<std::vector<std::int64_t>> a_;
    std::vector<std::vector<std::int64_t>> b_;

    std::int64_t at(const std::vector<std::vector<std::int64_t>>& y, int t, Point n) const;
};

/// The extended Toda iteration on the diamond window of radius R, in the ring
/// S = Z[tau_{2,n}^{+-}, tau_{3,n}^{+-}, F_{0,n}^{+-}, F_{1,n}^{+-}] (the
/// s-table), together with the coordinates W = {tau_0, tau_1, U_1, U_2}
/// (the w-table, radius R + 2).
///
/// Layer radii: R at t = 2, 3; R - (t - 3) for t >= 4; R - 1 at t = 1 and
/// R - 2 at t = 0, where tau_1 and tau_0 are the Laurent images of the
/// inverse map.
class TodaEngine {
public:
    TodaEngine(TodaParams params, int radius, bool mutate = false);

    const TodaParams& params() const noexcept { return params_; }
    int radius() const noexcept { return radius_; }
    bool mutated() const noexcept { return mutate_; }
    const ring::TablePtr& s_table() const noexcept { return s_; }
    const ring::TablePtr& w_table() const noexcept { return w_; }

    /// Radius of layer t; negative when the layer is empty.
    int layer_radius(int t) const;
    /// Points of layer t, in increasing order.
    std::vector<Point> layer_points(int t) const;
    bool in_layer(int t, Point n) const;

    /// Generator of S or W by name; throws std::out_of_range outside the window.
    ring::LaurentPolynomial s_var(const std::string& family, int t, Point n) const;
    ring::LaurentPolynomial w_var(const std::string& family, int t, Point n) const;

    const ExponentFields& fields(int max_t);
    /// F_{t,n} as a monomial in the F_0 and F_1 generators.
    ring::LaurentPolynomial f_closed(int t, Point n);

    /// tau_{t,n} in S for t >= 0. Iterates layers on demand; throws
    /// checks::LaurentViolation when a division is not exact.
    const ring::LaurentPolynomial& tau(int t, Point n);
    /// Computes every layer up to max_t.
    void iterate(int max_t);
    int computed_layers() const noexcept { return static_cast<int>(layers_.size()) - 1; }

    /// U_{t,n} = tau_{t+1,n} tau_{t-1,n} / (tau_{t,n-e2}^{k1} tau_{t,n+e2}^{k2}) over S, t >= 1.
    ring::RationalFunction u_from_tau(int t, Point n);

    /// S generators as rational functions over W.
    checks::RationalMap t_in_w() const;
    /// W generators as rational functions over S, where the stencil fits.
    checks::RationalMap w_in_t();

    /// Factors U_{s,r} - 1 over the w-table.
    const ring::BasisPtr& u_basis() const noexcept { return ubasis_; }
    /// S generators as localized values over W (monomial times at most one U - 1).
    const std::map<ring::VarIndex, ring::LocalizedPolynomial>& t_in_w_localized() const noexcept { return t_in_w_; }
    /// tau_{t,n} in W coordinates without its monic tau_0, tau_1 monomial, t >= 2.
    /// Throws checks::LaurentViolation when the terms do not share such a monomial.
    const ring::LocalizedPolynomial& sigma_tilde(int t, Point n);
    /// sigma tilde as a reduced rational function; 1 for t = 0, 1.
    ring::RationalFunction sigma_tilde_rational(int t, Point n);
    /// U_{t,n} over W rebuilt from sigma tilde values, t >= 1.
    ring::RationalFunction u_from_sigma(int t, Point n);

    /// p with every generator index shifted by a lattice vector, or nullopt
    /// when a shifted generator leaves the window.
    std::optional<ring::LaurentPolynomial> translate(const ring::LaurentPolynomial& p, Point shift) const;

    /// Iterates the recurrence modulo a prime from random generator values and
    /// compares with tau_{t,n} evaluated there, for 0 <= t <= max_t. Returns the
    /// first mismatch.
    std::optional<std::pair<int, Point>> oracle_mismatch_mod_p(int max_t, int points, std::uint64_t seed);

private:
    TodaParams params_;
    int radius_;
    bool mutate_;
    ring::TablePtr s_;
    ring::TablePtr w_;
    std::map<std::string, ring::VarIndex> s_index_;
    std::map<std::string, ring::VarIndex> w_index_;
    std::unique_ptr<ExponentFields> fields_;
    std::vector<std::map<Point, ring::LaurentPolynomial>> layers_;
    ring::BasisPtr ubasis_;
    std::map<ring::VarIndex, ring::LocalizedPolynomial> t_in_w_;
    std::map<std::pair<int, Point>, ring::LocalizedPolynomial> sigma_;
    std::size_t w_tau_count_ = 0;

    void build_tables();
    void build_initial_layers();
    void build_w_images();
    void extend(int t);
};

/// The nonlinear U equation at (t, n), n of parity t, as an identity of
/// reduced rational functions over S.
checks::VerificationRecord verify_u_equation(TodaEngine& engine, int t, Point n);

/// Pieces of the divisibility identity at (t, n), t >= 4, built from any
/// source of tau and F values (symbolic or specialized).
struct Divisibility {
    ring::LaurentPolynomial p;
    ring::LaurentPolynomial divisor;
    /// Left minus right side of the two-term collapse; zero when it holds.
    ring::LaurentPolynomial collapse_defect;
};
using ValueFn = std::function<ring::LaurentPolynomial(int t, Point n)>;
Divisibility divisibility_parts(const TodaParams& p, int t, Point n, const ValueFn& tau, const ValueFn& f);

/// Image of S under F_{0,n} -> t_n^{-1}, F_{1,n}, tau_{2,n}, tau_{3,n} -> 1,
/// over the t-table of even points of radius R.
class Specialization {
public:
    explicit Specialization(TodaEngine& engine);

    const ring::TablePtr& table() const noexcept { return table_; }
    ring::LaurentPolynomial t(Point n, std::int32_t exp = 1) const;
    ring::LaurentPolynomial apply(const ring::LaurentPolynomial& p) const;
    ring::LaurentPolynomial tau(int t, Point n);
    ring::LaurentPolynomial f(int t, Point n);

    /// Rational value at t_n = values[n], every other t_n = rest. Throws
    /// ring::SubstitutionError for zero under a negative exponent.
    mpq_class value(const ring::LaurentPolynomial& p, const std::map<Point, mpq_class>& values,
                    const mpq_class& rest) const;

private:
    TodaEngine& engine_;
    ring::TablePtr table_;
    std::vector<std::optional<ring::VarIndex>> f0_to_t_;
    std::map<Point, ring::VarIndex> index_;
};

/// The closed form of P_{6,0} at t_0 = -1, every other t_n = 1.
mpz_class p6_closed_form(const TodaParams& p);
/// P_{6,0} at the same point, from the exact divisibility construction at
/// (t, n) = (5, 0) under the specialization.
mpz_class p6_direct(TodaEngine& engine);

} // namespace laurentlab::toda
