#include "laurentlab/somos/somos.hpp"

#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "laurentlab/ring/gcd.hpp"
#include "laurentlab/ring/modular.hpp"
#include "laurentlab/ring/quotient_ring.hpp"
#include "laurentlab/ring/text.hpp"

namespace laurentlab::somos {

using checks::LaurentViolation;
using checks::VerificationRecord;
using ring::LaurentPolynomial;
using ring::LocalizedPolynomial;
using ring::Monomial;
using ring::RationalFunction;
using ring::VarIndex;

namespace {

// Ring table positions.
constexpr VarIndex kF0 = 4;
constexpr VarIndex kF1 = 5;
constexpr VarIndex kG0 = 6;
constexpr VarIndex kG1 = 7;

std::int32_t exponent(std::int64_t e)
{
    if (e > std::numeric_limits<std::int32_t>::max() || e < std::numeric_limits<std::int32_t>::min()) {
        throw std::overflow_error("exponent out of range");
    }
    return static_cast<std::int32_t>(e);
}

} // namespace

void validate(const SomosParams& p)
{
    if (p.k < 1 || p.l < 1 || p.m < 1) {
        throw std::invalid_argument("k, l and m must be positive integers");
    }
}

std::string to_string(const SomosParams& p)
{
    return "(k,l,m)=(" + std::to_string(p.k) + "," + std::to_string(p.l) + "," + std::to_string(p.m) + ")";
}

std::int64_t a_seq(int k, int i)
{
    if (i < -1) {
        throw std::invalid_argument("a_i is defined for i >= -1");
    }
    std::int64_t prev = -1;
    std::int64_t cur = 0;
    if (i == -1) {
        return prev;
    }
    for (int j = 0; j < i; ++j) {
        std::int64_t next = static_cast<std::int64_t>(k) * cur - prev;
        prev = cur;
        cur = next;
        exponent(cur);
    }
    return cur;
}

std::vector<mpz_class> c_values(const SomosParams& p, int n, std::size_t max_bits)
{
    validate(p);
    if (n < 4) {
        throw std::invalid_argument("c_n is defined for n >= 4");
    }
    std::vector<mpz_class> c(8, 1);
    for (int j = 8; j <= n; ++j) {
        if (max_bits > 0 && mpz_sizeinbase(c.back().get_mpz_t(), 2) > max_bits) {
            break;
        }
        mpz_class a;
        mpz_class b;
        mpz_class d;
        mpz_pow_ui(a.get_mpz_t(), c[j - 2].get_mpz_t(), static_cast<unsigned long>(p.k));
        mpz_pow_ui(b.get_mpz_t(), c[j - 1].get_mpz_t(), static_cast<unsigned long>(p.m));
        mpz_pow_ui(d.get_mpz_t(), c[j - 3].get_mpz_t(), static_cast<unsigned long>(p.l));
        mpz_class num = a + b * d;
        if (!mpz_divisible_p(num.get_mpz_t(), c[j - 4].get_mpz_t())) {
            throw std::domain_error("c_" + std::to_string(j) + " is not an integer");
        }
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), c[j - 4].get_mpz_t());
        c.push_back(std::move(q));
    }
    c.resize(std::min<std::size_t>(c.size(), static_cast<std::size_t>(n) + 1));
    c.erase(c.begin(), c.begin() + 4);
    return c;
}

mpz_class c_sequence(const SomosParams& p, int n)
{
    return c_values(p, n).back();
}

SomosEngine::SomosEngine(SomosParams params, bool mutate)
    : params_(params), mutate_(mutate),
      ring_(ring::VariableTable::make({"x4", "x5", "x6", "x7", "f0", "f1", "g0", "g1"})),
      oracle_(ring::VariableTable::make({"x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"})),
      utab_(ring::VariableTable::make({"x0", "x1", "x2", "x3", "u2", "u3", "u4", "u5"}))
{
    validate(params_);
    const int k = params_.k;
    const int l = params_.l;
    const int m = params_.m;

    inverse_.assign(8, LaurentPolynomial(ring_));
    for (int i = 4; i < 8; ++i) {
        inverse_[i] = rx(i - 4);
    }
    auto& X = inverse_;
    X[3] = (LaurentPolynomial::variable(ring_, kG1) * X[6].pow(m) * X[4].pow(l) + X[5].pow(k)) * X[7].pow(-1);
    X[2] = (LaurentPolynomial::variable(ring_, kF1) * X[5].pow(m) * X[3].pow(l) + X[4].pow(k)) * X[6].pow(-1);
    X[1] = (LaurentPolynomial::variable(ring_, kG0) * X[4].pow(m) * X[2].pow(l) + X[3].pow(k)) * X[5].pow(-1);
    X[0] = (LaurentPolynomial::variable(ring_, kF0) * X[3].pow(m) * X[1].pow(l) + X[2].pow(k)) * X[4].pow(-1);
    xs_.assign(inverse_.begin(), inverse_.end());

    auto ox = [&](int i) { return LaurentPolynomial::variable(oracle_, static_cast<VarIndex>(i)); };
    std::vector<LaurentPolynomial> e;
    for (int j = 0; j < 4; ++j) {
        e.push_back(ox(j + 4) * ox(j) - ox(j + 2).pow(k));
    }
    ebasis_ = ring::make_basis(oracle_, std::move(e));
    for (int j = 0; j < 4; ++j) {
        LocalizedPolynomial f = LocalizedPolynomial::factor(ebasis_, static_cast<std::size_t>(j)) *
                                LocalizedPolynomial(ebasis_, ox(j + 3).pow(-m) * ox(j + 1).pow(-l));
        oracle_fs_.push_back(f);
    }
    for (int i = 0; i < 8; ++i) {
        oracle_xs_.emplace_back(ebasis_, ox(i));
    }
    for (VarIndex v = 0; v < 4; ++v) {
        ring_in_oracle_.emplace(v, oracle_xs_[v + 4]);
    }
    ring_in_oracle_.emplace(kF0, oracle_fs_[0]);
    ring_in_oracle_.emplace(kG0, oracle_fs_[1]);
    ring_in_oracle_.emplace(kF1, oracle_fs_[2]);
    ring_in_oracle_.emplace(kG1, oracle_fs_[3]);

    auto uv = [&](VarIndex i) { return LaurentPolynomial::variable(utab_, i); };
    std::vector<LaurentPolynomial> ufac;
    for (VarIndex j = 4; j < 8; ++j) {
        ufac.push_back(uv(j) - LaurentPolynomial(utab_, 1));
    }
    ubasis_ = ring::make_basis(utab_, std::move(ufac));
    auto U = [&](VarIndex i) { return LocalizedPolynomial(ubasis_, uv(i)); };
    auto W = [&](std::size_t j) { return LocalizedPolynomial::factor(ubasis_, j); };
    LocalizedPolynomial x0 = U(0), x1 = U(1), x2 = U(2), x3 = U(3);
    LocalizedPolynomial x4 = x2.pow(k) * U(4) * x0.pow(-1);
    LocalizedPolynomial x5 = x3.pow(k) * U(5) * x1.pow(-1);
    LocalizedPolynomial x6 = x4.pow(k) * U(6) * x2.pow(-1);
    LocalizedPolynomial x7 = x5.pow(k) * U(7) * x3.pow(-1);
    ring_in_u_.emplace(0, x4);
    ring_in_u_.emplace(1, x5);
    ring_in_u_.emplace(2, x6);
    ring_in_u_.emplace(3, x7);
    ring_in_u_.emplace(kF0, x2.pow(k) * W(0) * x3.pow(-m) * x1.pow(-l));
    ring_in_u_.emplace(kG0, x3.pow(k) * W(1) * x4.pow(-m) * x2.pow(-l));
    ring_in_u_.emplace(kF1, x4.pow(k) * W(2) * x5.pow(-m) * x3.pow(-l));
    ring_in_u_.emplace(kG1, x5.pow(k) * W(3) * x6.pow(-m) * x4.pow(-l));
}

LaurentPolynomial SomosEngine::rx(int i, std::int64_t e) const
{
    return LaurentPolynomial::variable(ring_, static_cast<VarIndex>(i), exponent(e));
}

LaurentPolynomial SomosEngine::f_closed_form(int n) const
{
    if (n < 0) {
        throw std::invalid_argument("F_n is defined for n >= 0");
    }
    int i = n / 2;
    VarIndex hi = n % 2 == 0 ? kF1 : kG1;
    VarIndex lo = n % 2 == 0 ? kF0 : kG0;
    Monomial mono = Monomial::from_powers({{hi, exponent(a(i))}, {lo, exponent(-a(i - 1))}});
    return LaurentPolynomial::monomial(ring_, std::move(mono));
}

const LaurentPolynomial& SomosEngine::x(int n)
{
    if (n < 0) {
        throw std::invalid_argument("x_n is defined for n >= 0");
    }
    const int k = params_.k;
    const int l = params_.l;
    const int m = params_.m;
    while (static_cast<int>(xs_.size()) <= n) {
        int j = static_cast<int>(xs_.size());
        LaurentPolynomial f = f_closed_form(j - 4);
        if (mutate_) {
            f = f.mul_scalar(2);
        }
        LaurentPolynomial num = xs_[j - 2].pow(k) + f * xs_[j - 1].pow(m) * xs_[j - 3].pow(l);
        try {
            xs_.push_back(ring::exact_div(num, xs_[j - 4]));
        } catch (const ring::NotDivisible& e) {
            throw LaurentViolation("x" + std::to_string(j), e.remainder());
        }
    }
    return xs_[static_cast<std::size_t>(n)];
}

checks::RationalMap SomosEngine::forward_map() const
{
    checks::RationalMap map{oracle_, ring_, {}};
    for (VarIndex i = 0; i < 8; ++i) {
        map.images.emplace(i, RationalFunction(inverse_[i]));
    }
    return map;
}

checks::RationalMap SomosEngine::backward_map() const
{
    checks::RationalMap map{ring_, oracle_, {}};
    for (const auto& [v, value] : ring_in_oracle_) {
        map.images.emplace(v, ring::to_rational(value));
    }
    return map;
}

void SomosEngine::extend_oracle(int n)
{
    const int k = params_.k;
    const int l = params_.l;
    const int m = params_.m;
    while (static_cast<int>(oracle_xs_.size()) <= n) {
        int j = static_cast<int>(oracle_xs_.size());
        while (static_cast<int>(oracle_fs_.size()) <= j - 4) {
            int i = static_cast<int>(oracle_fs_.size());
            oracle_fs_.push_back(oracle_fs_[i - 2].pow(k) / oracle_fs_[i - 4]);
        }
        LocalizedPolynomial num =
            oracle_xs_[j - 2].pow(k) + oracle_fs_[j - 4] * oracle_xs_[j - 1].pow(m) * oracle_xs_[j - 3].pow(l);
        try {
            oracle_xs_.push_back(num / oracle_xs_[j - 4]);
        } catch (const ring::NotDivisible& e) {
            throw LaurentViolation("oracle x" + std::to_string(j), e.remainder());
        }
    }
}

const LocalizedPolynomial& SomosEngine::oracle_localized(int n)
{
    if (n < 0) {
        throw std::invalid_argument("x_n is defined for n >= 0");
    }
    extend_oracle(n);
    return oracle_xs_[static_cast<std::size_t>(n)];
}

RationalFunction SomosEngine::oracle_x(int n)
{
    return ring::to_rational(oracle_localized(n));
}

LocalizedPolynomial SomosEngine::oracle_f(int n)
{
    const auto& X = [&](int i) -> const LocalizedPolynomial& { return oracle_localized(i); };
    LocalizedPolynomial num = X(n + 4) * X(n) - X(n + 2).pow(params_.k);
    return num / (X(n + 3).pow(params_.m) * X(n + 1).pow(params_.l));
}

int SomosEngine::oracle_depth(int max_n, std::size_t budget)
{
    int n = std::max(7, static_cast<int>(oracle_xs_.size()) - 1);
    while (n < max_n) {
        std::size_t biggest = 0;
        for (int i = n - 3; i <= n; ++i) {
            biggest = std::max(biggest, oracle_xs_[static_cast<std::size_t>(i)].core().size());
        }
        if (biggest > budget) {
            break;
        }
        extend_oracle(n + 1);
        ++n;
    }
    return std::min(n, max_n);
}

std::vector<std::uint64_t> SomosEngine::oracle_point(int max_n, std::mt19937_64& rng) const
{
    namespace mp = ring::modp;
    const int k = params_.k;
    const int l = params_.l;
    const int m = params_.m;
    std::uniform_int_distribution<std::uint64_t> dist(1, mp::kPrime - 1);
    std::vector<std::uint64_t> xv(static_cast<std::size_t>(std::max(max_n, 7)) + 1);
    for (int i = 0; i < 8; ++i) {
        xv[i] = dist(rng);
    }
    std::vector<std::uint64_t> fv(xv.size());
    for (int j = 0; j < 4; ++j) {
        std::uint64_t e = mp::sub(mp::mul(xv[j + 4], xv[j]), mp::pow(xv[j + 2], k));
        std::uint64_t d = mp::mul(mp::pow(xv[j + 3], m), mp::pow(xv[j + 1], l));
        if (e == 0) {
            return {};
        }
        fv[j] = mp::mul(e, mp::inv(d));
    }
    for (int j = 4; j + 4 <= max_n; ++j) {
        fv[j] = mp::mul(mp::pow(fv[j - 2], k), mp::inv(fv[j - 4]));
    }
    for (int j = 8; j <= max_n; ++j) {
        if (xv[j - 4] == 0) {
            return {};
        }
        std::uint64_t num = mp::add(mp::pow(xv[j - 2], k),
                                    mp::mul(fv[j - 4], mp::mul(mp::pow(xv[j - 1], m), mp::pow(xv[j - 3], l))));
        xv[j] = mp::mul(num, mp::inv(xv[j - 4]));
    }
    return xv;
}

std::vector<std::uint64_t> SomosEngine::ring_point(const std::vector<std::uint64_t>& xv) const
{
    namespace mp = ring::modp;
    std::vector<std::uint64_t> f(4);
    for (int j = 0; j < 4; ++j) {
        std::uint64_t e = mp::sub(mp::mul(xv[j + 4], xv[j]), mp::pow(xv[j + 2], params_.k));
        f[j] = mp::mul(e, mp::inv(mp::mul(mp::pow(xv[j + 3], params_.m), mp::pow(xv[j + 1], params_.l))));
    }
    return {xv[4], xv[5], xv[6], xv[7], f[0], f[2], f[1], f[3]};
}

std::optional<int> SomosEngine::oracle_mismatch_mod_p(int max_n, int points, std::uint64_t seed)
{
    for (int i = 8; i <= max_n; ++i) {
        x(i);
    }
    std::mt19937_64 rng(seed);
    for (int done = 0; done < points;) {
        std::vector<std::uint64_t> xv = oracle_point(max_n, rng);
        if (xv.empty()) {
            continue;
        }
        std::vector<std::uint64_t> rp = ring_point(xv);
        for (int j = 0; j <= max_n; ++j) {
            if (ring::modp::evaluate(x(j), rp) != xv[j]) {
                return j;
            }
        }
        ++done;
    }
    return std::nullopt;
}

std::optional<int> SomosEngine::f_mismatch_mod_p(int max_n, int points, std::uint64_t seed)
{
    namespace mp = ring::modp;
    const int k = params_.k;
    const int l = params_.l;
    const int m = params_.m;
    std::mt19937_64 rng(seed);
    for (int done = 0; done < points;) {
        std::vector<std::uint64_t> xv = oracle_point(max_n + 4, rng);
        if (xv.empty()) {
            continue;
        }
        std::vector<std::uint64_t> rp = ring_point(xv);
        for (int j = 0; j <= max_n; ++j) {
            std::uint64_t d = mp::mul(mp::pow(xv[j + 3], m), mp::pow(xv[j + 1], l));
            std::uint64_t f = mp::mul(mp::sub(mp::mul(xv[j + 4], xv[j]), mp::pow(xv[j + 2], k)), mp::inv(d));
            if (mp::evaluate(f_closed_form(j), rp) != f) {
                return j;
            }
        }
        ++done;
    }
    return std::nullopt;
}

RationalFunction SomosEngine::u_from_x(int n)
{
    if (n < 2) {
        throw std::invalid_argument("u_n is defined for n >= 2");
    }
    return RationalFunction::make(x(n + 2) * x(n - 2), x(n).pow(params_.k));
}

checks::RationalMap SomosEngine::ring_to_u_map() const
{
    checks::RationalMap map{ring_, utab_, {}};
    for (const auto& [v, value] : ring_in_u_) {
        map.images.emplace(v, ring::to_rational(value));
    }
    return map;
}

checks::RationalMap SomosEngine::u_to_ring_map() const
{
    checks::RationalMap map{utab_, ring_, {}};
    for (VarIndex i = 0; i < 4; ++i) {
        map.images.emplace(i, RationalFunction(inverse_[i]));
    }
    const int k = params_.k;
    for (int j = 2; j <= 5; ++j) {
        map.images.emplace(static_cast<VarIndex>(j + 2),
                           RationalFunction::make(inverse_[j + 2] * inverse_[j - 2], inverse_[j].pow(k)));
    }
    return map;
}

Monomial SomosEngine::xi_prefactor(int n) const
{
    if (n < 0) {
        throw std::invalid_argument("x_n is defined for n >= 0");
    }
    VarIndex hi = n % 2 == 0 ? 2 : 3;
    VarIndex lo = n % 2 == 0 ? 0 : 1;
    int i = n % 2 == 0 ? (n - 2) / 2 : (n - 3) / 2;
    return Monomial::from_powers({{hi, exponent(a(i + 1))}, {lo, exponent(-a(i))}});
}

const LocalizedPolynomial& SomosEngine::xi_tilde(int n)
{
    auto it = xi_.find(n);
    if (it != xi_.end()) {
        return it->second;
    }
    LocalizedPolynomial image = ring::substitute_units(x(n), ring_in_u_, ubasis_);
    const LaurentPolynomial& core = image.core();
    if (core.is_zero()) {
        throw LaurentViolation("xi" + std::to_string(n), core);
    }
    auto x_part = [](const Monomial& mono) {
        std::vector<ring::VarPower> pw;
        for (const auto& vp : mono.powers()) {
            if (vp.var < 4) {
                pw.push_back(vp);
            }
        }
        return Monomial::from_sorted_powers(pw);
    };
    Monomial pre = x_part(core.leading_term().mono);
    for (const auto& t : core.terms()) {
        if (!(x_part(t.mono) == pre)) {
            throw LaurentViolation("xi" + std::to_string(n), core);
        }
    }
    LocalizedPolynomial xi =
        LocalizedPolynomial::from_parts(ubasis_, core.mul_monomial(pre.inverse()), image.exponents());
    return xi_.emplace(n, std::move(xi)).first->second;
}

const RationalFunction& SomosEngine::u_recurrence(int n)
{
    if (n < 2) {
        throw std::invalid_argument("u_n is defined for n >= 2");
    }
    const int k = params_.k;
    const int l = params_.l;
    const int m = params_.m;
    const RationalFunction one(LaurentPolynomial(utab_, 1));
    if (us_.empty()) {
        for (VarIndex j = 4; j < 8; ++j) {
            us_.emplace_back(LaurentPolynomial::variable(utab_, j));
        }
    }
    while (static_cast<int>(us_.size()) + 2 <= n) {
        int j = static_cast<int>(us_.size()) + 2;
        const auto& u = [&](int i) -> const RationalFunction& { return us_[static_cast<std::size_t>(i - 2)]; };
        RationalFunction rhs = (u(j - 2) - one).pow(k) * u(j - 1).pow(m) * u(j - 3).pow(l);
        us_.push_back(one + rhs / ((u(j - 4) - one) * u(j - 2).pow(k)));
    }
    return us_[static_cast<std::size_t>(n - 2)];
}

SomosEngine::PResult SomosEngine::p_polynomial(int i)
{
    if (i < 3) {
        throw std::invalid_argument("P_{2i+2} needs i >= 3");
    }
    const int k = params_.k;
    const int l = params_.l;
    const int m = params_.m;
    auto X = [&](int j) { return x(j); };
    auto F = [&](int j) { return f_closed_form(j); };
    const std::string name = "P" + std::to_string(2 * i + 2);
    auto divide = [&](const LaurentPolynomial& a, const LaurentPolynomial& b, const std::string& what) {
        try {
            return ring::exact_div(a, b);
        } catch (const ring::NotDivisible& e) {
            throw LaurentViolation(what, e.remainder());
        }
    };
    LaurentPolynomial base = X(2 * i - 2);
    LaurentPolynomial p_even =
        divide((X(2 * i) * X(2 * i - 4)).pow(k) - (F(2 * i - 4) * X(2 * i - 1).pow(m) * X(2 * i - 3).pow(l)).pow(k),
               base, "p" + std::to_string(2 * i));
    LaurentPolynomial p_odd = divide(X(2 * i + 1).pow(m) * X(2 * i - 1).pow(l) * X(2 * i - 3).pow(m) *
                                             X(2 * i - 5).pow(l) -
                                         X(2 * i - 1).pow(static_cast<std::int64_t>(k) * m) *
                                             X(2 * i - 3).pow(static_cast<std::int64_t>(k) * l),
                                     base, "p" + std::to_string(2 * i + 1));
    LaurentPolynomial Fi = F(2 * i - 2);
    LaurentPolynomial P = Fi * X(2 * i - 1).pow(static_cast<std::int64_t>(k) * m) *
                              X(2 * i - 3).pow(static_cast<std::int64_t>(k) * l) * X(2 * i - 6) +
                          X(2 * i - 3).pow(m) * X(2 * i - 5).pow(l) * p_even + Fi * X(2 * i - 4).pow(k) * p_odd;
    LaurentPolynomial divisor = X(2 * i - 3).pow(m) * X(2 * i - 4).pow(k) * X(2 * i - 5).pow(l);
    LaurentPolynomial q = divide(P, divisor, name);
    return {std::move(P), std::move(divisor), std::move(q)};
}

VerificationRecord verify_u_equation(SomosEngine& engine, int n)
{
    const std::string subject = "u" + std::to_string(n);
    return checks::timed([&] {
        const auto& p = engine.params();
        const RationalFunction one(LaurentPolynomial(engine.ring_table(), 1));
        RationalFunction u0 = engine.u_from_x(n);
        RationalFunction u1 = engine.u_from_x(n + 1);
        RationalFunction u2 = engine.u_from_x(n + 2);
        RationalFunction u3 = engine.u_from_x(n + 3);
        RationalFunction u4 = engine.u_from_x(n + 4);
        RationalFunction lhs = (u4 - one) * (u0 - one) * u2.pow(p.k);
        RationalFunction rhs = (u2 - one).pow(p.k) * u3.pow(p.m) * u1.pow(p.l);
        if (lhs == rhs) {
            return VerificationRecord::passed("u-equation", subject);
        }
        auto text = [](const RationalFunction& f) {
            return "(" + ring::to_string(f.numerator()) + ") / (" + ring::to_string(f.denominator()) + ")";
        };
        return VerificationRecord::failed("u-equation", subject, "lhs = " + text(lhs) + "; rhs = " + text(rhs));
    });
}

VerificationRecord root_of_unity_check(SomosEngine& engine)
{
    return checks::timed([&] {
        using ring::QuotientRingElement;
        const auto& p = engine.params();
        const unsigned k = static_cast<unsigned>(p.k);
        std::map<VarIndex, QuotientRingElement> at;
        for (VarIndex v = 0; v < 8; ++v) {
            at.emplace(v, v == kF1 ? QuotientRingElement::t_power(k, 1) : QuotientRingElement(k, 1));
        }
        auto eval = [&](const LaurentPolynomial& q) { return ring::eval_quotient_ring(q, at, k); };
        const QuotientRingElement one(k, 1);
        std::ostringstream bad;
        auto expect = [&](const std::string& what, const QuotientRingElement& got, const QuotientRingElement& want) {
            if (!(got == want)) {
                bad << what << " = " << got.to_string() << " (expected " << want.to_string() << "); ";
            }
        };
        expect("x8", eval(engine.x(8)), QuotientRingElement(k, 0));
        expect("x9", eval(engine.x(9)), one);
        std::int64_t k64 = p.k;
        expect("x10", eval(engine.x(10)), QuotientRingElement::t_power(k, k64 * k64 - 1));
        expect("x11", eval(engine.x(11)), one);
        const QuotientRingElement sign(k, p.k % 2 == 0 ? 1 : -1);
        expect("t^a4", QuotientRingElement::t_power(k, engine.a(4)), sign);

        QuotientRingElement p12 = eval(engine.p_polynomial(5).p);
        QuotientRingElement bracket = one;
        if (p.l == 1) {
            bracket = bracket + QuotientRingElement(k, p.m) * QuotientRingElement::t_power(k, p.m * (k64 * k64 - 1));
        }
        if (p.m == 1) {
            bracket = bracket + QuotientRingElement(k, p.l);
        }
        QuotientRingElement closed = QuotientRingElement(k, p.k == 1 ? 1 : 0) + sign * bracket;
        expect("P12", p12, closed);
        bool vanishing = p.k == 1 && p.l >= 2 && p.m >= 2;
        if (p12.is_zero() != vanishing) {
            bad << "P12 = " << p12.to_string() << " but the closed-form case split predicts "
                << (vanishing ? "zero" : "nonzero") << "; ";
        }
        std::string note = "P12 = " + p12.to_string();
        if (bad.str().empty()) {
            return VerificationRecord::passed("root-of-unity", to_string(p), note);
        }
        return VerificationRecord::failed("root-of-unity", to_string(p), bad.str(), note);
    });
}

} // namespace laurentlab::somos
