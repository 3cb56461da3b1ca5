#include "laurentlab/ring/gcd.hpp"

#include "laurentlab/ring/modular.hpp"

#include <algorithm>
#include <random>

namespace laurentlab::ring {

LaurentPolynomial normalize(const LaurentPolynomial& p)
{
    if (p.is_zero()) {
        return p;
    }
    auto q = split_monomial_content(p).second;
    if (q.leading_term().coeff < 0) {
        q = -q;
    }
    return q;
}

namespace detail {

namespace {

using modp::kPrime;
using modp::mul;
using modp::sub;

using UniMod = std::vector<std::uint64_t>;

void trim(UniMod& u)
{
    while (!u.empty() && u.back() == 0) {
        u.pop_back();
    }
}

UniMod remainder(UniMod a, const UniMod& b)
{
    std::uint64_t inv = modp::inv(b.back());
    while (a.size() >= b.size()) {
        std::uint64_t f = mul(a.back(), inv);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[i + shift] = sub(a[i + shift], mul(f, b[i]));
        }
        trim(a);
    }
    return a;
}

std::size_t gcd_degree(UniMod a, UniMod b)
{
    while (!b.empty()) {
        UniMod r = remainder(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Image of p in (Z/p)[v] with every other variable set from point.
UniMod evaluate_except(const LaurentPolynomial& p, VarIndex v, const std::vector<std::uint64_t>& point)
{
    UniMod u(static_cast<std::size_t>(p.max_degree_in(v)) + 1, 0);
    for (const auto& t : p.terms()) {
        std::uint64_t c = modp::reduce(t.coeff);
        std::size_t deg = 0;
        for (const auto& vp : t.mono.powers()) {
            if (vp.var == v) {
                deg = static_cast<std::size_t>(vp.exp);
            } else {
                c = mul(c, modp::pow(point[vp.var], vp.exp));
            }
        }
        u[deg] = modp::add(u[deg], c);
    }
    return u;
}

} // namespace

bool modular_coprime_certificate(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    auto va = a.variables();
    auto vb = b.variables();
    std::vector<VarIndex> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    if (common.empty()) {
        return true;
    }
    std::mt19937_64 rng(0x6c61757265ULL);
    std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 1);
    std::vector<std::uint64_t> point(a.table()->arity());
    for (VarIndex v : common) {
        bool certified = false;
        for (int attempt = 0; attempt < 3 && !certified; ++attempt) {
            for (auto& x : point) {
                x = dist(rng);
            }
            UniMod ua = evaluate_except(a, v, point);
            UniMod ub = evaluate_except(b, v, point);
            // The leading coefficients in v must survive the evaluation for the
            // image gcd degree to bound the true one.
            if (ua.back() == 0 || ub.back() == 0) {
                continue;
            }
            certified = gcd_degree(ua, ub) == 0;
        }
        if (!certified) {
            return false;
        }
    }
    return true;
}

} // namespace detail

namespace {

using Uni = std::vector<LaurentPolynomial>;

Uni to_uni(const LaurentPolynomial& p, VarIndex v)
{
    std::size_t deg = static_cast<std::size_t>(p.max_degree_in(v));
    std::vector<std::vector<Term>> buckets(deg + 1);
    for (const auto& t : p.terms()) {
        auto e = t.mono.exponent(v);
        buckets[static_cast<std::size_t>(e)].push_back({t.mono / Monomial::variable(v, e), t.coeff});
    }
    Uni u;
    u.reserve(deg + 1);
    for (auto& b : buckets) {
        u.push_back(LaurentPolynomial::from_terms(p.table(), std::move(b)));
    }
    return u;
}

LaurentPolynomial from_uni(const Uni& u, VarIndex v, const TablePtr& table)
{
    std::vector<Term> terms;
    for (std::size_t e = 0; e < u.size(); ++e) {
        Monomial shift = Monomial::variable(v, static_cast<std::int32_t>(e));
        for (const auto& t : u[e].terms()) {
            terms.push_back({t.mono * shift, t.coeff});
        }
    }
    return LaurentPolynomial::from_terms(table, std::move(terms));
}

void trim(Uni& u)
{
    while (!u.empty() && u.back().is_zero()) {
        u.pop_back();
    }
}

Uni pseudo_remainder(Uni r, const Uni& b)
{
    const std::size_t n = b.size() - 1;
    const std::size_t m = r.size() - 1;
    const LaurentPolynomial& lc = b.back();
    std::size_t steps = 0;
    while (!r.empty() && r.size() - 1 >= n) {
        LaurentPolynomial lr = r.back();
        std::size_t shift = r.size() - 1 - n;
        for (auto& c : r) {
            c = c * lc;
        }
        for (std::size_t j = 0; j <= n; ++j) {
            r[j + shift] -= lr * b[j];
        }
        trim(r);
        ++steps;
    }
    std::size_t missing = m - n + 1 - steps;
    if (missing > 0 && !r.empty()) {
        LaurentPolynomial f = lc.pow(static_cast<std::int64_t>(missing));
        for (auto& c : r) {
            c = c * f;
        }
    }
    return r;
}

LaurentPolynomial gcd_rec(const LaurentPolynomial& a, const LaurentPolynomial& b);

LaurentPolynomial uni_content(const Uni& u)
{
    LaurentPolynomial g = normalize(u.back());
    for (std::size_t i = u.size(); i-- > 0 && !g.is_one();) {
        if (!u[i].is_zero()) {
            g = gcd_rec(g, u[i]);
        }
    }
    return g;
}

void divide_all(Uni& u, const LaurentPolynomial& d)
{
    if (d.is_one()) {
        return;
    }
    for (auto& c : u) {
        c = exact_div(c, d);
    }
}

LaurentPolynomial gcd_rec(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    if (a.is_zero() && b.is_zero()) {
        throw DivisionByZero();
    }
    if (a.is_zero()) {
        return normalize(b);
    }
    if (b.is_zero()) {
        return normalize(a);
    }
    const TablePtr& table = a.table();
    LaurentPolynomial A = normalize(a);
    LaurentPolynomial B = normalize(b);
    mpz_class ca = A.integer_content();
    mpz_class cb = B.integer_content();
    mpz_class gc;
    mpz_gcd(gc.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    LaurentPolynomial G(table, gc);
    A = A.div_scalar_exact(ca);
    B = B.div_scalar_exact(cb);
    if (A.is_constant() || B.is_constant()) {
        return G;
    }
    if (A == B) {
        return A.mul_scalar(gc);
    }
    auto va = A.variables();
    auto vb = B.variables();
    std::vector<VarIndex> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    if (common.empty()) {
        return G;
    }
    const LaurentPolynomial& small = A.size() <= B.size() ? A : B;
    const LaurentPolynomial& large = A.size() <= B.size() ? B : A;
    if (divides(small, large)) {
        return small.mul_scalar(gc);
    }
    if (detail::modular_coprime_certificate(A, B)) {
        return G;
    }

    VarIndex v = common.front();
    std::int32_t best = -1;
    for (VarIndex w : common) {
        std::int32_t d = std::max(A.max_degree_in(w), B.max_degree_in(w));
        if (best < 0 || d < best) {
            best = d;
            v = w;
        }
    }
    Uni u = to_uni(A, v);
    Uni w = to_uni(B, v);
    LaurentPolynomial cu = uni_content(u);
    LaurentPolynomial cw = uni_content(w);
    LaurentPolynomial gcont = gcd_rec(cu, cw);
    divide_all(u, cu);
    divide_all(w, cw);
    if (u.size() < w.size()) {
        std::swap(u, w);
    }

    LaurentPolynomial g(table, 1);
    LaurentPolynomial h(table, 1);
    Uni last;
    while (true) {
        std::size_t delta = u.size() - w.size();
        Uni r = pseudo_remainder(u, w);
        if (r.empty()) {
            last = std::move(w);
            break;
        }
        if (r.size() == 1) {
            last = Uni{LaurentPolynomial(table, 1)};
            break;
        }
        u = std::move(w);
        LaurentPolynomial d = g * h.pow(static_cast<std::int64_t>(delta));
        divide_all(r, d);
        w = std::move(r);
        g = u.back();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = exact_div(g.pow(static_cast<std::int64_t>(delta)), h.pow(static_cast<std::int64_t>(delta - 1)));
        }
    }
    divide_all(last, uni_content(last));
    return normalize(from_uni(last, v, table) * gcont).mul_scalar(gc);
}

} // namespace

LaurentPolynomial gcd(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    if (a.table() != b.table()) {
        throw TableMismatch();
    }
    return gcd_rec(a, b);
}

bool coprime(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    return gcd(a, b).is_one();
}

} // namespace laurentlab::ring
