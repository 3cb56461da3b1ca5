#include <doctest.h>

#include <random>

#include "laurentlab/ring/gcd.hpp"
#include "laurentlab/ring/localized.hpp"
#include "laurentlab/ring/quotient_ring.hpp"
#include "laurentlab/ring/substitute.hpp"
#include "laurentlab/ring/text.hpp"
#include "random_poly.hpp"

using namespace laurentlab::ring;
using testutil::random_poly;

namespace {

TablePtr xyz()
{
    static TablePtr t = VariableTable::make({"x", "y", "z"});
    return t;
}

LaurentPolynomial P(const std::string& s)
{
    return parse_polynomial(xyz(), s);
}

std::vector<mpq_class> random_point(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> d(1, 7);
    std::uniform_int_distribution<int> s(0, 1);
    std::vector<mpq_class> pt;
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class q(mpz_class(d(rng) * (s(rng) ? 1 : -1)), mpz_class(d(rng)));
        q.canonicalize();
        pt.push_back(q);
    }
    return pt;
}

} // namespace

TEST_CASE("addition")
{
    CHECK(P("x + 1") + P("-x") == P("1"));
    auto p = P("3*x^2*y^-1 - z");
    CHECK(p + LaurentPolynomial(xyz()) == p);
    CHECK(P("2*x^-1") + P("3*x^-1") == P("5*x^-1"));
    CHECK_THROWS_AS(p + LaurentPolynomial(VariableTable::make({"x"})), TableMismatch);
}

TEST_CASE("multiplication")
{
    CHECK(P("x - 1") * P("x + 1") == P("x^2 - 1"));
    CHECK(P("x^-1") * P("x") == P("1"));
    auto t = VariableTable::make({"f0"});
    auto f = LaurentPolynomial::variable(t, "f0");
    CHECK((f.pow(-1) + LaurentPolynomial(t, 1)) * f == f + LaurentPolynomial(t, 1));
}

TEST_CASE("units")
{
    CHECK(P("-x^2*y^-3").is_unit());
    CHECK(P("1").is_unit());
    CHECK_FALSE(P("2*x").is_unit());
    CHECK_FALSE(P("x + 1").is_unit());
    CHECK_FALSE(LaurentPolynomial(xyz()).is_unit());
}

TEST_CASE("ring axioms on random triples")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        auto a = random_poly(rng, xyz(), 6, -2, 3);
        auto b = random_poly(rng, xyz(), 6, -2, 3);
        auto c = random_poly(rng, xyz(), 6, -2, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * LaurentPolynomial(xyz(), 1) == a);
        CHECK(a - a == LaurentPolynomial(xyz()));
    }
}

TEST_CASE("products agree with evaluation at rational points")
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 40; ++i) {
        auto a = random_poly(rng, xyz(), 8, -3, 3, 50);
        auto b = random_poly(rng, xyz(), 8, -3, 3, 50);
        auto pt = random_point(rng, 3);
        CHECK(evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt));
        CHECK(evaluate(a - b, pt) == evaluate(a, pt) - evaluate(b, pt));
        CHECK(evaluate(a.pow(3), pt) == evaluate(a, pt) * evaluate(a, pt) * evaluate(a, pt));
    }
}

TEST_CASE("exact division")
{
    CHECK(exact_div(P("x^2 - 1"), P("x - 1")) == P("x + 1"));
    CHECK_THROWS_AS(exact_div(P("x^2 + 1"), P("x + 1")), NotDivisible);
    CHECK(exact_div(P("x*y^-1 + 1"), P("y^-1")) == P("x + y"));
    CHECK_THROWS_AS(exact_div(P("x"), LaurentPolynomial(xyz())), DivisionByZero);
    CHECK(exact_div(LaurentPolynomial(xyz()), P("x + 1")).is_zero());
    CHECK_THROWS_AS(exact_div(P("3*x + 1"), P("2")), NotDivisible);
}

TEST_CASE("division witness is a - b*q for the partial quotient")
{
    auto a = P("x^3 + 2*x*y + 5");
    auto b = P("x + y");
    try {
        exact_div(a, b);
        FAIL("expected NotDivisible");
    } catch (const NotDivisible& e) {
        CHECK_FALSE(e.remainder().is_zero());
        auto diff = a - e.remainder();
        CHECK(divides(b, diff));
    }
}

TEST_CASE("exact division inverts multiplication on random inputs")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        auto a = random_poly(rng, xyz(), 7, -2, 3, 9);
        auto b = random_poly(rng, xyz(), 5, -2, 3, 9);
        if (b.is_zero()) {
            continue;
        }
        auto prod = a * b;
        CHECK(exact_div(prod, b) == a);
        CHECK(exact_div(prod, b) * b == prod);
        auto off = prod + P("x^7*y^5");
        if (!divides(b, off)) {
            CHECK_THROWS_AS(exact_div(off, b), NotDivisible);
        }
    }
}

TEST_CASE("gcd examples")
{
    CHECK(gcd(P("x^2 - 1"), P("x^2 - 2*x + 1")) == P("x - 1"));
    CHECK(gcd(P("x*y"), P("x*z")).is_unit());
    CHECK(gcd(P("x*y + x"), P("x*z + x")) == P("1"));
    CHECK(gcd(P("2*x + 2"), P("4")) == P("2"));
    CHECK(gcd(P("x + 1"), LaurentPolynomial(xyz())) == P("x + 1"));
    CHECK(gcd(P("-x^-2 - x^-3"), LaurentPolynomial(xyz())) == P("x + 1"));
    CHECK_THROWS_AS(gcd(LaurentPolynomial(xyz()), LaurentPolynomial(xyz())), DivisionByZero);
    CHECK(gcd(P("x*y - 1"), P("x^2*y^2 - 1")) == P("x*y - 1"));
    CHECK(coprime(P("x + y"), P("x - y")));
    CHECK_FALSE(coprime(P("2*x"), P("2*y")));
}

TEST_CASE("gcd of f*g and f*h recovers f")
{
    std::mt19937_64 rng(14);
    int checked = 0;
    for (int i = 0; i < 80 && checked < 30; ++i) {
        auto f = random_poly(rng, xyz(), 3, 0, 2, 4);
        auto g = random_poly(rng, xyz(), 3, 0, 2, 4);
        auto h = random_poly(rng, xyz(), 3, 0, 2, 4);
        if (f.is_zero() || g.is_zero() || h.is_zero() || !coprime(g, h)) {
            continue;
        }
        ++checked;
        auto d = gcd(f * g, f * h);
        CHECK(d == normalize(f));
    }
    CHECK(checked >= 10);
}

TEST_CASE("gcd divides both inputs and leaves coprime cofactors")
{
    std::mt19937_64 rng(15);
    for (int i = 0; i < 40; ++i) {
        auto common = random_poly(rng, xyz(), 3, -1, 2, 4);
        auto a = random_poly(rng, xyz(), 4, -1, 2, 4) * common;
        auto b = random_poly(rng, xyz(), 4, -1, 2, 4) * common;
        if (a.is_zero() && b.is_zero()) {
            continue;
        }
        auto d = gcd(a, b);
        CHECK(d.leading_term().coeff > 0);
        CHECK(d.monomial_content().is_one());
        auto qa = exact_div(a, d);
        auto qb = exact_div(b, d);
        if (!(qa.is_zero() && qb.is_zero())) {
            CHECK(gcd(qa, qb).is_one());
        }
    }
}

TEST_CASE("modular certificate never certifies a shared factor")
{
    std::mt19937_64 rng(16);
    for (int i = 0; i < 30; ++i) {
        auto f = normalize(random_poly(rng, xyz(), 3, 0, 2, 4));
        if (f.size() < 2) {
            continue;
        }
        auto a = normalize(f * random_poly(rng, xyz(), 3, 0, 2, 4) + LaurentPolynomial(xyz()));
        auto b = normalize(f * P("x + y + z + 1"));
        if (a.is_zero()) {
            continue;
        }
        CHECK_FALSE(detail::modular_coprime_certificate(a, b));
    }
}

TEST_CASE("canonical text")
{
    CHECK(to_string(P("x^2 - 1")) == "x^2 - 1");
    CHECK(to_string(LaurentPolynomial(xyz())) == "0");
    CHECK(to_string(P("-1 + y^-2*x")) == "-1 + x*y^-2");
    CHECK(to_string(P("3*z*x - 2*x*z")) == "x*z");
    CHECK_THROWS_AS(parse_polynomial(xyz(), ""), ParseError);
    try {
        parse_polynomial(xyz(), "x + w");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_polynomial(xyz(), "x +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial(xyz(), "x^"), ParseError);
    CHECK_THROWS_AS(parse_polynomial(xyz(), "x y"), ParseError);

    auto names = VariableTable::make({"tau:2:1:-1", "t:0:0"});
    auto p = parse_polynomial(names, "tau:2:1:-1^2*t:0:0 - tau:2:1:-1^-1");
    CHECK(p.size() == 2);
    CHECK(parse_polynomial(names, to_string(p)) == p);
}

TEST_CASE("canonical text round trip on random polynomials")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        auto p = random_poly(rng, xyz(), 8, -4, 4, 1000000);
        auto text = to_string(p);
        CHECK(parse_polynomial(xyz(), text) == p);
        CHECK(to_string(parse_polynomial(xyz(), text)) == text);
    }
}

TEST_CASE("rational functions are reduced and normalized")
{
    auto r = RationalFunction::make(P("x^2 - 1"), P("-x^2 + 2*x - 1"));
    CHECK(r.numerator() == P("-x - 1"));
    CHECK(r.denominator() == P("x - 1"));
    auto again = RationalFunction::make(r.numerator(), r.denominator());
    CHECK(again == r);
    auto m = RationalFunction::make(P("x"), P("y^2"));
    CHECK(m.is_laurent());
    CHECK(m.numerator() == P("x*y^-2"));
    CHECK_THROWS_AS(RationalFunction::make(P("x"), LaurentPolynomial(xyz())), DivisionByZero);
}

TEST_CASE("rational arithmetic agrees with evaluation")
{
    std::mt19937_64 rng(18);
    for (int i = 0; i < 25; ++i) {
        auto a = RationalFunction::make(random_poly(rng, xyz(), 3, -1, 2, 5), random_poly(rng, xyz(), 3, 0, 2, 5) + P("x^3"));
        auto b = RationalFunction::make(random_poly(rng, xyz(), 3, -1, 2, 5), random_poly(rng, xyz(), 3, 0, 2, 5) + P("y^3"));
        auto pt = random_point(rng, 3);
        auto value = [&](const RationalFunction& r) -> mpq_class {
            return evaluate(r.numerator(), pt) / evaluate(r.denominator(), pt);
        };
        if (evaluate(a.denominator(), pt) == 0 || evaluate(b.denominator(), pt) == 0) {
            continue;
        }
        auto s = a + b;
        auto p = a * b;
        CHECK(gcd(s.numerator(), s.denominator()).is_one());
        CHECK(gcd(p.numerator(), p.denominator()).is_one());
        if (evaluate(s.denominator(), pt) != 0) {
            CHECK(value(s) == value(a) + value(b));
        }
        if (evaluate(p.denominator(), pt) != 0) {
            CHECK(value(p) == value(a) * value(b));
        }
        CHECK(a - a == RationalFunction(LaurentPolynomial(xyz())));
    }
}

TEST_CASE("substitution")
{
    auto t = VariableTable::make({"x0", "x2", "x4"});
    auto p = parse_polynomial(t, "x4*x0*x2^-2");
    Assignment ones;
    for (VarIndex v = 0; v < 3; ++v) {
        ones.emplace(v, RationalFunction(LaurentPolynomial(t, 1)));
    }
    CHECK(substitute(p, ones, t) == RationalFunction(LaurentPolynomial(t, 1)));

    Assignment identity;
    for (VarIndex v = 0; v < 3; ++v) {
        identity.emplace(v, RationalFunction(LaurentPolynomial::variable(t, v)));
    }
    auto q = parse_polynomial(t, "x0^2*x2^-1 + 3*x4 - 1");
    CHECK(substitute(q, identity, t).numerator() == q);

    Assignment zero = ones;
    zero.insert_or_assign(1, RationalFunction(LaurentPolynomial(t)));
    CHECK_THROWS_AS(substitute(p, zero, t), SubstitutionError);
    Assignment missing;
    CHECK_THROWS_AS(substitute(p, missing, t), SubstitutionError);
}

TEST_CASE("substitution is a ring homomorphism")
{
    std::mt19937_64 rng(19);
    auto target = VariableTable::make({"u", "v"});
    for (int i = 0; i < 20; ++i) {
        Assignment values;
        values.emplace(0, RationalFunction::make(random_poly(rng, target, 3, -1, 2, 3) + LaurentPolynomial(target, 7),
                                                 parse_polynomial(target, "u + v + 1")));
        values.emplace(1, RationalFunction(parse_polynomial(target, "-u^2*v^-1")));
        values.emplace(2, RationalFunction::make(parse_polynomial(target, "u - v"), parse_polynomial(target, "u*v + 2")));
        auto a = random_poly(rng, xyz(), 4, -2, 2, 5);
        auto b = random_poly(rng, xyz(), 4, -2, 2, 5);
        auto sa = substitute(a, values, target);
        auto sb = substitute(b, values, target);
        CHECK(substitute(a * b, values, target) == sa * sb);
        CHECK(substitute(a + b, values, target) == sa + sb);
        CHECK(substitute_fraction(a * b, values, target) == Fraction{(sa * sb).numerator(), (sa * sb).denominator()});
    }
}

TEST_CASE("quotient ring arithmetic")
{
    for (unsigned k = 1; k <= 5; ++k) {
        auto t = QuotientRingElement::t_power(k, 1);
        CHECK(t * QuotientRingElement::t_power(k, static_cast<std::int64_t>(k) - 1) == QuotientRingElement(k, -1));
        CHECK(t.pow(static_cast<std::int64_t>(k)) == QuotientRingElement(k, -1));
        CHECK(t.pow(-1) * t == QuotientRingElement(k, 1));
        // t^(a_4) with a_4 = k(k^2 - 2)
        std::int64_t a4 = static_cast<std::int64_t>(k) * (static_cast<std::int64_t>(k) * k - 2);
        CHECK(QuotientRingElement::t_power(k, a4) == QuotientRingElement(k, k % 2 ? -1 : 1));
        CHECK(QuotientRingElement(k, 1) + t.pow(static_cast<std::int64_t>(k)) == QuotientRingElement(k));
    }
    auto table = VariableTable::make({"t"});
    std::map<VarIndex, QuotientRingElement> at_t{{0, QuotientRingElement::t_power(3, 1)}};
    CHECK(eval_quotient_ring(parse_polynomial(table, "1 + t^3"), at_t, 3).is_zero());
    CHECK(eval_quotient_ring(LaurentPolynomial(table, 5), at_t, 3) == QuotientRingElement(3, 5));
    std::map<VarIndex, QuotientRingElement> not_unit{{0, QuotientRingElement(3, 2)}};
    CHECK_THROWS_AS(eval_quotient_ring(parse_polynomial(table, "t^-1"), not_unit, 3), SubstitutionError);
}

TEST_CASE("quotient ring evaluation at constants matches integer evaluation")
{
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int i = 0; i < 30; ++i) {
        auto p = random_poly(rng, xyz(), 6, 0, 3, 20);
        std::map<VarIndex, QuotientRingElement> values;
        std::vector<mpq_class> pt;
        for (VarIndex v = 0; v < 3; ++v) {
            int c = d(rng);
            values.emplace(v, QuotientRingElement(4, c));
            pt.emplace_back(c);
        }
        auto e = eval_quotient_ring(p, values, 4);
        CHECK(mpq_class(e.coeffs()[0]) == evaluate(p, pt));
        CHECK(e.coeffs()[1] == 0);
    }
}

TEST_CASE("localized polynomials")
{
    auto e = P("x*y - 1");
    auto basis = make_basis(xyz(), {e});
    LocalizedPolynomial a(basis, P("x^2*y^2 - 1"));
    CHECK(a.core() == P("x*y + 1"));
    CHECK(a.exponents()[0] == 1);
    auto inv = LocalizedPolynomial(basis, P("z")) / LocalizedPolynomial::factor(basis, 0);
    CHECK(inv.exponents()[0] == -1);
    CHECK_FALSE(inv.is_laurent());
    auto sum = inv + LocalizedPolynomial(basis, P("-z"));
    auto f = sum.to_fraction();
    CHECK(f == Fraction{P("2*z - x*y*z"), e});
    auto back = inv * LocalizedPolynomial::factor(basis, 0);
    CHECK(back.is_laurent());
    CHECK(back.to_laurent() == P("z"));
    CHECK_THROWS_AS(LocalizedPolynomial(basis, P("x")) / LocalizedPolynomial(basis, P("x + 2")), NotDivisible);
    CHECK((inv - inv).is_zero());
}
