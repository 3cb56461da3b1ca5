#include <doctest.h>

#include "laurentlab/ring/gcd.hpp"
#include "laurentlab/ring/quotient_ring.hpp"
#include "laurentlab/ring/text.hpp"
#include "laurentlab/somos/somos.hpp"
#include "laurentlab/somos/suite.hpp"

using namespace laurentlab;
using namespace laurentlab::ring;
using somos::SomosEngine;
using somos::SomosParams;

namespace {

LaurentPolynomial R(SomosEngine& e, const std::string& s)
{
    return parse_polynomial(e.ring_table(), s);
}

// Integer all-ones iteration written out longhand.
std::vector<mpz_class> ones_values(int k, int l, int m, int n)
{
    std::vector<mpz_class> c(8, 1);
    for (int j = 8; j <= n; ++j) {
        auto p = [](const mpz_class& b, int e) {
            mpz_class r = 1;
            for (int i = 0; i < e; ++i) {
                r *= b;
            }
            return r;
        };
        mpz_class num = p(c[j - 2], k) + p(c[j - 1], m) * p(c[j - 3], l);
        REQUIRE(num % c[j - 4] == 0);
        c.push_back(num / c[j - 4]);
    }
    return c;
}

mpz_class eval_ones(const LaurentPolynomial& p)
{
    mpz_class s = 0;
    for (const auto& t : p.terms()) {
        s += t.coeff;
    }
    return s;
}

RationalFunction ratio(const LocalizedPolynomial& a, const LocalizedPolynomial& b, const LocalizedPolynomial& c, int k)
{
    return to_rational(a) * to_rational(b) / to_rational(c).pow(k);
}

} // namespace

TEST_CASE("a sequence and F closed form")
{
    CHECK(somos::a_seq(2, 3) == 3);
    CHECK(somos::a_seq(5, 0) == 0);
    CHECK(somos::a_seq(5, -1) == -1);
    CHECK(somos::a_seq(3, 4) == 21);
    SomosEngine e({2, 1, 1});
    CHECK(e.f_closed_form(0) == R(e, "f0"));
    CHECK(e.f_closed_form(2) == R(e, "f1"));
    CHECK(e.f_closed_form(4) == R(e, "f1^2*f0^-1"));
    for (int n = 0; n < 20; ++n) {
        CHECK(e.f_closed_form(n + 4) * e.f_closed_form(n) == e.f_closed_form(n + 2).pow(2));
    }
}

TEST_CASE("first iterates")
{
    SomosEngine e({2, 1, 1});
    for (int n = 4; n < 8; ++n) {
        CHECK(e.x(n) == R(e, "x" + std::to_string(n)));
    }
    CHECK(e.x(8) == R(e, "x6^2*x4^-1 + f1^2*f0^-1*x7*x5*x4^-1"));
    CHECK(RationalFunction(e.inverse_images()[3]) ==
          RationalFunction::make(R(e, "x4*x6*g1 + x5^2"), R(e, "x7")));
}

TEST_CASE("all-ones values")
{
    for (SomosParams p : {SomosParams{1, 1, 1}, SomosParams{2, 1, 1}, SomosParams{1, 2, 1}, SomosParams{1, 1, 2}}) {
        SomosEngine e(p);
        auto c = ones_values(p.k, p.l, p.m, 14);
        for (int n = 4; n <= 14; ++n) {
            CHECK(somos::c_sequence(p, n) == c[n]);
            if (n <= 12) {
                CHECK(eval_ones(e.x(n)) == c[n]);
            }
        }
        CHECK(somos::c_sequence(p, 8) == 2);
        CHECK(somos::c_sequence(p, 9) == 1 + (1 << p.m));
    }
    SomosParams p{2, 1, 1};
    std::vector<int> want{2, 3, 7, 23, 59, 314, 1529};
    for (int n = 8; n <= 14; ++n) {
        CHECK(somos::c_sequence(p, n) == want[n - 8]);
    }
    CHECK(somos::c_sequence({1, 1, 1}, 14) == 111);
    CHECK(somos::c_sequence({1, 1, 1}, 15) == 191);
}

TEST_CASE("oracle agrees with the ring iteration")
{
    SomosEngine e({1, 1, 1});
    CHECK(e.oracle_x(3) == RationalFunction(LaurentPolynomial::variable(e.oracle_table(), 3)));
    for (int n = 8; n <= 12; ++n) {
        LocalizedPolynomial image = substitute_units(e.x(n), e.ring_in_oracle(), e.oracle_basis());
        CHECK(image == e.oracle_localized(n));
        CHECK(checks::apply(e.forward_map(), e.oracle_x(n)) == RationalFunction(e.x(n)));
    }
    for (int n = 0; n < 6; ++n) {
        CHECK(to_rational(e.oracle_f(n)) == checks::apply(e.backward_map(), RationalFunction(e.f_closed_form(n))));
    }
    CHECK_FALSE(e.oracle_mismatch_mod_p(16, 3, 7).has_value());

    SomosEngine m({1, 1, 1}, true);
    CHECK(m.oracle_mismatch_mod_p(11, 2, 7) == std::optional<int>(8));
    CHECK_THROWS_AS(m.x(12), checks::LaurentViolation);
}

TEST_CASE("coordinate maps round trip")
{
    SomosEngine e({2, 1, 2});
    auto fwd = e.forward_map();
    auto bwd = e.backward_map();
    std::vector<VarIndex> all{0, 1, 2, 3, 4, 5, 6, 7};
    auto r1 = checks::check_round_trip("roundtrip", fwd, bwd, all);
    auto r2 = checks::check_round_trip("roundtrip", bwd, fwd, all);
    CHECK(r1.summary().pass == 8);
    CHECK(r2.summary().pass == 8);
    auto r3 = checks::check_round_trip("roundtrip", e.ring_to_u_map(), e.u_to_ring_map(), all);
    auto r4 = checks::check_round_trip("roundtrip", e.u_to_ring_map(), e.ring_to_u_map(), all);
    CHECK(r3.summary().pass == 8);
    CHECK(r4.summary().pass == 8);
}

TEST_CASE("u equation")
{
    for (auto [p, n] : {std::pair{SomosParams{1, 1, 1}, 2}, std::pair{SomosParams{2, 1, 1}, 2},
                        std::pair{SomosParams{1, 2, 2}, 3}}) {
        SomosEngine e(p);
        CHECK(somos::verify_u_equation(e, n).ok());
    }
    SomosEngine m({1, 1, 1}, true);
    CHECK_FALSE(somos::verify_u_equation(m, 2).ok());
}

TEST_CASE("xi tilde")
{
    SomosEngine e({2, 1, 1});
    auto u = [&](int j) { return LocalizedPolynomial(e.u_basis(), LaurentPolynomial::variable(e.u_table(), j + 2)); };
    CHECK(e.xi_tilde(4) == u(2));
    CHECK(e.xi_tilde(6) == u(2).pow(2) * u(4));
    for (int n = 4; n <= 10; ++n) {
        LocalizedPolynomial full = substitute_units(e.x(n), e.ring_in_u(), e.u_basis());
        LaurentPolynomial pre = LaurentPolynomial::monomial(e.u_table(), e.xi_prefactor(n));
        CHECK(full == LocalizedPolynomial(e.u_basis(), pre) * e.xi_tilde(n));
    }
    for (int n = 6; n <= 8; ++n) {
        CHECK(ratio(e.xi_tilde(n + 2), e.xi_tilde(n - 2), e.xi_tilde(n), 2) == e.u_recurrence(n));
    }
}

TEST_CASE("P divisibility")
{
    SomosEngine a({1, 1, 1});
    auto r = a.p_polynomial(3);
    CHECK(r.quotient == a.x(8));
    CHECK(r.quotient * r.divisor == r.p);
    SomosEngine b({2, 1, 1});
    CHECK(b.p_polynomial(4).quotient == b.x(10));
}

TEST_CASE("evaluation at a root of unity")
{
    for (int k = 1; k <= 4; ++k) {
        for (int l = 1; l <= 2; ++l) {
            for (int m = 1; m <= 2; ++m) {
                SomosEngine e({k, l, m});
                auto rec = somos::root_of_unity_check(e);
                CHECK_MESSAGE(rec.ok(), rec.witness.value_or(""));
            }
        }
    }
    SomosEngine e({3, 1, 1});
    CHECK(QuotientRingElement::t_power(3, e.a(4)) == QuotientRingElement(3, -1));
}

TEST_CASE("bad parameters")
{
    CHECK_THROWS_AS(SomosEngine({0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(somos::c_sequence({1, 1, 1}, 3), std::invalid_argument);
}

TEST_CASE("full suite and negative control")
{
    somos::SuiteConfig config;
    SomosEngine e({1, 1, 1});
    auto report = somos::run_suite(e, config, somos::check_names());
    for (const auto& r : report.records) {
        CHECK_MESSAGE(r.status != checks::Status::fail, r.check_id << " " << r.subject << ": " << r.witness.value_or(""));
    }
    CHECK(report.summary().pass > 100);

    SomosEngine m({1, 1, 1}, true);
    auto bad = somos::run_suite(m, config, {"laurent"});
    CHECK(bad.summary().fail > 0);
    CHECK_THROWS_AS(somos::run_suite(e, config, {"laurent", "nonsense"}), std::invalid_argument);
}
