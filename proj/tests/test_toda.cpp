#include <doctest.h>

#include "laurentlab/ring/gcd.hpp"
#include "laurentlab/ring/text.hpp"
#include "laurentlab/toda/suite.hpp"
#include "laurentlab/toda/toda.hpp"

using namespace laurentlab;
using namespace laurentlab::ring;
using toda::Point;
using toda::TodaEngine;
using toda::TodaParams;
using toda::e1;
using toda::e2;

namespace {

const TodaParams ones{1, 1, 1, 1};
const TodaParams big_k1{2, 1, 1, 1};
const TodaParams big_l1{1, 1, 2, 1};

// a and b on the e2 axis written out longhand: y(t, j) for the point j*e2.
struct Fields {
    std::map<std::pair<int, int>, std::int64_t> a, b;

    Fields(const TodaParams& p, int max_t, int span)
    {
        for (int j = -span; j <= span; ++j) {
            a[{0, j}] = j == 0 ? 1 : 0;
            a[{1, j}] = 0;
            b[{0, j}] = 0;
            b[{1, j}] = j == -1 ? 1 : 0;
        }
        auto get = [&](auto& y, int t, int j) { return std::abs(j) > span ? 0 : y[{t, j}]; };
        for (int t = 1; t < max_t; ++t) {
            for (int j = -span; j <= span; ++j) {
                for (auto* y : {&a, &b}) {
                    (*y)[{t + 1, j}] = p.k1 * get(*y, t, j - 1) + p.k2 * get(*y, t, j + 1) - get(*y, t - 1, j);
                }
            }
        }
    }
};

LaurentPolynomial S(TodaEngine& e, const std::string& s)
{
    return parse_polynomial(e.s_table(), s);
}

LaurentPolynomial W(TodaEngine& e, const std::string& s)
{
    return parse_polynomial(e.w_table(), s);
}

mpz_class eval_ones(const LaurentPolynomial& p)
{
    mpz_class s = 0;
    for (const auto& t : p.terms()) {
        s += t.coeff;
    }
    return s;
}

int failures(const checks::SuiteReport& r)
{
    int n = 0;
    for (const auto& x : r.records) {
        n += x.ok() ? 0 : 1;
    }
    return n;
}

} // namespace

TEST_CASE("exponent fields")
{
    for (const auto& p : {ones, big_k1, big_l1}) {
        toda::ExponentFields f(p, 6);
        Fields oracle(p, 6, 8);
        for (int t = 0; t <= 6; ++t) {
            for (int j = -5; j <= 5; ++j) {
                CHECK(f.a(t, j * e2) == oracle.a[{t, j}]);
                CHECK(f.b(t, j * e2) == oracle.b[{t, j}]);
            }
            CHECK(f.a(t, e1) == 0);
            CHECK(f.b(t, e1 + e2) == 0);
        }
    }
    toda::ExponentFields f(ones, 3);
    CHECK(f.a(2, Point{0, 0}) == -1);
    CHECK(f.b(1, -1 * e2) == 1);
}

TEST_CASE("F closed form")
{
    TodaEngine e(big_k1, 5);
    CHECK(e.f_closed(0, Point{0, 0}) == S(e, "F:0:0:0"));
    CHECK(e.f_closed(1, e1) == S(e, "F:1:1:1"));
    CHECK(e.f_closed(2, Point{0, 0}) == S(e, "F:1:1:-1^2*F:1:-1:1*F:0:0:0^-1"));
    Fields oracle(big_k1, 4, 6);
    for (int t = 2; t <= 4; ++t) {
        Point n = t % 2 == 0 ? Point{0, 0} : e1;
        LaurentPolynomial want(e.s_table(), 1);
        for (int j = -4; j <= 4; ++j) {
            Point f0 = n - j * e2;
            Point f1 = n - (j + 1) * e2;
            if (auto x = oracle.a[{t, j}]; x != 0) {
                want = want * e.s_var("F", 0, f0).pow(x);
            }
            if (auto x = oracle.b[{t, j}]; x != 0) {
                want = want * e.s_var("F", 1, f1).pow(x);
            }
        }
        CHECK(e.f_closed(t, n) == want);
    }
}

TEST_CASE("first iterates")
{
    TodaEngine e(ones, 4);
    CHECK(e.tau(2, Point{0, 0}) == S(e, "tau:2:0:0"));
    CHECK(e.tau(4, Point{0, 0}) ==
          S(e, "tau:2:0:0^-1*tau:3:1:-1*tau:3:-1:1 + tau:2:0:0^-1*F:0:0:0^-1*F:1:1:-1*F:1:-1:1*tau:3:-1:-1*tau:3:1:1"));
    // tau_1 comes from the backward step, so the forward step at t = 3 holds exactly.
    const auto& t1 = e.tau(1, e1);
    CHECK_FALSE(t1.is_unit());
    CHECK(e.tau(3, e1) * t1 ==
          e.tau(2, e1 - e2) * e.tau(2, e1 + e2) + e.f_closed(1, e1) * e.tau(2, Point{0, 0}) * e.tau(2, 2 * e1));
}

TEST_CASE("layers are Laurent and match the modular oracle")
{
    for (const auto& p : {ones, big_k1, big_l1}) {
        TodaEngine e(p, 5);
        e.iterate(6);
        CHECK(e.computed_layers() == 6);
        CHECK_FALSE(e.oracle_mismatch_mod_p(6, 3, 7).has_value());
    }
}

TEST_CASE("translation")
{
    TodaEngine e(big_l1, 5);
    auto moved = e.translate(e.tau(4, Point{0, 0}), 2 * e1);
    REQUIRE(moved.has_value());
    CHECK(*moved == e.tau(4, 2 * e1));
    CHECK_FALSE(e.translate(e.tau(4, Point{0, 0}), Point{14, 0}).has_value());
}

TEST_CASE("coordinate map images")
{
    TodaEngine e(ones, 3);
    auto tw = e.t_in_w();
    auto img = [&](const std::string& name) { return tw.images.at(e.s_table()->index(name)); };
    CHECK(img("tau:2:0:0") == RationalFunction::make(W(e, "U:1:0:0*tau:1:1:-1*tau:1:-1:1"), W(e, "tau:0:0:0")));
    CHECK(img("F:0:0:0") ==
          RationalFunction::make(W(e, "tau:1:1:-1*tau:1:-1:1*U:1:0:0 - tau:1:1:-1*tau:1:-1:1"),
                                 W(e, "tau:1:-1:-1*tau:1:1:1")));
    auto wt = e.w_in_t();
    CHECK(wt.images.at(e.w_table()->index("U:1:0:0")) ==
          RationalFunction::make(e.tau(2, Point{0, 0}) * e.tau(0, Point{0, 0}),
                                 e.tau(1, -1 * e2) * e.tau(1, e2)));
}

TEST_CASE("round trips")
{
    TodaEngine e(ones, 3);
    toda::SuiteConfig c;
    auto r = toda::check_roundtrip(e, c);
    int passed = 0;
    for (const auto& x : r.records) {
        CHECK(x.ok());
        passed += x.status == checks::Status::pass ? 1 : 0;
    }
    CHECK(passed > 20);
}

TEST_CASE("sigma tilde")
{
    TodaEngine e(ones, 5);
    CHECK(e.sigma_tilde(2, Point{0, 0}) == LocalizedPolynomial(e.u_basis(), W(e, "U:1:0:0")));
    CHECK(e.sigma_tilde(3, e1) == LocalizedPolynomial(e.u_basis(), W(e, "U:2:1:1*U:1:2:0*U:1:0:2")));
    CHECK_FALSE(e.sigma_tilde(4, Point{0, 0}).core().is_unit());
}

TEST_CASE("U equation")
{
    for (const auto& p : {ones, big_k1, TodaParams{1, 2, 1, 1}}) {
        TodaEngine e(p, 5);
        CHECK(toda::verify_u_equation(e, 3, -1 * e2).ok());
        CHECK(toda::verify_u_equation(e, 2, Point{0, 0}).ok());
    }
}

TEST_CASE("U values sharing a sigma tilde factor are not coprime")
{
    TodaEngine e(ones, 5);
    auto strip = [&](const LaurentPolynomial& p) { return LocalizedPolynomial(e.u_basis(), p).core(); };
    RationalFunction u3 = e.u_from_sigma(3, Point{0, 0});
    RationalFunction u4 = e.u_from_sigma(4, e2);
    LaurentPolynomial g = gcd(strip(u3.numerator()), strip(u4.denominator()));
    CHECK_FALSE(g.is_unit());
    auto q = try_div(g, e.sigma_tilde(4, Point{0, 0}).core());
    REQUIRE(q.has_value());
    CHECK(q->is_unit());
}

TEST_CASE("divisibility at t = 5")
{
    for (const auto& p : {ones, big_k1}) {
        TodaEngine e(p, 5);
        toda::ValueFn tau = [&](int t, Point n) { return e.tau(t, n); };
        toda::ValueFn f = [&](int t, Point n) { return e.f_closed(t, n); };
        auto d = toda::divisibility_parts(p, 5, Point{0, 0}, tau, f);
        CHECK(d.collapse_defect.is_zero());
        CHECK(d.p == e.tau(6, Point{0, 0}) * d.divisor);
    }
}

TEST_CASE("specialized displays")
{
    TodaEngine e(ones, 5);
    toda::Specialization sp(e);
    auto T = [&](const std::string& s) { return parse_polynomial(sp.table(), s); };
    CHECK(sp.f(2, Point{0, 0}) == T("t:0:0"));
    CHECK(sp.tau(4, Point{0, 0}) == T("1 + t:0:0"));
    CHECK(sp.f(3, e1) == T("t:2:0*t:0:2"));
    auto one_plus = [&](const std::string& v) { return T("1") + T(v); };
    CHECK(sp.tau(5, e1) == one_plus("t:2:0") * one_plus("t:0:2") +
                               T("t:2:0*t:0:2") * one_plus("t:0:0") * one_plus("t:2:2"));
}

TEST_CASE("P at (6, 0)")
{
    CHECK(toda::p6_closed_form(ones) == -48);
    CHECK(toda::p6_closed_form(big_k1) == -224);
    CHECK(toda::p6_closed_form(big_l1) == -224);
    for (const auto& p : {ones, big_k1, big_l1}) {
        TodaEngine e(p, 5);
        CHECK(toda::p6_direct(e) == toda::p6_closed_form(p));
    }
}

TEST_CASE("c sequence")
{
    CHECK(toda::c_sequence(ones, 5) == 8);
    CHECK(toda::c_sequence(ones, 6) == 64);
    auto c = toda::c_values(big_k1, 12);
    for (std::size_t i = 2; i + 1 < c.size(); ++i) {
        CHECK(c[i] < c[i + 1]);
    }
    TodaEngine e(ones, 5);
    for (int t = 2; t <= 6; ++t) {
        CHECK(eval_ones(e.tau(t, Point{t % 2, t % 2})) == toda::c_sequence(ones, t));
    }
    RationalFunction u = e.u_from_tau(3, Point{0, 0});
    CHECK(eval_ones(u.numerator()) == 2 * eval_ones(u.denominator()));
}

TEST_CASE("bad parameters")
{
    CHECK_THROWS_AS(toda::validate(TodaParams{0, 1, 1, 1}), std::invalid_argument);
    TodaEngine e(ones, 3);
    CHECK_THROWS_AS(toda::run_suite(e, {}, {"laurent", "nope"}), std::invalid_argument);
}

TEST_CASE("full suite and negative control")
{
    toda::SuiteConfig c;
    std::vector<std::string> cheap{"laurent", "closed-form", "u-equation", "c-sequence", "specializations",
                                   "divisibility"};
    TodaEngine good(ones, 5);
    CHECK(failures(toda::run_suite(good, c, cheap)) == 0);
    TodaEngine bad(ones, 5, true);
    CHECK(bad.oracle_mismatch_mod_p(6, 2, 1).has_value());
    auto r = toda::run_suite(bad, c, cheap);
    CHECK(failures(r) > 0);
    CHECK_FALSE(r.all_passed());
}
