#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "laurentlab/ring/gcd.hpp"
#include "laurentlab/ring/text.hpp"
#include "laurentlab/somos/suite.hpp"
#include "laurentlab/toda/suite.hpp"
#include "random_poly.hpp"

using namespace laurentlab;
using namespace laurentlab::ring;
using somos::SomosEngine;
using somos::SomosParams;
using toda::Point;
using toda::TodaEngine;
using toda::TodaParams;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (ok) {
            detail.clear();
        }
        ok = false;
        detail += why + "; ";
    }
    void note(const std::string& s)
    {
        if (ok) {
            detail += s + "; ";
        }
    }
};

const std::vector<SomosParams> somos_sets{{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {2, 2, 2}};
const std::vector<TodaParams> toda_sets{{1, 1, 1, 1}, {2, 1, 1, 1}, {1, 1, 2, 1}};

std::string first_failure(const checks::SuiteReport& r)
{
    for (const auto& x : r.records) {
        if (!x.ok()) {
            return x.check_id + " " + x.subject + ": " + x.witness.value_or("").substr(0, 160);
        }
    }
    return {};
}

void expect_pass(Outcome& o, const std::string& label, const checks::SuiteReport& r)
{
    auto s = r.summary();
    if (s.fail > 0) {
        o.fail(label + " " + first_failure(r));
    } else if (s.pass == 0) {
        o.fail(label + " ran nothing");
    }
}

Outcome c_sequence_golden()
{
    Outcome o;
    const std::vector<int> want{2, 3, 7, 23, 59, 314, 1529};
    for (int n = 8; n <= 14; ++n) {
        mpz_class c = somos::c_sequence({2, 1, 1}, n);
        if (c != want[static_cast<std::size_t>(n - 8)]) {
            o.fail("(2,1,1) c" + std::to_string(n) + " = " + c.get_str());
        }
    }
    for (auto [n, v] : {std::pair{14, 111}, std::pair{15, 191}}) {
        mpz_class c = somos::c_sequence({1, 1, 1}, n);
        if (c != v) {
            o.fail("(1,1,1) c" + std::to_string(n) + " = " + c.get_str());
        }
    }
    o.note("(2,1,1) c8..c14 = 2,3,7,23,59,314,1529; (1,1,1) c14 = 111, c15 = 191");
    return o;
}

somos::SuiteConfig somos_config(int max_n)
{
    somos::SuiteConfig c;
    c.max_n = max_n;
    return c;
}

Outcome somos_laurent()
{
    Outcome o;
    for (const auto& p : somos_sets) {
        SomosEngine e(p);
        auto r = somos::check_laurent(e, somos_config(14));
        expect_pass(o, somos::to_string(p), r);
        bool reached = false;
        for (const auto& x : r.records) {
            reached = reached || (x.subject == "x14" && x.status == checks::Status::pass);
        }
        if (!reached) {
            o.fail(somos::to_string(p) + " did not reach x14");
        }
    }
    SomosEngine bad({1, 1, 1}, true);
    if (somos::check_laurent(bad, somos_config(14)).all_passed()) {
        o.fail("mutated recurrence passed");
    }
    o.note("5 parameter sets to x14 with oracle denominators; mutated recurrence fails");
    return o;
}

Outcome somos_coprime()
{
    Outcome o;
    std::size_t pairs = 0;
    for (const auto& p : somos_sets) {
        SomosEngine e(p);
        std::vector<checks::NamedValue> values;
        for (int n = 8; n <= 13; ++n) {
            values.push_back({"x" + std::to_string(n), RationalFunction(e.x(n))});
        }
        auto r = checks::check_pairwise_coprime("coprime", values);
        pairs += r.records.size();
        expect_pass(o, somos::to_string(p), r);
    }
    o.note(std::to_string(pairs) + " pairs 8 <= n < n' <= 13, all unit gcds");
    return o;
}

Outcome somos_closed_form()
{
    Outcome o;
    for (const auto& p : {SomosParams{1, 1, 1}, SomosParams{2, 1, 1}}) {
        SomosEngine e(p);
        expect_pass(o, somos::to_string(p), somos::check_closed_form(e, somos_config(12)));
    }
    o.note("(1,1,1), (2,1,1), n <= 12");
    return o;
}

Outcome u_equations()
{
    Outcome o;
    for (const auto& p : {SomosParams{1, 1, 1}, SomosParams{2, 1, 1}, SomosParams{1, 2, 1}}) {
        SomosEngine e(p);
        for (int n = 2; n <= 8; ++n) {
            auto r = somos::verify_u_equation(e, n);
            if (!r.ok()) {
                o.fail(somos::to_string(p) + " u" + std::to_string(n) + ": " + r.witness.value_or(""));
            }
        }
    }
    for (const auto& p : {TodaParams{1, 1, 1, 1}, TodaParams{2, 1, 1, 1}}) {
        TodaEngine e(p, 5);
        for (auto [t, n] : {std::pair{2, Point{0, 0}}, std::pair{3, toda::e2}, std::pair{3, -1 * toda::e2}}) {
            auto r = toda::verify_u_equation(e, t, n);
            if (!r.ok()) {
                o.fail(toda::to_string(p) + " " + r.subject + ": " + r.witness.value_or(""));
            }
        }
    }
    o.note("Somos n = 2..8 for 3 sets; Toda t = 2 at 0 and t = 3 at +-e2 for 2 sets");
    return o;
}

Outcome round_trips()
{
    Outcome o;
    std::size_t passed = 0;
    std::size_t skipped = 0;
    for (const auto& p : {SomosParams{1, 1, 1}, SomosParams{2, 1, 1}}) {
        SomosEngine e(p);
        auto r = somos::check_roundtrip(e, somos_config(12));
        expect_pass(o, somos::to_string(p), r);
        passed += r.summary().pass;
        skipped += r.summary().skipped;
    }
    for (auto [p, radius] : {std::pair{TodaParams{1, 1, 1, 1}, 5}, std::pair{TodaParams{2, 1, 1, 1}, 4}}) {
        TodaEngine e(p, radius);
        auto r = toda::check_roundtrip(e, {});
        expect_pass(o, toda::to_string(p), r);
        passed += r.summary().pass;
        skipped += r.summary().skipped;
    }
    o.note(std::to_string(passed) + " generators return exactly, " + std::to_string(skipped) +
           " Toda boundary generators skipped (image leaves the window)");
    return o;
}

Outcome toda_laurent_coprime()
{
    Outcome o;
    toda::SuiteConfig c;
    for (const auto& p : toda_sets) {
        auto start = std::chrono::steady_clock::now();
        TodaEngine e(p, 5);
        auto r = toda::check_laurent(e, c);
        if (e.computed_layers() < 6) {
            o.fail(toda::to_string(p) + " stopped at layer " + std::to_string(e.computed_layers()));
        }
        r.append(toda::check_coprime(e, c));
        expect_pass(o, toda::to_string(p), r);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (s > 600) {
            o.fail(toda::to_string(p) + " took " + std::to_string(s) + " s");
        }
        o.note(toda::to_string(p) + " " + std::to_string(r.summary().pass) + " records");
    }
    TodaEngine bad(toda_sets[0], 5, true);
    if (toda::check_laurent(bad, c).all_passed()) {
        o.fail("mutated recurrence passed");
    }
    o.note("R = 5, t <= 6; mutated recurrence fails");
    return o;
}

Outcome specializations()
{
    Outcome o;
    for (const auto& p : toda_sets) {
        TodaEngine e(p, 5);
        expect_pass(o, toda::to_string(p), toda::check_specializations(e, {}));
        o.note(toda::to_string(p) + " P6,0 = " + toda::p6_direct(e).get_str());
    }
    return o;
}

Outcome quotient_chain()
{
    Outcome o;
    for (const auto& p : {SomosParams{2, 1, 1}, SomosParams{3, 1, 1}, SomosParams{4, 1, 1}, SomosParams{2, 2, 2}}) {
        SomosEngine e(p);
        auto r = somos::root_of_unity_check(e);
        if (!r.ok()) {
            o.fail(somos::to_string(p) + ": " + r.witness.value_or(""));
        }
    }
    o.note("k = 2, 3, 4 (and (2,2,2)): x8..x11 = 0, 1, t^(k^2-1), 1 and P12 != 0");
    return o;
}

// Randomized ring properties; evaluation at a rational point is the oracle
// for products and sums.
Outcome ring_properties()
{
    Outcome o;
    constexpr int trials = 10000;
    auto table = VariableTable::make({"x", "y", "z"});
    std::mt19937_64 rng(20261016);
    auto rand = [&](int terms) { return testutil::random_poly(rng, table, terms, -2, 2); };
    auto nonzero = [&](int terms) {
        LaurentPolynomial p = rand(terms);
        while (p.is_zero()) {
            p = rand(terms);
        }
        return p;
    };
    std::uniform_int_distribution<int> small(-4, 4);
    auto point = [&] {
        std::vector<mpq_class> v;
        for (int i = 0; i < 3; ++i) {
            int n = small(rng);
            v.emplace_back(n == 0 ? 5 : n, 3);
        }
        return v;
    };
    int count[6] = {};
    for (int i = 0; i < trials; ++i) {
        LaurentPolynomial a = rand(4), b = rand(4), c = rand(4);
        if (!((a + b) + c == a + (b + c) && a + b == b + a && (a * b) * c == a * (b * c) && a * b == b * a &&
              a * (b + c) == a * b + a * c && (a - a).is_zero())) {
            o.fail("axioms at " + to_string(a) + ", " + to_string(b) + ", " + to_string(c));
            break;
        }
        ++count[0];
    }
    for (int i = 0; i < trials; ++i) {
        LaurentPolynomial a = rand(4), b = rand(4);
        auto v = point();
        if (evaluate(a * b, v) != evaluate(a, v) * evaluate(b, v) || evaluate(a + b, v) != evaluate(a, v) + evaluate(b, v)) {
            o.fail("evaluation at " + to_string(a) + ", " + to_string(b));
            break;
        }
        ++count[1];
    }
    for (int i = 0; i < trials; ++i) {
        LaurentPolynomial a = rand(4), b = nonzero(3);
        if (!(exact_div(a * b, b) == a)) {
            o.fail("exact division at " + to_string(a) + ", " + to_string(b));
            break;
        }
        ++count[2];
    }
    for (int i = 0; i < trials; ++i) {
        LaurentPolynomial a = nonzero(3), b = rand(3), f = nonzero(2);
        LaurentPolynomial g = gcd(a * f, b * f);
        if (!divides(g, a * f) || !divides(g, b * f) || !divides(f, g)) {
            o.fail("gcd at " + to_string(a) + ", " + to_string(b) + ", " + to_string(f));
            break;
        }
        ++count[3];
    }
    for (int i = 0; i < trials; ++i) {
        LaurentPolynomial a = rand(6);
        if (!(parse_polynomial(table, to_string(a)) == a)) {
            o.fail("text round trip at " + to_string(a));
            break;
        }
        ++count[4];
    }
    for (int i = 0; i < trials; ++i) {
        LaurentPolynomial a = rand(3), b = nonzero(2);
        RationalFunction f = RationalFunction::make(a, b);
        RationalFunction back = RationalFunction::make(parse_polynomial(table, to_string(f.numerator())),
                                                       parse_polynomial(table, to_string(f.denominator())));
        if (!(back == f) || !(f * RationalFunction(b) == RationalFunction(a))) {
            o.fail("rational round trip at " + to_string(a) + " / " + to_string(b));
            break;
        }
        ++count[5];
    }
    std::ostringstream os;
    os << count[0] << " axiom, " << count[1] << " evaluation, " << count[2] << " division, " << count[3] << " gcd, "
       << count[4] << " text, " << count[5] << " rational instances";
    o.note(os.str());
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double budget;
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "Somos c-sequence golden values", 1, c_sequence_golden},
        {2, "Somos extended Laurent property", 5 * 300, somos_laurent},
        {3, "Somos coprimeness sweep", 120, somos_coprime},
        {4, "Somos closed-form equivalence", 120, somos_closed_form},
        {5, "nonlinear U equations", 120, u_equations},
        {6, "birational round trips", 600, round_trips},
        {7, "Toda Laurent and coprimeness", 3 * 600, toda_laurent_coprime},
        {8, "Toda specializations and P6,0", 60, specializations},
        {9, "quotient-ring chain", 10, quotient_chain},
        {10, "randomized ring properties", 60, ring_properties},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.fail(std::string("threw: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (s > c.budget) {
            o.fail("over budget");
        }
        failed += o.ok ? 0 : 1;
        std::printf("criterion %2d %s  %s (%.2f s, budget %.0f s): %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, s,
                    c.budget, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
