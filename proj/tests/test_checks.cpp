#include <doctest.h>

#include <atomic>

#include "laurentlab/checks/checks.hpp"
#include "laurentlab/ring/text.hpp"

using namespace laurentlab;
using namespace laurentlab::ring;
using checks::Status;

namespace {

TablePtr xy()
{
    return VariableTable::make({"x", "y"});
}

LaurentPolynomial P(const TablePtr& t, const std::string& s)
{
    return parse_polynomial(t, s);
}

} // namespace

TEST_CASE("failed records need a witness")
{
    CHECK_THROWS_AS(checks::VerificationRecord::failed("c", "s", ""), std::invalid_argument);
    auto r = checks::VerificationRecord::failed("c", "s", "w");
    CHECK_FALSE(r.ok());
    CHECK(checks::VerificationRecord::skipped("c", "s", "n").ok());
}

TEST_CASE("monomial denominator")
{
    auto t = xy();
    auto ok = checks::check_monomial_denominator("d", "a", RationalFunction::make(P(t, "x + 1"), P(t, "x^2*y")), {});
    CHECK(ok.status == Status::pass);
    auto bad = checks::check_monomial_denominator("d", "b", RationalFunction::make(P(t, "1"), P(t, "x + y")), {});
    CHECK(bad.status == Status::fail);
    CHECK(*bad.witness == to_string(P(t, "x + y")));
    auto allowed = checks::check_monomial_denominator(
        "d", "c", RationalFunction::make(P(t, "1"), P(t, "x^2 + 2*x*y + y^2")), {P(t, "x + y")});
    CHECK(allowed.status == Status::pass);
}

TEST_CASE("pairwise coprime with exclusions")
{
    auto t = xy();
    std::vector<checks::NamedValue> v{
        {"a", RationalFunction(P(t, "x + 1"))},
        {"b", RationalFunction::make(P(t, "y"), P(t, "x^2 - 1"))},
        {"c", RationalFunction(P(t, "y + 2"))},
    };
    auto all = checks::check_pairwise_coprime("cp", v);
    REQUIRE(all.records.size() == 3);
    CHECK(all.summary().fail == 1);
    CHECK(all.records[0].subject == "a ~ b");
    CHECK(*all.records[0].witness == to_string(P(t, "x + 1")));
    auto some = checks::check_pairwise_coprime("cp", v, [](std::size_t i, std::size_t j) { return i == 0 && j == 1; }, 3);
    CHECK(some.records.size() == 2);
    CHECK(some.all_passed());
}

TEST_CASE("round trip of an invertible map")
{
    auto a = xy();
    auto b = VariableTable::make({"u", "v"});
    // x = u / (1 + v), y = v and back u = x (1 + y), v = y.
    checks::RationalMap fwd{a, b, {}};
    fwd.images.emplace(0, RationalFunction::make(P(b, "u"), P(b, "1 + v")));
    fwd.images.emplace(1, RationalFunction(P(b, "v")));
    checks::RationalMap bwd{b, a, {}};
    bwd.images.emplace(0, RationalFunction(P(a, "x + x*y")));
    bwd.images.emplace(1, RationalFunction(P(a, "y")));
    auto r = checks::check_round_trip("rt", fwd, bwd, {0, 1}, 2);
    CHECK(r.summary().pass == 2);
    auto back = checks::check_round_trip("rt", bwd, fwd, {0, 1});
    CHECK(back.summary().pass == 2);

    checks::RationalMap wrong = bwd;
    wrong.images.at(0) = RationalFunction(P(a, "x"));
    auto f = checks::check_round_trip("rt", fwd, wrong, {0, 1});
    CHECK(f.summary().fail == 1);
    CHECK(f.records[0].witness.has_value());

    checks::RationalMap partial{b, a, {}};
    partial.images.emplace(0, RationalFunction(P(a, "x + x*y")));
    auto s = checks::check_round_trip("rt", fwd, partial, {0, 1});
    CHECK(s.summary().skipped == 2);
}

TEST_CASE("parallel_for visits every index and rethrows")
{
    std::vector<std::atomic<int>> hits(100);
    checks::parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) {
        CHECK(h == 1);
    }
    CHECK_THROWS_AS(checks::parallel_for(10, 3,
                                         [](std::size_t i) {
                                             if (i == 7) {
                                                 throw std::runtime_error("boom");
                                             }
                                         }),
                    std::runtime_error);
}

TEST_CASE("report serialization")
{
    checks::SuiteReport r;
    r.config["family"] = "x";
    r.add(checks::VerificationRecord::passed("a", "one"));
    r.add(checks::VerificationRecord::failed("a", "two|pipe", "w"));
    r.add(checks::VerificationRecord::skipped("b", "three", "why"));
    auto j = checks::to_json(r, false);
    CHECK(j["summary"]["pass"] == 1);
    CHECK(j["summary"]["fail"] == 1);
    CHECK(j["records"][1]["witness"] == "w");
    CHECK_FALSE(j.contains("timing"));
    CHECK(checks::to_json(r).contains("timing"));
    CHECK(j["version"] == checks::version());
    CHECK(checks::to_json(r, false).dump() == j.dump());
    std::string md = checks::to_markdown(r);
    CHECK(md.find("two\\|pipe") != std::string::npos);
    CHECK(md.find("| 1 | 1 | 1 |") != std::string::npos);
}
