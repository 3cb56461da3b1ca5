#include "laurentlab/toda/suite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "laurentlab/ring/text.hpp"

namespace laurentlab::toda {

using checks::LaurentViolation;
using checks::SuiteReport;
using checks::VerificationRecord;
using ring::LaurentPolynomial;
using ring::LocalizedPolynomial;
using ring::RationalFunction;

namespace {

std::string at(const std::string& family, int t, Point n)
{
    return var_name(family, t, n);
}

VerificationRecord violation(const std::string& id, const LaurentViolation& e)
{
    return VerificationRecord::failed(id, e.subject(), e.witness(), "exact division failed");
}

void guarded(SuiteReport& report, const std::string& id, const std::function<void()>& body)
{
    try {
        body();
    } catch (const LaurentViolation& e) {
        report.add(violation(id, e));
    }
}

VerificationRecord equality(const std::string& id, const std::string& subject, bool ok,
                            const std::function<std::string()>& witness)
{
    if (ok) {
        return VerificationRecord::passed(id, subject);
    }
    return VerificationRecord::failed(id, subject, witness(), "sides differ");
}

std::string text(const RationalFunction& f)
{
    if (f.is_laurent()) {
        return ring::to_string(f.numerator());
    }
    return "(" + ring::to_string(f.numerator()) + ") / (" + ring::to_string(f.denominator()) + ")";
}

mpz_class eval_ones(const LaurentPolynomial& p)
{
    mpz_class s = 0;
    for (const auto& t : p.terms()) {
        s += t.coeff;
    }
    return s;
}

int sigma_limit(const SuiteConfig& c)
{
    return c.sigma_max > 0 ? std::min(c.sigma_max, c.max_t) : std::min(c.max_t, 5);
}

// Layers that exist in this window, capped at max_t.
int last_layer(const TodaEngine& e, int max_t)
{
    int t = 0;
    while (t < max_t && e.layer_radius(t + 1) >= 0) {
        ++t;
    }
    return t;
}

// U_{t,n} needs tau at (t +- 1, n) and (t, n +- e2).
bool u_fits(const TodaEngine& e, int t, Point n, int max_t)
{
    return t >= 1 && t + 1 <= max_t && e.in_layer(t + 1, n) && e.in_layer(t - 1, n) && e.in_layer(t, n - e2) &&
           e.in_layer(t, n + e2);
}

} // namespace

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{"laurent",    "coprime",    "closed-form",     "u-equation",
                                                "roundtrip",  "c-sequence", "specializations", "divisibility"};
    return names;
}

SuiteReport check_laurent(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "laurent";
    SuiteReport report;
    const int top = last_layer(engine, config.max_t);
    int reached = -1;
    for (int t = 0; t <= top; ++t) {
        try {
            VerificationRecord r = checks::timed([&] {
                std::size_t biggest = 0;
                for (Point n : engine.layer_points(t)) {
                    biggest = std::max(biggest, engine.tau(t, n).size());
                }
                return VerificationRecord::passed(id, "tau layer " + std::to_string(t),
                                                  std::to_string(engine.layer_points(t).size()) +
                                                      " points in S, largest " + std::to_string(biggest) + " terms");
            });
            report.add(r);
            reached = t;
        } catch (const LaurentViolation& e) {
            report.add(violation(id, e));
            break;
        }
    }
    if (reached < 0) {
        return report;
    }
    report.add(checks::timed([&] {
        const std::string subject = "tau layers 0.." + std::to_string(reached) + " against the recurrence mod p";
        auto bad = engine.oracle_mismatch_mod_p(reached, config.modular_points, config.seed);
        if (bad) {
            return VerificationRecord::failed(id, subject, at("tau", bad->first, bad->second) + " differs at a random point",
                                              "modulo 2^61-1");
        }
        return VerificationRecord::passed(id, subject,
                                          std::to_string(config.modular_points) + " random points modulo 2^61-1");
    }));
    for (Point shift : {Point{2, 0}, Point{0, 2}, Point{-2, 0}, Point{0, -2}}) {
        report.add(checks::timed([&] {
            const std::string subject = "translation by (" + std::to_string(shift.dn) + "," + std::to_string(shift.dm) + ")";
            int compared = 0;
            for (int t = 0; t <= reached; ++t) {
                for (Point n : engine.layer_points(t)) {
                    if (!engine.in_layer(t, n + shift)) {
                        continue;
                    }
                    auto moved = engine.translate(engine.tau(t, n), shift);
                    if (!moved) {
                        continue;
                    }
                    ++compared;
                    if (!(*moved == engine.tau(t, n + shift))) {
                        return VerificationRecord::failed(id, subject,
                                                          "shifted " + at("tau", t, n) + " = " + ring::to_string(*moved) +
                                                              " but " + at("tau", t, n + shift) + " = " +
                                                              ring::to_string(engine.tau(t, n + shift)));
                    }
                }
            }
            return VerificationRecord::passed(id, subject, std::to_string(compared) + " iterates compared");
        }));
    }
    return report;
}

SuiteReport check_coprime(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "coprime";
    SuiteReport report;
    const int top = last_layer(engine, config.max_t);
    guarded(report, id, [&] {
        std::vector<checks::NamedValue> values;
        for (int t = 4; t <= top; ++t) {
            for (Point n : engine.layer_points(t)) {
                values.push_back({at("tau", t, n), RationalFunction(engine.tau(t, n))});
            }
        }
        report.append(checks::check_pairwise_coprime(id, values, {}, config.jobs));
    });
    guarded(report, id, [&] {
        const int smax = sigma_limit(config);
        std::vector<checks::NamedValue> values;
        std::vector<std::pair<int, Point>> index;
        for (int t = 3; t + 1 <= smax; ++t) {
            for (Point n : engine.layer_points(t + 1)) {
                if (u_fits(engine, t, n, smax)) {
                    // U - 1 factors are units of Z[U, (U-1)^-1]; compare what is left.
                    RationalFunction u = engine.u_from_sigma(t, n);
                    LocalizedPolynomial num(engine.u_basis(), u.numerator());
                    LocalizedPolynomial den(engine.u_basis(), u.denominator());
                    values.push_back({at("U", t, n), RationalFunction::from_coprime(num.core(), den.core())});
                    index.emplace_back(t, n);
                }
            }
        }
        // Pairs whose sigma tilde stencils (t +- 1, n), (t, n +- e2) meet.
        auto excluded = [&](std::size_t i, std::size_t j) {
            auto [t, n] = index[i];
            auto [s, r] = index[j];
            int dt = std::abs(t - s);
            Point d = r - n;
            if (d.dn != -d.dm || dt > 2) {
                return false;
            }
            int steps = std::abs(d.dm);
            return dt + steps == 2;
        };
        report.append(checks::check_pairwise_coprime(id, values, excluded, config.jobs));
    });
    return report;
}

SuiteReport check_closed_form(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "closed-form";
    const auto& p = engine.params();
    SuiteReport report;
    const int top = last_layer(engine, config.max_t);
    report.add(checks::timed([&] {
        const std::string subject = "F_{t+1} F_{t-1} = F_{t,n-e2}^k1 F_{t,n+e2}^k2";
        int compared = 0;
        for (int t = 1; t + 1 <= top; ++t) {
            for (Point n : engine.layer_points(t + 1)) {
                try {
                    LaurentPolynomial lhs = engine.f_closed(t + 1, n) * engine.f_closed(t - 1, n);
                    LaurentPolynomial rhs = engine.f_closed(t, n - e2).pow(p.k1) * engine.f_closed(t, n + e2).pow(p.k2);
                    ++compared;
                    if (!(lhs == rhs)) {
                        return VerificationRecord::failed(id, subject,
                                                          "at " + at("F", t + 1, n) + ": " + ring::to_string(lhs) +
                                                              " vs " + ring::to_string(rhs));
                    }
                } catch (const std::out_of_range&) {
                }
            }
        }
        return VerificationRecord::passed(id, subject, std::to_string(compared) + " points");
    }));
    guarded(report, id, [&] {
        for (int t = 1; t + 1 <= top; ++t) {
            report.add(checks::timed([&] {
                const std::string subject = "F_" + std::to_string(t - 1) + " from tau layers " + std::to_string(t - 1) +
                                            ".." + std::to_string(t + 1);
                int compared = 0;
                for (Point n : engine.layer_points(t + 1)) {
                    if (!engine.in_layer(t, n - e1) || !engine.in_layer(t, n + e1) || !engine.in_layer(t, n - e2) ||
                        !engine.in_layer(t, n + e2) || !engine.in_layer(t - 1, n)) {
                        continue;
                    }
                    LaurentPolynomial num = engine.tau(t + 1, n) * engine.tau(t - 1, n) -
                                            engine.tau(t, n - e2).pow(p.k1) * engine.tau(t, n + e2).pow(p.k2);
                    LaurentPolynomial den = engine.tau(t, n - e1).pow(p.l1) * engine.tau(t, n + e1).pow(p.l2);
                    LaurentPolynomial want = engine.f_closed(t - 1, n);
                    ++compared;
                    if (!(num == want * den)) {
                        return VerificationRecord::failed(
                            id, subject,
                            at("F", t - 1, n) + ": (" + ring::to_string(num) + ") / (" + ring::to_string(den) +
                                ") vs " + ring::to_string(want));
                    }
                }
                return VerificationRecord::passed(id, subject, std::to_string(compared) + " points");
            }));
        }
    });
    guarded(report, id, [&] {
        report.add(checks::timed([&] {
            const LaurentPolynomial& t4 = engine.tau(4, Point{0, 0});
            ring::VarIndex f0 = engine.s_table()->index(var_name("F", 0, Point{0, 0}));
            LaurentPolynomial expected =
                (engine.tau(3, -1 * e2).pow(p.k1) * engine.tau(3, e2).pow(p.k2) +
                 engine.f_closed(2, Point{0, 0}) * engine.tau(3, -1 * e1).pow(p.l1) * engine.tau(3, e1).pow(p.l2)) *
                engine.tau(2, Point{0, 0}).pow(-1);
            bool ok = t4 == expected && t4.min_degree_in(f0) == -1 && t4.max_degree_in(f0) == 0;
            return equality(id, "tau:4:0:0 degree one in F:0:0:0^-1", ok,
                            [&] { return ring::to_string(t4) + " vs " + ring::to_string(expected); });
        }));
    });
    return report;
}

SuiteReport check_u_equation(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "u-equation";
    const auto& p = engine.params();
    SuiteReport report;
    const int top = last_layer(engine, config.max_t);
    guarded(report, id, [&] {
        for (int t = 2; t <= 3 && t + 2 <= top; ++t) {
            for (Point n : engine.layer_points(t)) {
                if (n.norm() > 2) {
                    continue;
                }
                bool fits = u_fits(engine, t + 1, n, top) && u_fits(engine, t - 1, n, top);
                for (Point d : {e1, e2}) {
                    fits = fits && u_fits(engine, t, n - d, top) && u_fits(engine, t, n + d, top);
                }
                if (fits) {
                    report.add(verify_u_equation(engine, t, n));
                }
            }
        }
    });
    const int smax = sigma_limit(config);
    guarded(report, id, [&] {
        report.add(checks::timed([&] {
            const std::string subject = "sigma tilde at t = 2, 3";
            for (Point n : engine.layer_points(2)) {
                LaurentPolynomial want = engine.w_var("U", 1, n);
                if (!(engine.sigma_tilde(2, n) == LocalizedPolynomial(engine.u_basis(), want))) {
                    return VerificationRecord::failed(id, subject, at("sigma", 2, n) + " = " +
                                                                       ring::to_string(engine.sigma_tilde(2, n).core()));
                }
            }
            for (Point n : engine.layer_points(3)) {
                if (!engine.in_layer(2, n - e2) || !engine.in_layer(2, n + e2)) {
                    continue;
                }
                LaurentPolynomial want = engine.w_var("U", 2, n) * engine.w_var("U", 1, n - e2).pow(p.k1) *
                                         engine.w_var("U", 1, n + e2).pow(p.k2);
                if (!(engine.sigma_tilde(3, n) == LocalizedPolynomial(engine.u_basis(), want))) {
                    return VerificationRecord::failed(id, subject, at("sigma", 3, n) + " = " +
                                                                       ring::to_string(engine.sigma_tilde(3, n).core()));
                }
            }
            return VerificationRecord::passed(id, subject);
        }));
        for (int t = 4; t <= smax; ++t) {
            report.add(checks::timed([&] {
                std::size_t biggest = 0;
                for (Point n : engine.layer_points(t)) {
                    biggest = std::max(biggest, engine.sigma_tilde(t, n).core().size());
                }
                return VerificationRecord::passed(id, "sigma tilde layer " + std::to_string(t) + " in Z[U, (U-1)^-1]",
                                                  "largest core " + std::to_string(biggest) + " terms");
            }));
        }
    });
    guarded(report, id, [&] {
        auto tw = engine.t_in_w();
        for (int t = 1; t + 1 <= smax; ++t) {
            report.add(checks::timed([&] {
                const std::string subject = "U_" + std::to_string(t) + " from sigma tilde = U_" + std::to_string(t) +
                                            " from tau";
                int compared = 0;
                for (Point n : engine.layer_points(t + 1)) {
                    if (!u_fits(engine, t, n, smax) || (t >= 3 && n.norm() > 2)) {
                        continue;
                    }
                    RationalFunction lhs = engine.u_from_sigma(t, n);
                    RationalFunction rhs = checks::apply(tw, engine.u_from_tau(t, n));
                    ++compared;
                    if (!(lhs == rhs)) {
                        return VerificationRecord::failed(id, subject, at("U", t, n) + ": " + text(lhs) + " vs " + text(rhs));
                    }
                }
                return VerificationRecord::passed(id, subject, std::to_string(compared) + " points");
            }));
        }
    });
    return report;
}

SuiteReport check_roundtrip(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "roundtrip";
    SuiteReport report;
    auto add = [&](const std::string& label, const checks::RationalMap& a, const checks::RationalMap& b) {
        std::vector<ring::VarIndex> all(a.source->arity());
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i] = static_cast<ring::VarIndex>(i);
        }
        SuiteReport r = checks::check_round_trip(id, a, b, all, config.jobs);
        for (auto& rec : r.records) {
            rec.subject = label + " " + rec.subject;
        }
        report.append(r);
    };
    guarded(report, id, [&] {
        auto tw = engine.t_in_w();
        auto wt = engine.w_in_t();
        add("S->W->S", tw, wt);
        add("W->S->W", wt, tw);
    });
    return report;
}

SuiteReport check_c_sequence(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "c-sequence";
    const auto& p = engine.params();
    SuiteReport report;
    std::vector<mpz_class> c;
    VerificationRecord integral = checks::timed([&] {
        try {
            c = c_values(p, config.c_max, config.c_bits);
        } catch (const std::domain_error& e) {
            return VerificationRecord::failed(id, "c2..c" + std::to_string(config.c_max) + " integral", e.what());
        }
        int last = static_cast<int>(c.size()) + 1;
        std::string note = last < config.c_max ? "stopped at c" + std::to_string(last) + ", " +
                                                     std::to_string(mpz_sizeinbase(c.back().get_mpz_t(), 2)) + " bits"
                                               : "";
        return VerificationRecord::passed(id, "c2..c" + std::to_string(last) + " integral", note);
    });
    report.add(integral);
    if (!integral.ok()) {
        return report;
    }
    const int last = static_cast<int>(c.size()) + 1;
    auto C = [&](int t) -> const mpz_class& { return c[static_cast<std::size_t>(t - 2)]; };
    report.add(checks::timed([&] {
        const std::string subject = "c4 < c5 < .. < c" + std::to_string(last);
        for (int t = 4; t < last; ++t) {
            if (!(C(t) < C(t + 1))) {
                return VerificationRecord::failed(id, subject,
                                                  "c" + std::to_string(t) + " = " + C(t).get_str() + ", c" +
                                                      std::to_string(t + 1) + " = " + C(t + 1).get_str());
            }
        }
        return VerificationRecord::passed(id, subject);
    }));
    const int top = std::min(last_layer(engine, config.max_t), last);
    guarded(report, id, [&] {
        for (int t = 2; t <= top; ++t) {
            report.add(checks::timed([&] {
                const std::string subject = "tau layer " + std::to_string(t) + " at all ones = c" + std::to_string(t);
                for (Point n : engine.layer_points(t)) {
                    mpz_class v = eval_ones(engine.tau(t, n));
                    if (v != C(t)) {
                        return VerificationRecord::failed(id, subject, at("tau", t, n) + " = " + v.get_str() + ", c" +
                                                                           std::to_string(t) + " = " + C(t).get_str());
                    }
                }
                return VerificationRecord::passed(id, subject, "c" + std::to_string(t) + " = " + C(t).get_str());
            }));
        }
    });
    guarded(report, id, [&] {
        if (top < 4) {
            return;
        }
        report.add(checks::timed([&] {
            RationalFunction u = engine.u_from_tau(3, Point{0, 0});
            mpq_class v(eval_ones(u.numerator()), eval_ones(u.denominator()));
            v.canonicalize();
            mpq_class want(C(4) * C(2));
            mpz_class d;
            mpz_pow_ui(d.get_mpz_t(), C(3).get_mpz_t(), static_cast<unsigned long>(p.k1 + p.k2));
            want /= d;
            return equality(id, "U:3:0:0 at all ones = c4 c2 / c3^(k1+k2)", v == want,
                            [&] { return v.get_str() + " vs " + want.get_str(); });
        }));
    });
    return report;
}

SuiteReport check_specializations(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "specializations";
    const auto& p = engine.params();
    SuiteReport report;
    const int top = last_layer(engine, config.max_t);
    Specialization sp(engine);
    const LaurentPolynomial one(sp.table(), 1);
    auto T = [&](Point n) { return sp.t(n); };
    auto shape = [&](const std::string& subject, int t, const std::function<LaurentPolynomial(Point)>& got,
                     const std::function<LaurentPolynomial(Point)>& want, int layer) {
        report.add(checks::timed([&] {
            int compared = 0;
            for (Point n : engine.layer_points(layer)) {
                LaurentPolynomial g = got(n);
                LaurentPolynomial w = want(n);
                ++compared;
                if (!(g == w)) {
                    return VerificationRecord::failed(id, subject,
                                                      "at " + at("n", t, n) + ": " + ring::to_string(g) + " vs " +
                                                          ring::to_string(w));
                }
            }
            return VerificationRecord::passed(id, subject, std::to_string(compared) + " points");
        }));
    };
    auto F4 = [&](Point n) {
        return T(n - 2 * e2).pow(static_cast<std::int64_t>(p.k1) * p.k1) *
               T(n).pow(2 * static_cast<std::int64_t>(p.k1) * p.k2 - 1) *
               T(n + 2 * e2).pow(static_cast<std::int64_t>(p.k2) * p.k2);
    };
    auto F3 = [&](Point n) { return T(n - e2).pow(p.k1) * T(n + e2).pow(p.k2); };
    auto tau5 = [&](Point n) {
        return (one + T(n - e2)).pow(p.k1) * (one + T(n + e2)).pow(p.k2) +
               F3(n) * (one + T(n - e1)).pow(p.l1) * (one + T(n + e1)).pow(p.l2);
    };
    guarded(report, id, [&] {
        if (top >= 4) {
            shape("F_2 = t_n", 2, [&](Point n) { return sp.f(2, n); }, T, 4);
            shape("tau_4 = 1 + t_n", 4, [&](Point n) { return sp.tau(4, n); }, [&](Point n) { return one + T(n); }, 4);
        }
        if (top >= 5) {
            shape("F_3 = t_{n-e2}^k1 t_{n+e2}^k2", 3, [&](Point n) { return sp.f(3, n); }, F3, 5);
            shape("tau_5 display", 5, [&](Point n) { return sp.tau(5, n); }, tau5, 5);
        }
        if (top >= 6) {
            shape("F_4 = t_{n-2e2}^k1^2 t_n^(2k1k2-1) t_{n+2e2}^k2^2", 4, [&](Point n) { return sp.f(4, n); }, F4, 6);
            shape("tau_6 (1 + t_n) display", 6, [&](Point n) { return sp.tau(6, n) * (one + T(n)); },
                  [&](Point n) {
                      return tau5(n - e2).pow(p.k1) * tau5(n + e2).pow(p.k2) +
                             F4(n) * tau5(n - e1).pow(p.l1) * tau5(n + e1).pow(p.l2);
                  },
                  6);
        }
    });
    if (top < 6 || !engine.in_layer(6, Point{0, 0}) || !engine.in_layer(4, 2 * e1) || !engine.in_layer(4, 2 * e2)) {
        return report;
    }
    const Point o{0, 0};
    auto two = [](long e) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
        return mpq_class(r);
    };
    auto sign = [](int e) { return mpq_class(e % 2 == 0 ? 1 : -1); };
    const mpq_class c5 = two(p.k1 + p.k2) + two(p.l1 + p.l2);
    auto run_case = [&](const std::string& subject, const std::map<Point, mpq_class>& values, const mpq_class& rest,
                        const std::vector<std::tuple<std::string, LaurentPolynomial, mpq_class>>& expect,
                        const std::function<std::string(const mpq_class&)>& tau6_check) {
        report.add(checks::timed([&] {
            std::string bad;
            try {
                for (const auto& [name, poly, want] : expect) {
                    mpq_class got = sp.value(poly, values, rest);
                    if (got != want) {
                        bad += name + " = " + got.get_str() + " (expected " + want.get_str() + "); ";
                    }
                }
                if (tau6_check) {
                    bad += tau6_check(sp.value(sp.tau(6, o), values, rest));
                }
            } catch (const ring::SubstitutionError& e) {
                bad += e.what();
            }
            if (bad.empty()) {
                return VerificationRecord::passed(id, subject);
            }
            return VerificationRecord::failed(id, subject, bad);
        }));
    };
    guarded(report, id, [&] {
        run_case("case (i): t_{2e1} = -1, other t = 1", {{2 * e1, -1}}, 1,
                 {{"tau:4:2:2", sp.tau(4, 2 * e1), 0},
                  {"tau5 at e2", sp.tau(5, e2), c5},
                  {"tau5 at -e2", sp.tau(5, -1 * e2), c5},
                  {"tau5 at e1", sp.tau(5, e1), two(p.k1 + p.k2)},
                  {"tau5 at -e1", sp.tau(5, -1 * e1), c5}},
                 [](const mpq_class& v) { return v > 0 ? std::string() : "tau6 at 0 = " + v.get_str() + " is not positive; "; });
        mpq_class tau6_ii = sign(p.k2) * (two(static_cast<long>(p.l1 + p.l2) * p.k2) * [&] {
                                mpq_class r = 1;
                                for (int i = 0; i < p.k1; ++i) {
                                    r *= c5;
                                }
                                return r;
                            }() + [&] {
                                mpq_class r = 1;
                                for (int i = 0; i < p.l1 + p.l2; ++i) {
                                    r *= c5;
                                }
                                return r;
                            }()) / 2;
        run_case("case (ii): t_{2e2} = -1, other t = 1", {{2 * e2, -1}}, 1,
                 {{"tau:4:-2:2", sp.tau(4, 2 * e2), 0},
                  {"tau5 at e2", sp.tau(5, e2), sign(p.k2) * two(p.l1 + p.l2)},
                  {"tau5 at -e2", sp.tau(5, -1 * e2), c5},
                  {"tau5 at e1", sp.tau(5, e1), c5},
                  {"tau5 at -e1", sp.tau(5, -1 * e1), c5}},
                 [&](const mpq_class& v) {
                     return v == tau6_ii && v != 0 ? std::string()
                                                   : "tau6 at 0 = " + v.get_str() + " (expected " + tau6_ii.get_str() + "); ";
                 });
        run_case("case (iii): t_{e1+e2} = -1, other t = 0", {{e1 + e2, -1}}, 0,
                 {{"tau5 at e2", sp.tau(5, e2), 1},
                  {"tau5 at -e2", sp.tau(5, -1 * e2), 1},
                  {"tau5 at e1", sp.tau(5, e1), 0},
                  {"tau5 at -e1", sp.tau(5, -1 * e1), 1}},
                 [](const mpq_class& v) { return v == 1 ? std::string() : "tau6 at 0 = " + v.get_str() + "; "; });
        std::vector<std::tuple<std::string, LaurentPolynomial, mpq_class>> f3;
        for (Point n : engine.layer_points(5)) {
            mpq_class want = n == e2 ? sign(p.k1) : n == -1 * e2 ? sign(p.k2) : mpq_class(1);
            f3.emplace_back(at("F", 3, n), sp.f(3, n), want);
        }
        f3.emplace_back("F:4:0:0", sp.f(4, o), -1);
        run_case("case (iv): t_0 = -1, other t = 1", {{o, -1}}, 1, f3, {});
    });
    guarded(report, id, [&] {
        report.add(checks::timed([&] {
            mpz_class closed = p6_closed_form(p);
            mpz_class direct = p6_direct(engine);
            const std::string subject = "P_{6,0} closed form = direct value, nonzero";
            if (closed == direct && closed != 0) {
                return VerificationRecord::passed(id, subject, "P_{6,0} = " + closed.get_str());
            }
            return VerificationRecord::failed(id, subject,
                                              "closed form " + closed.get_str() + ", direct " + direct.get_str());
        }));
    });
    return report;
}

SuiteReport check_divisibility(TodaEngine& engine, const SuiteConfig& config)
{
    const std::string id = "divisibility";
    const auto& p = engine.params();
    SuiteReport report;
    const int top = last_layer(engine, config.max_t);
    ValueFn tau = [&](int t, Point n) { return engine.tau(t, n); };
    ValueFn f = [&](int t, Point n) { return engine.f_closed(t, n); };
    guarded(report, id, [&] {
        for (int t = 4; t + 1 <= top; ++t) {
            for (Point n : engine.layer_points(t + 1)) {
                bool fits = engine.in_layer(t - 3, n);
                for (Point d : {2 * e1, 2 * e2, e1 + e2, e1 - e2}) {
                    fits = fits && engine.in_layer(t - 1, n + d) && engine.in_layer(t - 1, n - d);
                }
                if (!fits) {
                    continue;
                }
                report.add(checks::timed([&] {
                    const std::string subject = "P at " + at("tau", t + 1, n);
                    Divisibility d = divisibility_parts(p, t, n, tau, f);
                    if (!d.collapse_defect.is_zero()) {
                        return VerificationRecord::failed(id, subject,
                                                          "two-term collapse leaves " + ring::to_string(d.collapse_defect));
                    }
                    auto q = ring::try_div(d.p, d.divisor);
                    if (!q) {
                        return VerificationRecord::failed(id, subject, "divisor " + ring::to_string(d.divisor) +
                                                                           " does not divide P");
                    }
                    return equality(id, subject, *q == engine.tau(t + 1, n),
                                    [&] { return "P / divisor - tau = " + ring::to_string(*q - engine.tau(t + 1, n)); });
                }));
            }
        }
    });
    return report;
}

SuiteReport run_suite(TodaEngine& engine, const SuiteConfig& config, const std::vector<std::string>& names)
{
    static const std::map<std::string, std::function<SuiteReport(TodaEngine&, const SuiteConfig&)>> table{
        {"laurent", check_laurent},
        {"coprime", check_coprime},
        {"closed-form", check_closed_form},
        {"u-equation", check_u_equation},
        {"roundtrip", check_roundtrip},
        {"c-sequence", check_c_sequence},
        {"specializations", check_specializations},
        {"divisibility", check_divisibility},
    };
    for (const auto& n : names) {
        if (!table.contains(n)) {
            throw std::invalid_argument("unknown check: " + n);
        }
    }
    SuiteReport report;
    for (const auto& n : names) {
        report.append(table.at(n)(engine, config));
    }
    return report;
}

std::vector<std::string> dump(TodaEngine& engine, int max_t, bool ones)
{
    std::vector<std::string> lines;
    const int top = last_layer(engine, max_t);
    for (int t = ones ? 2 : 0; t <= top; ++t) {
        for (Point n : engine.layer_points(t)) {
            const LaurentPolynomial& v = engine.tau(t, n);
            lines.push_back(at("tau", t, n) + " = " + (ones ? eval_ones(v).get_str() : ring::to_string(v)));
        }
    }
    return lines;
}

} // namespace laurentlab::toda
