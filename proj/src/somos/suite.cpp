#include "laurentlab/somos/suite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "laurentlab/ring/text.hpp"

namespace laurentlab::somos {

using checks::LaurentViolation;
using checks::SuiteReport;
using checks::VerificationRecord;
using ring::LaurentPolynomial;
using ring::LocalizedPolynomial;
using ring::RationalFunction;

namespace {

std::string xs(int n)
{
    return "x" + std::to_string(n);
}

VerificationRecord violation(const std::string& id, const LaurentViolation& e)
{
    return VerificationRecord::failed(id, e.subject(), e.witness(), "exact division failed");
}

// Runs body, turning a LaurentViolation into a failed record.
void guarded(SuiteReport& report, const std::string& id, const std::function<void()>& body)
{
    try {
        body();
    } catch (const LaurentViolation& e) {
        report.add(violation(id, e));
    }
}

VerificationRecord equality(const std::string& id, const std::string& subject, bool ok, const std::function<std::string()>& witness)
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

int xi_limit(const SuiteConfig& c)
{
    return c.xi_max > 0 ? c.xi_max : std::min(c.max_n, 10);
}

} // namespace

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{"laurent",    "coprime",    "closed-form",     "u-equation",
                                                "roundtrip",  "c-sequence", "specializations", "divisibility"};
    return names;
}

SuiteReport check_laurent(SomosEngine& engine, const SuiteConfig& config)
{
    const std::string id = "laurent";
    SuiteReport report;
    int last = 7;
    for (int n = 8; n <= config.max_n; ++n) {
        try {
            VerificationRecord r = checks::timed([&] {
                const auto& x = engine.x(n);
                return VerificationRecord::passed(id, xs(n), std::to_string(x.size()) + " terms in R");
            });
            report.add(r);
            last = n;
        } catch (const LaurentViolation& e) {
            report.add(violation(id, e));
            break;
        }
    }

    std::vector<LaurentPolynomial> allowed;
    for (ring::VarIndex v = 0; v < 8; ++v) {
        allowed.push_back(LaurentPolynomial::variable(engine.oracle_table(), v));
    }
    for (const auto& f : engine.oracle_basis()->factors) {
        allowed.push_back(f);
    }
    int depth = std::min(engine.oracle_depth(config.max_n, config.oracle_budget), last);
    for (int n = 8; n <= depth; ++n) {
        report.add(checks::check_monomial_denominator(id, "oracle " + xs(n), engine.oracle_x(n), allowed));
        report.add(checks::timed([&] {
            LocalizedPolynomial image =
                ring::substitute_units(engine.x(n), engine.ring_in_oracle(), engine.oracle_basis());
            const LocalizedPolynomial& direct = engine.oracle_localized(n);
            return equality(id, "oracle " + xs(n) + " = image of " + xs(n), image == direct,
                            [&] { return ring::to_string((image - direct).core()); });
        }));
    }
    if (depth < last) {
        std::string subject = "oracle " + xs(depth + 1) + ".." + xs(last) + " mod p";
        report.add(checks::timed([&] {
            auto bad = engine.oracle_mismatch_mod_p(last, config.modular_points, config.seed);
            if (bad) {
                return VerificationRecord::failed(id, subject, xs(*bad) + " differs from the oracle at a random point",
                                                  "modulo 2^61-1");
            }
            return VerificationRecord::passed(
                id, subject,
                std::to_string(config.modular_points) +
                    " random points modulo 2^61-1; the denominator then divides a monomial times powers of E_j, since "
                    "x_n is Laurent in R and each generator of R maps to a monomial times at most one E_j");
        }));
    }
    return report;
}

SuiteReport check_coprime(SomosEngine& engine, const SuiteConfig& config)
{
    const std::string id = "coprime";
    SuiteReport report;
    guarded(report, id, [&] {
        int hi = config.coprime_max > 0 ? config.coprime_max : config.max_n;
        std::vector<checks::NamedValue> values;
        for (int n = 8; n <= hi; ++n) {
            values.push_back({xs(n), RationalFunction(engine.x(n))});
        }
        report.append(checks::check_pairwise_coprime(id, values, {}, config.jobs));
    });
    guarded(report, id, [&] {
        std::vector<checks::NamedValue> values;
        std::vector<int> index;
        for (int n = 4; n <= xi_limit(config); ++n) {
            values.push_back({"xi" + std::to_string(n), RationalFunction(engine.xi_tilde(n).core())});
            index.push_back(n);
        }
        auto excluded = [&](std::size_t i, std::size_t j) {
            int d = index[j] - index[i];
            return d % 2 == 0 && d <= 4;
        };
        report.append(checks::check_pairwise_coprime(id, values, excluded, config.jobs));
    });
    return report;
}

SuiteReport check_closed_form(SomosEngine& engine, const SuiteConfig& config)
{
    const std::string id = "closed-form";
    const auto& p = engine.params();
    SuiteReport report;
    for (int n = 0; n <= config.max_n; ++n) {
        report.add(checks::timed([&] {
            LaurentPolynomial lhs = engine.f_closed_form(n + 4) * engine.f_closed_form(n);
            LaurentPolynomial rhs = engine.f_closed_form(n + 2).pow(p.k);
            return equality(id, "F" + std::to_string(n + 4) + " F" + std::to_string(n) + " = F" +
                                    std::to_string(n + 2) + "^k",
                            lhs == rhs, [&] { return ring::to_string(lhs) + " vs " + ring::to_string(rhs); });
        }));
    }
    guarded(report, id, [&] {
        for (int n = 0; n + 4 <= config.max_n; ++n) {
            report.add(checks::timed([&] {
                LaurentPolynomial lhs = engine.x(n + 4) * engine.x(n) - engine.x(n + 2).pow(p.k);
                LaurentPolynomial rhs = engine.f_closed_form(n) * engine.x(n + 3).pow(p.m) * engine.x(n + 1).pow(p.l);
                return equality(id, "F" + std::to_string(n) + " from iterates in R", lhs == rhs,
                                [&] { return ring::to_string(lhs - rhs); });
            }));
        }
    });
    int depth = engine.oracle_depth(config.max_n + 4, config.oracle_budget);
    auto bwd = engine.backward_map();
    for (int n = 0; n + 4 <= depth && n <= config.max_n; ++n) {
        report.add(checks::timed([&] {
            RationalFunction direct = ring::to_rational(engine.oracle_f(n));
            RationalFunction closed = checks::apply(bwd, RationalFunction(engine.f_closed_form(n)));
            return equality(id, "F" + std::to_string(n) + " from oracle iterates", direct == closed,
                            [&] { return text(direct) + " vs " + text(closed); });
        }));
    }
    int first = std::max(0, depth - 3);
    if (first <= config.max_n) {
        std::string subject = "F" + std::to_string(first) + "..F" + std::to_string(config.max_n) +
                              " from oracle iterates mod p";
        report.add(checks::timed([&] {
            auto bad = engine.f_mismatch_mod_p(config.max_n, config.modular_points, config.seed);
            if (bad) {
                return VerificationRecord::failed(id, subject, "F" + std::to_string(*bad) + " differs at a random point",
                                                  "modulo 2^61-1");
            }
            return VerificationRecord::passed(id, subject,
                                              std::to_string(config.modular_points) + " random points modulo 2^61-1");
        }));
    }
    return report;
}

SuiteReport check_u_equation(SomosEngine& engine, const SuiteConfig& config)
{
    const std::string id = "u-equation";
    const int k = engine.params().k;
    SuiteReport report;
    guarded(report, id, [&] {
        for (int n = 2; n + 4 <= config.max_n; ++n) {
            report.add(verify_u_equation(engine, n));
        }
    });
    guarded(report, id, [&] {
        auto to_u = engine.ring_to_u_map();
        for (int n = 2; n <= std::min(6, config.max_n - 2); ++n) {
            report.add(checks::timed([&] {
                RationalFunction lhs = checks::apply(to_u, engine.u_from_x(n));
                const RationalFunction& rhs = engine.u_recurrence(n);
                return equality(id, "u" + std::to_string(n) + " from x = u" + std::to_string(n) + " by recurrence",
                                lhs == rhs, [&] { return text(lhs) + " vs " + text(rhs); });
            }));
        }
    });
    guarded(report, id, [&] {
        for (int n = 2; n + 2 <= xi_limit(config); ++n) {
            report.add(checks::timed([&] {
                RationalFunction lhs = ring::to_rational(engine.xi_tilde(n + 2)) *
                                       ring::to_rational(engine.xi_tilde(n - 2)) /
                                       ring::to_rational(engine.xi_tilde(n)).pow(k);
                const RationalFunction& rhs = engine.u_recurrence(n);
                return equality(id, "u" + std::to_string(n) + " from xi", lhs == rhs,
                                [&] { return text(lhs) + " vs " + text(rhs); });
            }));
        }
    });
    return report;
}

SuiteReport check_roundtrip(SomosEngine& engine, const SuiteConfig& config)
{
    const std::string id = "roundtrip";
    std::vector<ring::VarIndex> all{0, 1, 2, 3, 4, 5, 6, 7};
    SuiteReport report;
    auto add = [&](const std::string& label, const checks::RationalMap& a, const checks::RationalMap& b) {
        SuiteReport r = checks::check_round_trip(id, a, b, all, config.jobs);
        for (auto& rec : r.records) {
            rec.subject = label + " " + rec.subject;
        }
        report.append(r);
    };
    add("oracle->R->oracle", engine.forward_map(), engine.backward_map());
    add("R->oracle->R", engine.backward_map(), engine.forward_map());
    add("R->u->R", engine.ring_to_u_map(), engine.u_to_ring_map());
    add("u->R->u", engine.u_to_ring_map(), engine.ring_to_u_map());
    return report;
}

SuiteReport check_c_sequence(SomosEngine& engine, const SuiteConfig& config)
{
    const std::string id = "c-sequence";
    const auto& p = engine.params();
    SuiteReport report;
    std::vector<mpz_class> c;
    VerificationRecord integral = checks::timed([&] {
        try {
            c = c_values(p, config.c_max, config.c_bits);
        } catch (const std::domain_error& e) {
            return VerificationRecord::failed(id, "c8..c" + std::to_string(config.c_max) + " integral", e.what());
        }
        int top = static_cast<int>(c.size()) + 3;
        std::string note = top < config.c_max ? "stopped at c" + std::to_string(top) + ", " +
                                                    std::to_string(mpz_sizeinbase(c.back().get_mpz_t(), 2)) + " bits"
                                              : "";
        if (c.size() > 10) {
            note += (note.empty() ? "" : "; ") + std::string("c14 = ") + c[10].get_str();
        }
        return VerificationRecord::passed(id, "c8..c" + std::to_string(top) + " integral", note);
    });
    report.add(integral);
    if (!integral.ok()) {
        return report;
    }
    const int top = static_cast<int>(c.size()) + 3;
    report.add(checks::timed([&] {
        const std::string subject = "c8 < c9 < .. < c" + std::to_string(top);
        for (int n = 8; n < top; ++n) {
            if (!(c[n - 4] < c[n - 3])) {
                return VerificationRecord::failed(id, subject,
                                                  "c" + std::to_string(n) + " = " + c[n - 4].get_str() + ", c" +
                                                      std::to_string(n + 1) + " = " + c[n - 3].get_str());
            }
        }
        return VerificationRecord::passed(id, subject);
    }));
    guarded(report, id, [&] {
        for (int n = 8; n <= std::min(config.max_n, top); ++n) {
            report.add(checks::timed([&] {
                mpz_class v = eval_ones(engine.x(n));
                return equality(id, xs(n) + " at all ones = c" + std::to_string(n), v == c[n - 4],
                                [&] { return v.get_str() + " vs " + c[n - 4].get_str(); });
            }));
        }
    });
    return report;
}

SuiteReport check_specializations(SomosEngine& engine, const SuiteConfig&)
{
    const std::string id = "specializations";
    const auto& p = engine.params();
    SuiteReport report;
    guarded(report, id, [&] {
        report.add(checks::timed([&] {
            const auto& t = engine.ring_table();
            LaurentPolynomial f0inv = LaurentPolynomial::variable(t, "f0", -1);
            LaurentPolynomial expected =
                (LaurentPolynomial::variable(t, "x6").pow(p.k) +
                 LaurentPolynomial::variable(t, "f1", p.k) * f0inv * LaurentPolynomial::variable(t, "x7").pow(p.m) *
                     LaurentPolynomial::variable(t, "x5").pow(p.l)) *
                LaurentPolynomial::variable(t, "x4", -1);
            const LaurentPolynomial& x8 = engine.x(8);
            return equality(id, "x8 degree one in f0^-1", x8 == expected,
                            [&] { return ring::to_string(x8) + " vs " + ring::to_string(expected); });
        }));
    });
    guarded(report, id, [&] {
        VerificationRecord r = root_of_unity_check(engine);
        r.check_id = id;
        report.add(r);
    });
    return report;
}

SuiteReport check_divisibility(SomosEngine& engine, const SuiteConfig& config)
{
    const std::string id = "divisibility";
    SuiteReport report;
    guarded(report, id, [&] {
        for (int i = 3; 2 * i + 2 <= config.max_n; ++i) {
            report.add(checks::timed([&] {
                auto r = engine.p_polynomial(i);
                const auto& x = engine.x(2 * i + 2);
                return equality(id, "P" + std::to_string(2 * i + 2) + " / divisor = " + xs(2 * i + 2),
                                r.quotient == x, [&] { return ring::to_string(r.quotient - x); });
            }));
        }
    });
    return report;
}

SuiteReport run_suite(SomosEngine& engine, const SuiteConfig& config, const std::vector<std::string>& names)
{
    static const std::map<std::string, std::function<SuiteReport(SomosEngine&, const SuiteConfig&)>> table{
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

std::vector<std::string> dump(SomosEngine& engine, int max_n, bool ones)
{
    std::vector<std::string> lines;
    for (int n = ones ? 4 : 0; n <= max_n; ++n) {
        if (ones) {
            lines.push_back("c" + std::to_string(n) + " = " + eval_ones(engine.x(n)).get_str());
        } else {
            lines.push_back(xs(n) + " = " + ring::to_string(engine.x(n)));
        }
    }
    return lines;
}

} // namespace laurentlab::somos
