#include "laurentlab/checks/checks.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "laurentlab/ring/gcd.hpp"
#include "laurentlab/ring/text.hpp"

namespace laurentlab::checks {

using ring::LaurentPolynomial;
using ring::RationalFunction;

LaurentViolation::LaurentViolation(std::string subject, LaurentPolynomial remainder)
    : std::runtime_error("Laurent property violated at " + subject), subject_(std::move(subject)),
      remainder_(std::move(remainder))
{
}

std::string LaurentViolation::witness() const
{
    return ring::to_string(remainder_);
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn)
{
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t) {
        threads.emplace_back(worker);
    }
    for (auto& t : threads) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

VerificationRecord timed(const std::function<VerificationRecord()>& fn)
{
    auto start = std::chrono::steady_clock::now();
    VerificationRecord r = fn();
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

VerificationRecord check_monomial_denominator(std::string check_id, std::string subject, const RationalFunction& value,
                                              const std::vector<LaurentPolynomial>& allowed)
{
    return timed([&] {
        LaurentPolynomial den = value.denominator();
        for (const auto& f : allowed) {
            if (f.is_unit()) {
                continue;
            }
            while (auto q = ring::try_div(den, f)) {
                den = std::move(*q);
            }
        }
        if (den.is_unit()) {
            return VerificationRecord::passed(check_id, subject);
        }
        return VerificationRecord::failed(check_id, subject, ring::to_string(den), "residual denominator");
    });
}

SuiteReport check_pairwise_coprime(const std::string& check_id, const std::vector<NamedValue>& values,
                                   const PairPredicate& excluded, unsigned jobs)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (!excluded || !excluded(i, j)) {
                pairs.emplace_back(i, j);
            }
        }
    }
    SuiteReport report;
    report.records.resize(pairs.size());
    parallel_for(pairs.size(), jobs, [&](std::size_t p) {
        const auto& a = values[pairs[p].first];
        const auto& b = values[pairs[p].second];
        std::string subject = a.name + " ~ " + b.name;
        report.records[p] = timed([&] {
            const LaurentPolynomial* left[] = {&a.value.numerator(), &a.value.denominator()};
            const LaurentPolynomial* right[] = {&b.value.numerator(), &b.value.denominator()};
            for (const auto* x : left) {
                for (const auto* y : right) {
                    if (x->is_unit() || y->is_unit()) {
                        continue;
                    }
                    LaurentPolynomial g = ring::gcd(*x, *y);
                    if (!g.is_unit()) {
                        return VerificationRecord::failed(check_id, subject, ring::to_string(g), "non-unit gcd");
                    }
                }
            }
            return VerificationRecord::passed(check_id, subject);
        });
    });
    return report;
}

RationalFunction apply(const RationalMap& m, const RationalFunction& f)
{
    if (f.table() != m.source) {
        throw ring::TableMismatch();
    }
    return ring::substitute(f, m.images, m.target);
}

SuiteReport check_round_trip(const std::string& check_id, const RationalMap& fwd, const RationalMap& bwd,
                             const std::vector<ring::VarIndex>& generators, unsigned jobs)
{
    if (fwd.target != bwd.source || bwd.target != fwd.source) {
        throw ring::TableMismatch();
    }
    SuiteReport report;
    report.records.resize(generators.size());
    parallel_for(generators.size(), jobs, [&](std::size_t i) {
        ring::VarIndex g = generators[i];
        const std::string& name = fwd.source->name(g);
        report.records[i] = timed([&] {
            auto it = fwd.images.find(g);
            if (it == fwd.images.end()) {
                return VerificationRecord::skipped(check_id, name, "no forward image");
            }
            for (const auto* part : {&it->second.numerator(), &it->second.denominator()}) {
                for (ring::VarIndex v : part->variables()) {
                    if (!bwd.images.contains(v)) {
                        return VerificationRecord::skipped(check_id, name,
                                                           "image uses " + bwd.source->name(v) + " outside the window");
                    }
                }
            }
            ring::Fraction n = ring::substitute_fraction(it->second.numerator(), bwd.images, bwd.target);
            ring::Fraction d = ring::substitute_fraction(it->second.denominator(), bwd.images, bwd.target);
            LaurentPolynomial gen = LaurentPolynomial::variable(fwd.source, g);
            if (!d.num.is_zero() && n.num * d.den == gen * n.den * d.num) {
                return VerificationRecord::passed(check_id, name);
            }
            RationalFunction back = apply(bwd, it->second);
            return VerificationRecord::failed(
                check_id, name, ring::to_string(back.numerator()) + " / " + ring::to_string(back.denominator()),
                "round trip differs from the generator");
        });
    });
    return report;
}

} // namespace laurentlab::checks
