#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "laurentlab/checks/report.hpp"
#include "laurentlab/ring/rational.hpp"
#include "laurentlab/ring/substitute.hpp"

namespace laurentlab::checks {

/// An iteration left the ring it is claimed to stay in: an exact division
/// failed. The remainder reproduces the failure.
class LaurentViolation : public std::runtime_error {
public:
    LaurentViolation(std::string subject, ring::LaurentPolynomial remainder);

    const std::string& subject() const noexcept { return subject_; }
    const ring::LaurentPolynomial& remainder() const noexcept { return remainder_; }
    std::string witness() const;

private:
    std::string subject_;
    ring::LaurentPolynomial remainder_;
};

/// Passes when the denominator of value is a unit times a product of powers
/// of the allowed factors. Each factor is divided out to exhaustion in the
/// given order; the residual denominator is the witness on failure.
VerificationRecord check_monomial_denominator(std::string check_id, std::string subject,
                                              const ring::RationalFunction& value,
                                              const std::vector<ring::LaurentPolynomial>& allowed);

struct NamedValue {
    std::string name;
    ring::RationalFunction value;
};

/// Pair (i, j) with i < j is skipped when excluded(i, j) holds.
using PairPredicate = std::function<bool(std::size_t, std::size_t)>;

/// One record per pair: the gcds of all four numerator/denominator cross
/// pairs must be units. The first non-unit gcd is the witness.
SuiteReport check_pairwise_coprime(const std::string& check_id, const std::vector<NamedValue>& values,
                                   const PairPredicate& excluded = {}, unsigned jobs = 1);

/// Rational map between two variable tables: images of source variables.
struct RationalMap {
    ring::TablePtr source;
    ring::TablePtr target;
    ring::Assignment images;
};

/// Image of f (over m.source) under the map.
ring::RationalFunction apply(const RationalMap& m, const ring::RationalFunction& f);

/// For each named generator of fwd.source, bwd(fwd(g)) must equal g. A
/// generator whose image uses a variable outside the domain of bwd is skipped.
SuiteReport check_round_trip(const std::string& check_id, const RationalMap& fwd, const RationalMap& bwd,
                             const std::vector<ring::VarIndex>& generators, unsigned jobs = 1);

/// Runs fn(i) for i in [0, n) on up to jobs threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Runs fn and stores the elapsed time in the record it returns.
VerificationRecord timed(const std::function<VerificationRecord()>& fn);

} // namespace laurentlab::checks
