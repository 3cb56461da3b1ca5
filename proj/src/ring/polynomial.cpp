#include "laurentlab/ring/polynomial.hpp"

#include "packed.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace laurentlab::ring {

namespace {

void sort_descending(std::vector<Term>& terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return graded_lex_compare(a.mono, b.mono) > 0; });
}

// Adds (sign = +1) or subtracts (sign = -1) two descending term lists.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign)
{
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) {
            c = -1;
        } else if (j == b.size()) {
            c = 1;
        } else {
            c = graded_lex_compare(a[i].mono, b[j].mono);
        }
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (sign < 0) {
                mpz_neg(out.back().coeff.get_mpz_t(), out.back().coeff.get_mpz_t());
            }
        } else {
            mpz_class s = sign > 0 ? mpz_class(a[i].coeff + b[j].coeff) : mpz_class(a[i].coeff - b[j].coeff);
            if (s != 0) {
                out.push_back({a[i].mono, std::move(s)});
            }
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

NotDivisible::NotDivisible(LaurentPolynomial remainder, std::string message)
    : RingError(std::move(message)), remainder_(std::move(remainder))
{
}

LaurentPolynomial::LaurentPolynomial(TablePtr table) : table_(std::move(table))
{
    if (!table_) {
        throw std::invalid_argument("polynomial requires a variable table");
    }
}

LaurentPolynomial::LaurentPolynomial(TablePtr table, const mpz_class& constant) : LaurentPolynomial(std::move(table))
{
    if (constant != 0) {
        terms_.push_back({Monomial{}, constant});
    }
}

LaurentPolynomial LaurentPolynomial::variable(TablePtr table, VarIndex v, std::int32_t exp)
{
    if (v >= table->arity()) {
        throw std::out_of_range("variable index outside table");
    }
    return monomial(std::move(table), Monomial::variable(v, exp), 1);
}

LaurentPolynomial LaurentPolynomial::variable(const TablePtr& table, std::string_view name, std::int32_t exp)
{
    return variable(table, table->index(name), exp);
}

LaurentPolynomial LaurentPolynomial::monomial(TablePtr table, Monomial mono, mpz_class coeff)
{
    LaurentPolynomial p(std::move(table));
    if (coeff != 0) {
        p.terms_.push_back({std::move(mono), std::move(coeff)});
    }
    return p;
}

LaurentPolynomial LaurentPolynomial::from_terms(TablePtr table, std::vector<Term> terms)
{
    LaurentPolynomial p(std::move(table));
    sort_descending(terms);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) {
                p.terms_.pop_back();
            }
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) {
        p.terms_.pop_back();
    }
    return p;
}

LaurentPolynomial LaurentPolynomial::from_sorted_terms(TablePtr table, std::vector<Term> terms)
{
    LaurentPolynomial p(std::move(table));
    p.terms_ = std::move(terms);
    return p;
}

bool LaurentPolynomial::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

bool LaurentPolynomial::is_unit() const noexcept
{
    return terms_.size() == 1 && (terms_.front().coeff == 1 || terms_.front().coeff == -1);
}

bool LaurentPolynomial::is_one() const noexcept
{
    return terms_.size() == 1 && terms_.front().mono.is_one() && terms_.front().coeff == 1;
}

std::optional<mpz_class> LaurentPolynomial::constant_value() const
{
    if (terms_.empty()) {
        return mpz_class(0);
    }
    if (is_constant()) {
        return terms_.front().coeff;
    }
    return std::nullopt;
}

const Term& LaurentPolynomial::leading_term() const
{
    if (terms_.empty()) {
        throw std::logic_error("leading term of the zero polynomial");
    }
    return terms_.front();
}

const Term& LaurentPolynomial::trailing_term() const
{
    if (terms_.empty()) {
        throw std::logic_error("trailing term of the zero polynomial");
    }
    return terms_.back();
}

void LaurentPolynomial::require_same_table(const LaurentPolynomial& other) const
{
    if (table_ != other.table_) {
        throw TableMismatch();
    }
}

LaurentPolynomial LaurentPolynomial::operator-() const
{
    LaurentPolynomial p(*this);
    for (auto& t : p.terms_) {
        mpz_neg(t.coeff.get_mpz_t(), t.coeff.get_mpz_t());
    }
    return p;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other)
{
    require_same_table(other);
    if (other.terms_.empty()) {
        return *this;
    }
    if (terms_.empty()) {
        terms_ = other.terms_;
        return *this;
    }
    terms_ = merge_terms(terms_, other.terms_, 1);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other)
{
    require_same_table(other);
    if (other.terms_.empty()) {
        return *this;
    }
    terms_ = merge_terms(terms_, other.terms_, -1);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& other)
{
    *this = *this * other;
    return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    a.require_same_table(b);
    if (a.is_zero() || b.is_zero()) {
        return LaurentPolynomial(a.table_);
    }
    if (b.is_monomial()) {
        return a.mul_term(b.terms_.front().mono, b.terms_.front().coeff);
    }
    if (a.is_monomial()) {
        return b.mul_term(a.terms_.front().mono, a.terms_.front().coeff);
    }
    if (auto packed = detail::packed_multiply(a.terms_, b.terms_)) {
        return LaurentPolynomial::from_sorted_terms(a.table_, std::move(*packed));
    }
    const auto& small = a.size() <= b.size() ? a.terms_ : b.terms_;
    const auto& large = a.size() <= b.size() ? b.terms_ : a.terms_;

    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(small.size() * large.size(), 1u << 22));
    for (const auto& s : small) {
        for (const auto& l : large) {
            auto [it, inserted] = acc.try_emplace(s.mono * l.mono);
            mpz_addmul(it->second.get_mpz_t(), s.coeff.get_mpz_t(), l.coeff.get_mpz_t());
        }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [mono, coeff] : acc) {
        if (coeff != 0) {
            out.push_back({mono, std::move(coeff)});
        }
    }
    sort_descending(out);
    return LaurentPolynomial::from_sorted_terms(a.table_, std::move(out));
}

LaurentPolynomial LaurentPolynomial::mul_term(const Monomial& mono, const mpz_class& coeff) const
{
    LaurentPolynomial p(table_);
    if (coeff == 0) {
        return p;
    }
    // Multiplying by a monomial preserves the graded-lex order.
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        p.terms_.push_back({t.mono * mono, t.coeff * coeff});
    }
    return p;
}

LaurentPolynomial LaurentPolynomial::mul_scalar(const mpz_class& c) const
{
    return mul_term(Monomial{}, c);
}

LaurentPolynomial LaurentPolynomial::div_scalar_exact(const mpz_class& c) const
{
    if (c == 0) {
        throw DivisionByZero();
    }
    LaurentPolynomial p(*this);
    for (auto& t : p.terms_) {
        mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    }
    return p;
}

LaurentPolynomial LaurentPolynomial::pow(std::int64_t e) const
{
    if (e < 0) {
        if (!is_unit()) {
            throw RingError("negative power of a non-unit");
        }
        const auto& t = terms_.front();
        mpz_class c = (t.coeff < 0 && (-e) % 2 == 1) ? -1 : 1;
        return monomial(table_, t.mono.pow(e), c);
    }
    if (e == 0) {
        return LaurentPolynomial(table_, 1);
    }
    if (is_monomial()) {
        mpz_class c;
        mpz_pow_ui(c.get_mpz_t(), terms_.front().coeff.get_mpz_t(), static_cast<unsigned long>(e));
        return monomial(table_, terms_.front().mono.pow(e), c);
    }
    LaurentPolynomial result(table_, 1);
    LaurentPolynomial base(*this);
    bool first = true;
    while (e > 0) {
        if (e & 1) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

Monomial LaurentPolynomial::monomial_content() const
{
    if (terms_.empty()) {
        return Monomial{};
    }
    Monomial m = terms_.front().mono;
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        m = Monomial::componentwise_min(m, terms_[i].mono);
    }
    return m;
}

mpz_class LaurentPolynomial::integer_content() const
{
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    return g;
}

std::vector<VarIndex> LaurentPolynomial::variables() const
{
    std::vector<VarIndex> vars;
    for (const auto& t : terms_) {
        for (const auto& p : t.mono.powers()) {
            vars.push_back(p.var);
        }
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

bool LaurentPolynomial::involves(VarIndex v) const
{
    return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.exponent(v) != 0; });
}

std::int32_t LaurentPolynomial::max_degree_in(VarIndex v) const
{
    std::int32_t d = 0;
    bool first = true;
    for (const auto& t : terms_) {
        auto e = t.mono.exponent(v);
        d = first ? e : std::max(d, e);
        first = false;
    }
    return d;
}

std::int32_t LaurentPolynomial::min_degree_in(VarIndex v) const
{
    std::int32_t d = 0;
    bool first = true;
    for (const auto& t : terms_) {
        auto e = t.mono.exponent(v);
        d = first ? e : std::min(d, e);
        first = false;
    }
    return d;
}

LaurentPolynomial LaurentPolynomial::rebase(TablePtr target, std::span<const VarIndex> index_map) const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::vector<VarPower> powers;
        powers.reserve(t.mono.powers().size());
        for (const auto& p : t.mono.powers()) {
            if (p.var >= index_map.size() || index_map[p.var] >= target->arity()) {
                throw std::out_of_range("variable '" + table_->name(p.var) + "' has no image in target table");
            }
            powers.push_back({index_map[p.var], p.exp});
        }
        out.push_back({Monomial::from_powers(std::move(powers)), t.coeff});
    }
    return from_terms(std::move(target), std::move(out));
}

LaurentPolynomial LaurentPolynomial::rebase_by_name(TablePtr target) const
{
    if (target == table_) {
        return *this;
    }
    std::vector<VarIndex> map(table_->arity(), static_cast<VarIndex>(target->arity()));
    for (VarIndex v : variables()) {
        auto idx = target->find(table_->name(v));
        if (!idx) {
            throw std::out_of_range("variable '" + table_->name(v) + "' missing from target table");
        }
        map[v] = *idx;
    }
    return rebase(std::move(target), map);
}

std::size_t LaurentPolynomial::hash() const noexcept
{
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        h = h * 1000003u ^ t.mono.hash();
        h = h * 1000003u ^ static_cast<std::size_t>(mpz_get_si(t.coeff.get_mpz_t()));
    }
    return h;
}

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    a.require_same_table(b);
    return a.terms_ == b.terms_;
}

std::pair<Monomial, LaurentPolynomial> split_monomial_content(const LaurentPolynomial& p)
{
    Monomial m = p.monomial_content();
    if (m.is_one()) {
        return {std::move(m), p};
    }
    return {m, p.mul_monomial(m.inverse())};
}

namespace {

struct HeapEntry {
    Monomial mono;
    std::size_t q;   // quotient term index
    std::size_t d;   // divisor term index
};

struct HeapLess {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const noexcept
    {
        return graded_lex_compare(a.mono, b.mono) < 0;
    }
};

struct DivisionResult {
    std::vector<Term> quotient;
    bool exact = true;
    std::string reason;
};

// Heap-based division of ordinary polynomials (no negative exponents, no
// monomial content). Aborts as soon as the running leading term is not a
// multiple of lt(B): that already rules out an exact quotient.
DivisionResult divide_polynomials(const std::vector<Term>& A, const std::vector<Term>& B)
{
    DivisionResult res;
    const Term& lead = B.front();
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
    std::size_t ai = 0;
    mpz_class c;
    mpz_class q;
    while (ai < A.size() || !heap.empty()) {
        const Monomial* current;
        if (heap.empty()) {
            current = &A[ai].mono;
        } else if (ai == A.size()) {
            current = &heap.top().mono;
        } else {
            current = graded_lex_compare(A[ai].mono, heap.top().mono) >= 0 ? &A[ai].mono : &heap.top().mono;
        }
        Monomial M = *current;
        c = 0;
        if (ai < A.size() && A[ai].mono == M) {
            c = A[ai].coeff;
            ++ai;
        }
        while (!heap.empty() && heap.top().mono == M) {
            HeapEntry e = heap.top();
            heap.pop();
            mpz_submul(c.get_mpz_t(), res.quotient[e.q].coeff.get_mpz_t(), B[e.d].coeff.get_mpz_t());
            if (e.d + 1 < B.size()) {
                heap.push({res.quotient[e.q].mono * B[e.d + 1].mono, e.q, e.d + 1});
            }
        }
        if (c == 0) {
            continue;
        }
        if (!lead.mono.divides(M)) {
            res.exact = false;
            res.reason = "leading monomial of remainder is not a multiple of the divisor's leading monomial";
            return res;
        }
        if (!mpz_divisible_p(c.get_mpz_t(), lead.coeff.get_mpz_t())) {
            res.exact = false;
            res.reason = "leading coefficient of remainder is not divisible by the divisor's leading coefficient";
            return res;
        }
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), lead.coeff.get_mpz_t());
        res.quotient.push_back({M / lead.mono, q});
        if (B.size() > 1) {
            heap.push({res.quotient.back().mono * B[1].mono, res.quotient.size() - 1, 1});
        }
    }
    return res;
}

std::optional<LaurentPolynomial> divide_impl(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                             std::string* reason, std::optional<LaurentPolynomial>* partial)
{
    if (a.table() != b.table()) {
        throw TableMismatch();
    }
    if (b.is_zero()) {
        throw DivisionByZero();
    }
    if (a.is_zero()) {
        return LaurentPolynomial(a.table());
    }
    if (b.is_monomial()) {
        const Term& t = b.leading_term();
        std::vector<Term> out;
        out.reserve(a.size());
        Monomial inv = t.mono.inverse();
        std::vector<Term> leftover;
        for (const auto& at : a.terms()) {
            if (!mpz_divisible_p(at.coeff.get_mpz_t(), t.coeff.get_mpz_t())) {
                if (reason) {
                    *reason = "coefficient not divisible by monomial divisor's coefficient";
                }
                if (partial) {
                    mpz_class r;
                    mpz_tdiv_r(r.get_mpz_t(), at.coeff.get_mpz_t(), t.coeff.get_mpz_t());
                    leftover.push_back({at.mono, r});
                    continue;
                }
                return std::nullopt;
            }
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), at.coeff.get_mpz_t(), t.coeff.get_mpz_t());
            out.push_back({at.mono * inv, std::move(q)});
        }
        if (!leftover.empty()) {
            *partial = LaurentPolynomial::from_terms(a.table(), std::move(leftover));
            return std::nullopt;
        }
        return LaurentPolynomial::from_sorted_terms(a.table(), std::move(out));
    }

    // In the Laurent ring b | a iff B | A for the monomial-free parts: the
    // stripped monomials are units and no variable divides B.
    auto [ma, A] = split_monomial_content(a);
    auto [mb, B] = split_monomial_content(b);

    const Term& ta = A.trailing_term();
    const Term& tb = B.trailing_term();
    const Term& la = A.leading_term();
    const Term& lb = B.leading_term();
    bool quick_reject = !lb.mono.divides(la.mono) || !tb.mono.divides(ta.mono) ||
                        !mpz_divisible_p(ta.coeff.get_mpz_t(), tb.coeff.get_mpz_t()) ||
                        !mpz_divisible_p(la.coeff.get_mpz_t(), lb.coeff.get_mpz_t()) || A.size() < 1;
    DivisionResult res;
    if (quick_reject) {
        res.exact = false;
        res.reason = "leading or trailing term of the dividend is not a multiple of the divisor's";
    } else {
        std::vector<Term> at(A.terms().begin(), A.terms().end());
        std::vector<Term> bt(B.terms().begin(), B.terms().end());
        res = divide_polynomials(at, bt);
    }
    Monomial shift = ma / mb;
    if (!res.exact) {
        if (reason) {
            *reason = res.reason;
        }
        if (partial) {
            auto q = LaurentPolynomial::from_sorted_terms(a.table(), std::move(res.quotient));
            *partial = a - b * q.mul_monomial(shift);
        }
        return std::nullopt;
    }
    return LaurentPolynomial::from_sorted_terms(a.table(), std::move(res.quotient)).mul_monomial(shift);
}

} // namespace

LaurentPolynomial exact_div(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    std::string reason;
    std::optional<LaurentPolynomial> partial;
    auto q = divide_impl(a, b, &reason, &partial);
    if (!q) {
        LaurentPolynomial witness = partial ? *partial : a;
        throw NotDivisible(std::move(witness), "not divisible: " + reason);
    }
    return *q;
}

std::optional<LaurentPolynomial> try_div(const LaurentPolynomial& a, const LaurentPolynomial& b)
{
    return divide_impl(a, b, nullptr, nullptr);
}

bool divides(const LaurentPolynomial& b, const LaurentPolynomial& a)
{
    return try_div(a, b).has_value();
}

} // namespace laurentlab::ring
