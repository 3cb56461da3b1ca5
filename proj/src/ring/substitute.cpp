#include "laurentlab/ring/substitute.hpp"

#include <unordered_map>

namespace laurentlab::ring {

namespace {

struct PowerCache {
    LaurentPolynomial base;
    std::map<std::int64_t, LaurentPolynomial> powers;

    const LaurentPolynomial& get(std::int64_t e)
    {
        auto it = powers.find(e);
        if (it == powers.end()) {
            it = powers.emplace(e, base.pow(e)).first;
        }
        return it->second;
    }
};

struct GeneralVar {
    VarIndex var;
    std::int32_t pos;  // largest positive exponent in p, else 0
    std::int32_t neg;  // magnitude of the most negative exponent, else 0
    PowerCache num;
    PowerCache den;
};

struct PatternHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const noexcept
    {
        std::size_t h = v.size();
        for (auto x : v) {
            h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(x));
        }
        return h;
    }
};

const RationalFunction& lookup(const Assignment& values, const LaurentPolynomial& p, VarIndex v)
{
    auto it = values.find(v);
    if (it == values.end()) {
        throw SubstitutionError("no value assigned to '" + p.table()->name(v) + "'");
    }
    return it->second;
}

} // namespace

Fraction substitute_fraction(const LaurentPolynomial& p, const Assignment& values, const TablePtr& target)
{
    // Variables whose value is a signed monomial map terms to terms; the
    // rest are cleared over the denominator prod D^pos * N^neg.
    std::vector<VarIndex> vars = p.variables();
    std::vector<GeneralVar> general;
    std::unordered_map<VarIndex, std::pair<Monomial, int>> unit;
    for (VarIndex v : vars) {
        const RationalFunction& value = lookup(values, p, v);
        if (value.table() != target) {
            throw TableMismatch();
        }
        if (value.is_laurent() && value.numerator().is_unit()) {
            const Term& t = value.numerator().leading_term();
            unit.emplace(v, std::make_pair(t.mono, t.coeff < 0 ? -1 : 1));
            continue;
        }
        std::int32_t hi = p.max_degree_in(v);
        std::int32_t lo = p.min_degree_in(v);
        GeneralVar g{v, std::max(hi, 0), std::max(-lo, 0), {value.numerator(), {}}, {value.denominator(), {}}};
        if (value.is_zero() && g.neg > 0) {
            throw SubstitutionError("zero assigned to '" + p.table()->name(v) + "' which has a negative exponent");
        }
        general.push_back(std::move(g));
    }

    std::unordered_map<std::vector<std::int32_t>, std::vector<Term>, PatternHash> groups;
    std::vector<std::vector<std::int32_t>> order;
    for (const auto& t : p.terms()) {
        std::vector<std::int32_t> pattern(general.size());
        for (std::size_t i = 0; i < general.size(); ++i) {
            pattern[i] = t.mono.exponent(general[i].var);
        }
        Monomial mono;
        int sign = 1;
        for (const auto& vp : t.mono.powers()) {
            auto it = unit.find(vp.var);
            if (it != unit.end()) {
                mono = mono * it->second.first.pow(vp.exp);
                if (it->second.second < 0 && (vp.exp % 2 != 0)) {
                    sign = -sign;
                }
            }
        }
        auto [it, inserted] = groups.try_emplace(pattern);
        if (inserted) {
            order.push_back(pattern);
        }
        it->second.push_back({std::move(mono), sign > 0 ? t.coeff : mpz_class(-t.coeff)});
    }

    LaurentPolynomial den(target, 1);
    for (auto& g : general) {
        if (g.pos > 0) {
            den = den * g.den.get(g.pos);
        }
        if (g.neg > 0) {
            den = den * g.num.get(g.neg);
        }
    }
    LaurentPolynomial num(target);
    for (const auto& pattern : order) {
        LaurentPolynomial part = LaurentPolynomial::from_terms(target, std::move(groups[pattern]));
        for (std::size_t i = 0; i < general.size() && !part.is_zero(); ++i) {
            auto& g = general[i];
            std::int64_t en = static_cast<std::int64_t>(pattern[i]) + g.neg;
            std::int64_t ed = static_cast<std::int64_t>(g.pos) - pattern[i];
            if (en > 0) {
                part = part * g.num.get(en);
            }
            if (ed > 0) {
                part = part * g.den.get(ed);
            }
        }
        num += part;
    }
    return {std::move(num), std::move(den)};
}

RationalFunction substitute(const LaurentPolynomial& p, const Assignment& values, const TablePtr& target)
{
    Fraction f = substitute_fraction(p, values, target);
    return RationalFunction::make(std::move(f.num), std::move(f.den));
}

RationalFunction substitute(const RationalFunction& f, const Assignment& values, const TablePtr& target)
{
    Fraction n = substitute_fraction(f.numerator(), values, target);
    Fraction d = substitute_fraction(f.denominator(), values, target);
    if (d.num.is_zero()) {
        throw SubstitutionError("denominator vanishes under the substitution");
    }
    return RationalFunction::make(n.num * d.den, n.den * d.num);
}

LaurentPolynomial substitute_laurent(const LaurentPolynomial& p, const Assignment& values, const TablePtr& target)
{
    Fraction f = substitute_fraction(p, values, target);
    return exact_div(f.num, f.den);
}

mpq_class evaluate(const LaurentPolynomial& p, const std::vector<mpq_class>& point)
{
    std::map<std::pair<VarIndex, std::int32_t>, mpq_class> cache;
    mpq_class sum = 0;
    for (const auto& t : p.terms()) {
        mpq_class term = t.coeff;
        for (const auto& vp : t.mono.powers()) {
            if (vp.var >= point.size()) {
                throw SubstitutionError("no value for '" + p.table()->name(vp.var) + "'");
            }
            auto key = std::make_pair(vp.var, vp.exp);
            auto it = cache.find(key);
            if (it == cache.end()) {
                const mpq_class& base = point[vp.var];
                if (base == 0 && vp.exp < 0) {
                    throw SubstitutionError("zero assigned to '" + p.table()->name(vp.var) +
                                            "' which has a negative exponent");
                }
                mpz_class n;
                mpz_class d;
                unsigned long e = static_cast<unsigned long>(vp.exp < 0 ? -static_cast<std::int64_t>(vp.exp) : vp.exp);
                mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
                mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
                mpq_class v = vp.exp < 0 ? mpq_class(d, n) : mpq_class(n, d);
                v.canonicalize();
                it = cache.emplace(key, v).first;
            }
            term *= it->second;
        }
        sum += term;
    }
    return sum;
}

} // namespace laurentlab::ring
