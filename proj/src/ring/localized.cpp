#include "laurentlab/ring/localized.hpp"

#include <algorithm>
#include <unordered_map>

namespace laurentlab::ring {

BasisPtr make_basis(TablePtr table, std::vector<LaurentPolynomial> factors)
{
    for (const auto& f : factors) {
        if (f.table() != table) {
            throw TableMismatch();
        }
        if (f.is_zero() || f.is_unit()) {
            throw std::invalid_argument("basis factors must be nonzero non-units");
        }
    }
    return std::make_shared<const FactorBasis>(FactorBasis{std::move(table), std::move(factors)});
}

LocalizedPolynomial::LocalizedPolynomial(BasisPtr basis)
    : basis_(std::move(basis)), core_(basis_->table), exps_(basis_->factors.size(), 0)
{
}

LocalizedPolynomial::LocalizedPolynomial(BasisPtr basis, LaurentPolynomial p)
    : basis_(std::move(basis)), core_(std::move(p)), exps_(basis_->factors.size(), 0)
{
    extract_factors();
}

LocalizedPolynomial LocalizedPolynomial::factor(BasisPtr basis, std::size_t j)
{
    LocalizedPolynomial r(basis);
    r.core_ = LaurentPolynomial(basis->table, 1);
    r.exps_.at(j) = 1;
    return r;
}

LocalizedPolynomial LocalizedPolynomial::from_parts(BasisPtr basis, LaurentPolynomial core, std::vector<std::int64_t> exps)
{
    if (exps.size() != basis->factors.size()) {
        throw std::invalid_argument("exponent count differs from basis size");
    }
    LocalizedPolynomial r(std::move(basis));
    r.core_ = std::move(core);
    r.exps_ = std::move(exps);
    r.extract_factors();
    return r;
}

void LocalizedPolynomial::extract_factors()
{
    if (core_.is_zero()) {
        std::fill(exps_.begin(), exps_.end(), 0);
        return;
    }
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        while (auto q = try_div(core_, basis_->factors[j])) {
            core_ = std::move(*q);
            ++exps_[j];
        }
    }
}

bool LocalizedPolynomial::is_laurent() const noexcept
{
    return std::all_of(exps_.begin(), exps_.end(), [](std::int64_t e) { return e >= 0; });
}

LaurentPolynomial LocalizedPolynomial::factor_power(std::size_t j, std::int64_t e) const
{
    return basis_->factors[j].pow(e);
}

LaurentPolynomial LocalizedPolynomial::to_laurent() const
{
    if (!is_laurent()) {
        throw RingError("value has a basis factor in its denominator");
    }
    return to_fraction().num;
}

Fraction LocalizedPolynomial::to_fraction() const
{
    LaurentPolynomial num = core_;
    LaurentPolynomial den(basis_->table, 1);
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        if (exps_[j] > 0) {
            num = num * factor_power(j, exps_[j]);
        } else if (exps_[j] < 0) {
            den = den * factor_power(j, -exps_[j]);
        }
    }
    return {std::move(num), std::move(den)};
}

LocalizedPolynomial LocalizedPolynomial::pow(std::int64_t e) const
{
    if (e < 0) {
        if (!core_.is_unit()) {
            throw RingError("negative power of an element whose core is not a unit");
        }
    }
    LocalizedPolynomial r(basis_);
    r.core_ = core_.pow(e);
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        r.exps_[j] = exps_[j] * e;
    }
    if (r.core_.is_zero()) {
        std::fill(r.exps_.begin(), r.exps_.end(), 0);
    }
    return r;
}

LocalizedPolynomial operator*(const LocalizedPolynomial& a, const LocalizedPolynomial& b)
{
    if (a.basis_ != b.basis_) {
        throw TableMismatch();
    }
    LocalizedPolynomial r(a.basis_);
    r.core_ = a.core_ * b.core_;
    if (r.core_.is_zero()) {
        return r;
    }
    // Basis factors are prime, so a product of cores free of them stays free.
    for (std::size_t j = 0; j < r.exps_.size(); ++j) {
        r.exps_[j] = a.exps_[j] + b.exps_[j];
    }
    return r;
}

LocalizedPolynomial operator/(const LocalizedPolynomial& a, const LocalizedPolynomial& b)
{
    if (a.basis_ != b.basis_) {
        throw TableMismatch();
    }
    LocalizedPolynomial r(a.basis_);
    r.core_ = exact_div(a.core_, b.core_);
    if (r.core_.is_zero()) {
        return r;
    }
    for (std::size_t j = 0; j < r.exps_.size(); ++j) {
        r.exps_[j] = a.exps_[j] - b.exps_[j];
    }
    return r;
}

LocalizedPolynomial operator+(const LocalizedPolynomial& a, const LocalizedPolynomial& b)
{
    if (a.basis_ != b.basis_) {
        throw TableMismatch();
    }
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    LocalizedPolynomial r(a.basis_);
    LaurentPolynomial ca = a.core_;
    LaurentPolynomial cb = b.core_;
    for (std::size_t j = 0; j < r.exps_.size(); ++j) {
        std::int64_t m = std::min(a.exps_[j], b.exps_[j]);
        r.exps_[j] = m;
        if (a.exps_[j] > m) {
            ca = ca * a.factor_power(j, a.exps_[j] - m);
        }
        if (b.exps_[j] > m) {
            cb = cb * b.factor_power(j, b.exps_[j] - m);
        }
    }
    r.core_ = ca + cb;
    if (r.core_.is_zero()) {
        std::fill(r.exps_.begin(), r.exps_.end(), 0);
        return r;
    }
    for (std::size_t j = 0; j < r.exps_.size(); ++j) {
        while (auto q = try_div(r.core_, r.basis_->factors[j])) {
            r.core_ = std::move(*q);
            ++r.exps_[j];
        }
    }
    return r;
}

LocalizedPolynomial operator-(const LocalizedPolynomial& a, const LocalizedPolynomial& b)
{
    LocalizedPolynomial nb = b;
    nb.core_ = -nb.core_;
    return a + nb;
}

RationalFunction to_rational(const LocalizedPolynomial& v)
{
    Fraction f = v.to_fraction();
    auto [mono, den] = split_monomial_content(f.den);
    LaurentPolynomial num = f.num.mul_monomial(mono.inverse());
    if (den.leading_term().coeff < 0) {
        den = -den;
        num = -num;
    }
    return RationalFunction::from_coprime(std::move(num), std::move(den));
}

namespace {

struct ExpsHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept
    {
        std::size_t h = v.size();
        for (auto x : v) {
            h = h * 1000003u ^ static_cast<std::size_t>(x);
        }
        return h;
    }
};

} // namespace

LocalizedPolynomial substitute_units(const LaurentPolynomial& p, const std::map<VarIndex, LocalizedPolynomial>& values,
                                     const BasisPtr& basis)
{
    const std::size_t nf = basis->factors.size();
    struct Image {
        Monomial mono;
        bool negative;
        std::vector<std::int64_t> exps;
    };
    std::map<VarIndex, Image> images;
    for (VarIndex v : p.variables()) {
        auto it = values.find(v);
        if (it == values.end()) {
            throw std::invalid_argument("no value assigned to '" + p.table()->name(v) + "'");
        }
        const LocalizedPolynomial& val = it->second;
        if (val.basis() != basis) {
            throw TableMismatch();
        }
        if (!val.core().is_unit()) {
            throw std::invalid_argument("value of '" + p.table()->name(v) + "' does not have a unit core");
        }
        const Term& t = val.core().leading_term();
        images.emplace(v, Image{t.mono, t.coeff < 0, val.exponents()});
    }

    std::unordered_map<std::vector<std::int64_t>, std::vector<Term>, ExpsHash> groups;
    std::vector<std::vector<std::int64_t>> order;
    for (const auto& t : p.terms()) {
        std::vector<std::int64_t> pattern(nf, 0);
        std::vector<VarPower> powers;
        bool negative = false;
        for (const auto& vp : t.mono.powers()) {
            const Image& im = images.at(vp.var);
            for (const auto& ip : im.mono.powers()) {
                powers.push_back({ip.var, ip.exp * vp.exp});
            }
            if (im.negative && (vp.exp % 2 != 0)) {
                negative = !negative;
            }
            for (std::size_t j = 0; j < nf; ++j) {
                pattern[j] += im.exps[j] * vp.exp;
            }
        }
        auto [it, inserted] = groups.try_emplace(pattern);
        if (inserted) {
            order.push_back(pattern);
        }
        it->second.push_back({Monomial::from_powers(std::move(powers)), negative ? mpz_class(-t.coeff) : t.coeff});
    }
    if (order.empty()) {
        return LocalizedPolynomial(basis);
    }

    std::vector<std::int64_t> low = order.front();
    for (const auto& pattern : order) {
        for (std::size_t j = 0; j < nf; ++j) {
            low[j] = std::min(low[j], pattern[j]);
        }
    }
    std::vector<std::map<std::int64_t, LaurentPolynomial>> cache(nf);
    auto power = [&](std::size_t j, std::int64_t e) -> const LaurentPolynomial& {
        auto it = cache[j].find(e);
        if (it == cache[j].end()) {
            it = cache[j].emplace(e, basis->factors[j].pow(e)).first;
        }
        return it->second;
    };
    LaurentPolynomial core(basis->table);
    for (const auto& pattern : order) {
        LaurentPolynomial part = LaurentPolynomial::from_terms(basis->table, std::move(groups[pattern]));
        for (std::size_t j = 0; j < nf; ++j) {
            if (pattern[j] > low[j]) {
                part = part * power(j, pattern[j] - low[j]);
            }
        }
        core += part;
    }
    if (core.is_zero()) {
        return LocalizedPolynomial(basis);
    }
    return LocalizedPolynomial::from_parts(basis, std::move(core), std::move(low));
}

} // namespace laurentlab::ring
