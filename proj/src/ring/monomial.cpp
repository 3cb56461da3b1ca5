#include "laurentlab/ring/monomial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace laurentlab::ring {

namespace {

std::int32_t checked_exponent(std::int64_t e)
{
    if (e > std::numeric_limits<std::int32_t>::max() || e < std::numeric_limits<std::int32_t>::min()) {
        throw std::overflow_error("monomial exponent overflow");
    }
    return static_cast<std::int32_t>(e);
}

inline std::uint64_t mix(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

template <typename Combine>
Monomial::Storage merge(const Monomial::Storage& a, const Monomial::Storage& b, Combine combine)
{
    Monomial::Storage out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->var < ib->var)) {
            std::int64_t e = combine(ia->exp, 0);
            if (e != 0) {
                out.push_back({ia->var, checked_exponent(e)});
            }
            ++ia;
        } else if (ia == a.end() || ib->var < ia->var) {
            std::int64_t e = combine(0, ib->exp);
            if (e != 0) {
                out.push_back({ib->var, checked_exponent(e)});
            }
            ++ib;
        } else {
            std::int64_t e = combine(ia->exp, ib->exp);
            if (e != 0) {
                out.push_back({ia->var, checked_exponent(e)});
            }
            ++ia;
            ++ib;
        }
    }
    return out;
}

} // namespace

void Monomial::recompute_degree() noexcept
{
    degree_ = 0;
    for (const auto& p : powers_) {
        degree_ += p.exp;
    }
}

Monomial Monomial::variable(VarIndex v, std::int32_t exp)
{
    Monomial m;
    if (exp != 0) {
        m.powers_.push_back({v, exp});
        m.degree_ = exp;
    }
    return m;
}

Monomial Monomial::from_powers(std::vector<VarPower> powers)
{
    std::sort(powers.begin(), powers.end(), [](const VarPower& a, const VarPower& b) { return a.var < b.var; });
    Monomial m;
    for (std::size_t i = 0; i < powers.size();) {
        std::int64_t e = 0;
        VarIndex v = powers[i].var;
        for (; i < powers.size() && powers[i].var == v; ++i) {
            e += powers[i].exp;
        }
        if (e != 0) {
            m.powers_.push_back({v, checked_exponent(e)});
        }
    }
    m.recompute_degree();
    return m;
}

Monomial Monomial::from_sorted_powers(std::span<const VarPower> powers)
{
    Monomial m;
    m.powers_.assign(powers.begin(), powers.end());
    m.recompute_degree();
    return m;
}

std::int32_t Monomial::exponent(VarIndex v) const noexcept
{
    auto it = std::lower_bound(powers_.begin(), powers_.end(), v,
                               [](const VarPower& p, VarIndex x) { return p.var < x; });
    return (it != powers_.end() && it->var == v) ? it->exp : 0;
}

bool Monomial::is_nonnegative() const noexcept
{
    return std::all_of(powers_.begin(), powers_.end(), [](const VarPower& p) { return p.exp > 0; });
}

Monomial Monomial::operator*(const Monomial& other) const
{
    if (other.is_one()) {
        return *this;
    }
    if (is_one()) {
        return other;
    }
    Monomial m;
    m.powers_ = merge(powers_, other.powers_, [](std::int64_t x, std::int64_t y) { return x + y; });
    m.degree_ = degree_ + other.degree_;
    return m;
}

Monomial Monomial::operator/(const Monomial& other) const
{
    if (other.is_one()) {
        return *this;
    }
    Monomial m;
    m.powers_ = merge(powers_, other.powers_, [](std::int64_t x, std::int64_t y) { return x - y; });
    m.degree_ = degree_ - other.degree_;
    return m;
}

Monomial Monomial::pow(std::int64_t e) const
{
    Monomial m;
    if (e == 0) {
        return m;
    }
    m.powers_.reserve(powers_.size());
    for (const auto& p : powers_) {
        m.powers_.push_back({p.var, checked_exponent(static_cast<std::int64_t>(p.exp) * e)});
    }
    m.recompute_degree();
    return m;
}

bool Monomial::divides(const Monomial& other) const noexcept
{
    // other / this >= 0 componentwise
    auto ia = powers_.begin();
    auto ib = other.powers_.begin();
    while (ia != powers_.end() || ib != other.powers_.end()) {
        if (ib == other.powers_.end() || (ia != powers_.end() && ia->var < ib->var)) {
            if (ia->exp > 0) {
                return false;
            }
            ++ia;
        } else if (ia == powers_.end() || ib->var < ia->var) {
            if (ib->exp < 0) {
                return false;
            }
            ++ib;
        } else {
            if (ib->exp < ia->exp) {
                return false;
            }
            ++ia;
            ++ib;
        }
    }
    return true;
}

Monomial Monomial::componentwise_min(const Monomial& a, const Monomial& b)
{
    Monomial m;
    m.powers_ = merge(a.powers_, b.powers_, [](std::int64_t x, std::int64_t y) { return std::min(x, y); });
    m.recompute_degree();
    return m;
}

Monomial Monomial::componentwise_max(const Monomial& a, const Monomial& b)
{
    Monomial m;
    m.powers_ = merge(a.powers_, b.powers_, [](std::int64_t x, std::int64_t y) { return std::max(x, y); });
    m.recompute_degree();
    return m;
}

std::size_t Monomial::hash() const noexcept
{
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (const auto& p : powers_) {
        h = mix(h ^ ((static_cast<std::uint64_t>(p.var) << 32) | static_cast<std::uint32_t>(p.exp)));
    }
    return static_cast<std::size_t>(h);
}

int graded_lex_compare(const Monomial& a, const Monomial& b) noexcept
{
    if (a.degree() != b.degree()) {
        return a.degree() < b.degree() ? -1 : 1;
    }
    const auto& pa = a.powers();
    const auto& pb = b.powers();
    auto ia = pa.begin();
    auto ib = pb.begin();
    while (ia != pa.end() || ib != pb.end()) {
        if (ib == pb.end() || (ia != pa.end() && ia->var < ib->var)) {
            return ia->exp > 0 ? 1 : -1;
        }
        if (ia == pa.end() || ib->var < ia->var) {
            return ib->exp > 0 ? -1 : 1;
        }
        if (ia->exp != ib->exp) {
            return ia->exp > ib->exp ? 1 : -1;
        }
        ++ia;
        ++ib;
    }
    return 0;
}

} // namespace laurentlab::ring
