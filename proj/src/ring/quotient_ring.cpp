#include "laurentlab/ring/quotient_ring.hpp"

#include "laurentlab/ring/substitute.hpp"

namespace laurentlab::ring {

QuotientRingElement::QuotientRingElement(unsigned k) : coeffs_(k)
{
    if (k == 0) {
        throw std::invalid_argument("quotient ring modulus degree must be positive");
    }
}

QuotientRingElement::QuotientRingElement(unsigned k, const mpz_class& constant) : QuotientRingElement(k)
{
    coeffs_[0] = constant;
}

QuotientRingElement QuotientRingElement::t_power(unsigned k, std::int64_t j)
{
    QuotientRingElement r(k);
    std::int64_t period = 2 * static_cast<std::int64_t>(k);
    std::int64_t e = ((j % period) + period) % period;
    if (e >= static_cast<std::int64_t>(k)) {
        r.coeffs_[static_cast<std::size_t>(e - k)] = -1;
    } else {
        r.coeffs_[static_cast<std::size_t>(e)] = 1;
    }
    return r;
}

bool QuotientRingElement::is_zero() const
{
    for (const auto& c : coeffs_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

std::optional<std::pair<int, unsigned>> QuotientRingElement::as_signed_power() const
{
    std::optional<std::pair<int, unsigned>> found;
    for (unsigned i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        if (found || (coeffs_[i] != 1 && coeffs_[i] != -1)) {
            return std::nullopt;
        }
        found = std::make_pair(coeffs_[i] > 0 ? 1 : -1, i);
    }
    return found;
}

QuotientRingElement QuotientRingElement::operator-() const
{
    QuotientRingElement r(*this);
    for (auto& c : r.coeffs_) {
        c = -c;
    }
    return r;
}

QuotientRingElement operator+(const QuotientRingElement& a, const QuotientRingElement& b)
{
    if (a.coeffs_.size() != b.coeffs_.size()) {
        throw std::invalid_argument("quotient ring elements with different moduli");
    }
    QuotientRingElement r(a);
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
        r.coeffs_[i] += b.coeffs_[i];
    }
    return r;
}

QuotientRingElement operator-(const QuotientRingElement& a, const QuotientRingElement& b)
{
    return a + (-b);
}

QuotientRingElement operator*(const QuotientRingElement& a, const QuotientRingElement& b)
{
    if (a.coeffs_.size() != b.coeffs_.size()) {
        throw std::invalid_argument("quotient ring elements with different moduli");
    }
    const std::size_t k = a.coeffs_.size();
    QuotientRingElement r(static_cast<unsigned>(k));
    for (std::size_t i = 0; i < k; ++i) {
        if (a.coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (b.coeffs_[j] == 0) {
                continue;
            }
            std::size_t e = i + j;
            if (e >= k) {
                mpz_submul(r.coeffs_[e - k].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
            } else {
                mpz_addmul(r.coeffs_[e].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
            }
        }
    }
    return r;
}

QuotientRingElement QuotientRingElement::pow(std::int64_t e) const
{
    const unsigned k = modulus_degree();
    if (e < 0) {
        auto sp = as_signed_power();
        if (!sp) {
            throw SubstitutionError("negative power of a non-invertible quotient ring element");
        }
        QuotientRingElement r = t_power(k, -static_cast<std::int64_t>(sp->second) * (-e));
        return (sp->first < 0 && (-e) % 2 == 1) ? -r : r;
    }
    QuotientRingElement result(k, 1);
    QuotientRingElement base(*this);
    while (e > 0) {
        if (e & 1) {
            result = result * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

std::string QuotientRingElement::to_string() const
{
    std::string out;
    for (unsigned i = 0; i < coeffs_.size(); ++i) {
        const mpz_class& c = coeffs_[i];
        if (c == 0) {
            continue;
        }
        if (out.empty()) {
            if (c < 0) {
                out += '-';
            }
        } else {
            out += c < 0 ? " - " : " + ";
        }
        mpz_class mag = abs(c);
        if (i == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) {
            out += mag.get_str() + "*";
        }
        out += i == 1 ? std::string("t") : "t^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

QuotientRingElement eval_quotient_ring(const LaurentPolynomial& p, const std::map<VarIndex, QuotientRingElement>& values,
                                       unsigned k)
{
    std::map<std::pair<VarIndex, std::int32_t>, QuotientRingElement> cache;
    QuotientRingElement sum(k);
    for (const auto& t : p.terms()) {
        QuotientRingElement term(k, t.coeff);
        for (const auto& vp : t.mono.powers()) {
            auto key = std::make_pair(vp.var, vp.exp);
            auto it = cache.find(key);
            if (it == cache.end()) {
                auto v = values.find(vp.var);
                if (v == values.end()) {
                    throw SubstitutionError("no value assigned to '" + p.table()->name(vp.var) + "'");
                }
                if (v->second.modulus_degree() != k) {
                    throw std::invalid_argument("assigned value has the wrong modulus degree");
                }
                it = cache.emplace(key, v->second.pow(vp.exp)).first;
            }
            term = term * it->second;
        }
        sum = sum + term;
    }
    return sum;
}

} // namespace laurentlab::ring
