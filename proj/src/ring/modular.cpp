#include "laurentlab/ring/modular.hpp"

#include <map>

namespace laurentlab::ring::modp {

std::uint64_t pow(std::uint64_t b, std::int64_t e)
{
    if (e < 0) {
        b = inv(b);
        e = -e;
    }
    std::uint64_t r = 1;
    auto u = static_cast<std::uint64_t>(e);
    while (u) {
        if (u & 1) {
            r = mul(r, b);
        }
        b = mul(b, b);
        u >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a)
{
    if (a % kPrime == 0) {
        throw DivisionByZero();
    }
    return pow(a, static_cast<std::int64_t>(kPrime - 2));
}

std::uint64_t reduce(const mpz_class& c)
{
    return mpz_fdiv_ui(c.get_mpz_t(), kPrime);
}

std::uint64_t evaluate(const LaurentPolynomial& p, const std::vector<std::uint64_t>& point)
{
    std::map<std::pair<VarIndex, std::int32_t>, std::uint64_t> cache;
    std::uint64_t sum = 0;
    for (const auto& t : p.terms()) {
        std::uint64_t v = reduce(t.coeff);
        for (const auto& vp : t.mono.powers()) {
            auto key = std::make_pair(vp.var, vp.exp);
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, pow(point.at(vp.var), vp.exp)).first;
            }
            v = mul(v, it->second);
        }
        sum = add(sum, v);
    }
    return sum;
}

} // namespace laurentlab::ring::modp
