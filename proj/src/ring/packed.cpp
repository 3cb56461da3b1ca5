#include "packed.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

namespace laurentlab::ring::detail {

namespace {

constexpr unsigned kMaxWords = 4;

template <unsigned W>
struct Key {
    std::array<std::uint64_t, W> w{};  // w[0] least significant

    friend bool operator==(const Key&, const Key&) = default;

    template <typename H>
    friend H AbslHashValue(H h, const Key& k)
    {
        return H::combine_contiguous(std::move(h), k.w.data(), W);
    }
};

template <unsigned W>
Key<W> add(const Key<W>& a, const Key<W>& b)
{
    Key<W> r;
    unsigned carry = 0;
    for (unsigned i = 0; i < W; ++i) {
        std::uint64_t s = a.w[i] + b.w[i];
        unsigned c1 = s < a.w[i];
        std::uint64_t s2 = s + carry;
        unsigned c2 = s2 < s;
        r.w[i] = s2;
        carry = c1 | c2;
    }
    return r;
}

template <unsigned W>
bool greater(const Key<W>& a, const Key<W>& b)
{
    for (unsigned i = W; i-- > 0;) {
        if (a.w[i] != b.w[i]) {
            return a.w[i] > b.w[i];
        }
    }
    return false;
}

template <unsigned W>
void set_field(Key<W>& k, unsigned offset, std::uint64_t value)
{
    unsigned word = offset / 64;
    unsigned bit = offset % 64;
    k.w[word] |= value << bit;
    if (bit != 0 && word + 1 < W) {
        k.w[word + 1] |= value >> (64 - bit);
    }
}

template <unsigned W>
std::uint64_t get_field(const Key<W>& k, unsigned offset, unsigned bits)
{
    unsigned word = offset / 64;
    unsigned bit = offset % 64;
    std::uint64_t v = k.w[word] >> bit;
    if (bit != 0 && word + 1 < W) {
        v |= k.w[word + 1] << (64 - bit);
    }
    return bits >= 64 ? v : v & ((std::uint64_t{1} << bits) - 1);
}

unsigned bit_width(std::uint64_t range)
{
    return static_cast<unsigned>(std::bit_width(range));
}

// Field layout shared by both operands. From the most significant end:
// total degree, then one field per variable in increasing index order, so
// unsigned comparison of packed products is graded-lex comparison.
struct Layout {
    std::vector<VarIndex> vars;
    std::vector<std::int64_t> lo_a, lo_b;  // per-variable minimum exponents
    std::vector<unsigned> offset, bits;
    std::int64_t deg_lo_a = 0, deg_lo_b = 0;
    unsigned deg_offset = 0, deg_bits = 0;
    unsigned total = 0;
};

struct Range {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
};

void scan(std::span<const Term> terms, std::vector<std::pair<VarIndex, Range>>& ranges, Range& deg)
{
    // Variables absent from a term have exponent 0, which must count toward the range.
    std::vector<std::pair<VarIndex, Range>> local;
    for (const auto& t : terms) {
        deg.lo = std::min(deg.lo, t.mono.degree());
        deg.hi = std::max(deg.hi, t.mono.degree());
        for (const auto& vp : t.mono.powers()) {
            auto it = std::lower_bound(local.begin(), local.end(), vp.var,
                                       [](const auto& p, VarIndex v) { return p.first < v; });
            if (it == local.end() || it->first != vp.var) {
                it = local.insert(it, {vp.var, Range{}});
            }
            it->second.lo = std::min<std::int64_t>(it->second.lo, vp.exp);
            it->second.hi = std::max<std::int64_t>(it->second.hi, vp.exp);
        }
    }
    for (auto& [v, r] : local) {
        std::size_t count = 0;
        for (const auto& t : terms) {
            count += t.mono.exponent(v) != 0;
        }
        if (count < terms.size()) {
            r.lo = std::min<std::int64_t>(r.lo, 0);
            r.hi = std::max<std::int64_t>(r.hi, 0);
        }
    }
    ranges = std::move(local);
}

std::optional<Layout> make_layout(std::span<const Term> a, std::span<const Term> b)
{
    std::vector<std::pair<VarIndex, Range>> ra, rb;
    Range da, db;
    scan(a, ra, da);
    scan(b, rb, db);
    Layout L;
    std::size_t i = 0, j = 0;
    std::vector<std::int64_t> ranges;
    while (i < ra.size() || j < rb.size()) {
        VarIndex v;
        Range x{0, 0}, y{0, 0};
        if (j == rb.size() || (i < ra.size() && ra[i].first < rb[j].first)) {
            v = ra[i].first;
            x = ra[i++].second;
        } else if (i == ra.size() || rb[j].first < ra[i].first) {
            v = rb[j].first;
            y = rb[j++].second;
        } else {
            v = ra[i].first;
            x = ra[i++].second;
            y = rb[j++].second;
        }
        L.vars.push_back(v);
        L.lo_a.push_back(x.lo);
        L.lo_b.push_back(y.lo);
        ranges.push_back((x.hi - x.lo) + (y.hi - y.lo));
    }
    L.deg_lo_a = da.lo;
    L.deg_lo_b = db.lo;
    L.deg_bits = bit_width(static_cast<std::uint64_t>((da.hi - da.lo) + (db.hi - db.lo)));
    L.bits.resize(L.vars.size());
    L.offset.resize(L.vars.size());
    unsigned off = 0;
    for (std::size_t v = L.vars.size(); v-- > 0;) {
        L.bits[v] = bit_width(static_cast<std::uint64_t>(ranges[v]));
        L.offset[v] = off;
        off += L.bits[v];
    }
    L.deg_offset = off;
    L.total = off + L.deg_bits;
    if (L.total > 64 * kMaxWords) {
        return std::nullopt;
    }
    return L;
}

template <unsigned W>
Key<W> encode(const Monomial& m, const Layout& L, const std::vector<std::int64_t>& lo, std::int64_t deg_lo)
{
    Key<W> k;
    if (L.deg_bits > 0) {
        set_field(k, L.deg_offset, static_cast<std::uint64_t>(m.degree() - deg_lo));
    }
    const auto& powers = m.powers();
    std::size_t p = 0;
    for (std::size_t v = 0; v < L.vars.size(); ++v) {
        std::int64_t e = 0;
        if (p < powers.size() && powers[p].var == L.vars[v]) {
            e = powers[p++].exp;
        }
        if (L.bits[v] > 0) {
            set_field(k, L.offset[v], static_cast<std::uint64_t>(e - lo[v]));
        }
    }
    return k;
}

template <unsigned W>
Monomial decode(const Key<W>& k, const Layout& L, std::vector<VarPower>& scratch)
{
    scratch.clear();
    for (std::size_t v = 0; v < L.vars.size(); ++v) {
        std::int64_t e = L.lo_a[v] + L.lo_b[v];
        if (L.bits[v] > 0) {
            e += static_cast<std::int64_t>(get_field(k, L.offset[v], L.bits[v]));
        }
        if (e != 0) {
            if (e > std::numeric_limits<std::int32_t>::max() || e < std::numeric_limits<std::int32_t>::min()) {
                throw std::overflow_error("monomial exponent overflow");
            }
            scratch.push_back({L.vars[v], static_cast<std::int32_t>(e)});
        }
    }
    return Monomial::from_sorted_powers(scratch);
}

void set_int128(mpz_class& z, __int128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::uint64_t hi = static_cast<std::uint64_t>(u >> 64);
    std::uint64_t lo = static_cast<std::uint64_t>(u);
    if (hi == 0) {
        mpz_set_ui(z.get_mpz_t(), lo);
    } else {
        mpz_set_ui(z.get_mpz_t(), hi);
        mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), 64);
        mpz_add_ui(z.get_mpz_t(), z.get_mpz_t(), lo);
    }
    if (neg) {
        mpz_neg(z.get_mpz_t(), z.get_mpz_t());
    }
}

// True when every coefficient fits in 64 bits and no accumulated sum can
// exceed 126 bits.
bool small_coefficients(std::span<const Term> a, std::span<const Term> b)
{
    auto max_bits = [](std::span<const Term> t) {
        std::size_t m = 0;
        for (const auto& x : t) {
            m = std::max(m, mpz_sizeinbase(x.coeff.get_mpz_t(), 2));
        }
        return m;
    };
    std::size_t ba = max_bits(a);
    std::size_t bb = max_bits(b);
    std::size_t bn = static_cast<std::size_t>(std::bit_width(std::min(a.size(), b.size())));
    return ba <= 62 && bb <= 62 && ba + bb + bn <= 125;
}

template <unsigned W, typename Acc>
std::vector<Term> multiply_with(std::span<const Term> a, std::span<const Term> b, const Layout& L)
{
    constexpr bool small = std::is_same_v<Acc, __int128>;
    std::vector<Key<W>> ka, kb;
    ka.reserve(a.size());
    kb.reserve(b.size());
    for (const auto& t : a) {
        ka.push_back(encode<W>(t.mono, L, L.lo_a, L.deg_lo_a));
    }
    for (const auto& t : b) {
        kb.push_back(encode<W>(t.mono, L, L.lo_b, L.deg_lo_b));
    }
    std::vector<std::int64_t> ca, cb;
    if constexpr (small) {
        for (const auto& t : a) {
            ca.push_back(mpz_get_si(t.coeff.get_mpz_t()));
        }
        for (const auto& t : b) {
            cb.push_back(mpz_get_si(t.coeff.get_mpz_t()));
        }
    }

    absl::flat_hash_map<Key<W>, Acc> acc;
    acc.reserve(std::max(a.size(), b.size()) * 4);
    const bool square = a.data() == b.data() && a.size() == b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t j0 = square ? i : 0;
        for (std::size_t j = j0; j < b.size(); ++j) {
            Acc& slot = acc[add(ka[i], kb[j])];
            if constexpr (small) {
                __int128 p = static_cast<__int128>(ca[i]) * cb[j];
                slot += (square && j != i) ? 2 * p : p;
            } else {
                if (square && j != i) {
                    mpz_class p = a[i].coeff * b[j].coeff;
                    mpz_addmul_ui(slot.get_mpz_t(), p.get_mpz_t(), 2);
                } else {
                    mpz_addmul(slot.get_mpz_t(), a[i].coeff.get_mpz_t(), b[j].coeff.get_mpz_t());
                }
            }
        }
    }

    std::vector<std::pair<Key<W>, Acc>> entries;
    entries.reserve(acc.size());
    for (auto& [k, c] : acc) {
        if (c != 0) {
            entries.emplace_back(k, std::move(c));
        }
    }
    acc.clear();
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return greater(x.first, y.first); });
    std::vector<Term> out;
    out.reserve(entries.size());
    std::vector<VarPower> scratch;
    for (auto& [k, c] : entries) {
        Term t{decode<W>(k, L, scratch), {}};
        if constexpr (small) {
            set_int128(t.coeff, c);
        } else {
            t.coeff = std::move(c);
        }
        out.push_back(std::move(t));
    }
    return out;
}

template <unsigned W>
std::vector<Term> multiply_words(std::span<const Term> a, std::span<const Term> b, const Layout& L)
{
    if (small_coefficients(a, b)) {
        return multiply_with<W, __int128>(a, b, L);
    }
    return multiply_with<W, mpz_class>(a, b, L);
}

} // namespace

std::optional<std::vector<Term>> packed_multiply(std::span<const Term> a, std::span<const Term> b)
{
    auto L = make_layout(a, b);
    if (!L) {
        return std::nullopt;
    }
    if (L->total <= 64) {
        return multiply_words<1>(a, b, *L);
    }
    if (L->total <= 128) {
        return multiply_words<2>(a, b, *L);
    }
    return multiply_words<4>(a, b, *L);
}

} // namespace laurentlab::ring::detail
