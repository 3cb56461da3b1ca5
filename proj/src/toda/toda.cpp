#include "laurentlab/toda/toda.hpp"

#include <limits>
#include <random>
#include <stdexcept>

#include "laurentlab/ring/modular.hpp"
#include "laurentlab/ring/text.hpp"

namespace laurentlab::toda {

using checks::LaurentViolation;
using checks::VerificationRecord;
using ring::LaurentPolynomial;
using ring::LocalizedPolynomial;
using ring::Monomial;
using ring::RationalFunction;
using ring::VarIndex;

namespace {

std::int32_t exponent(std::int64_t e)
{
    if (e > std::numeric_limits<std::int32_t>::max() || e < std::numeric_limits<std::int32_t>::min()) {
        throw std::overflow_error("exponent out of range");
    }
    return static_cast<std::int32_t>(e);
}

bool has_parity(Point n, int t)
{
    return (n.dn - t) % 2 == 0 && (n.dm - t) % 2 == 0;
}

std::vector<Point> diamond(int r, int parity)
{
    std::vector<Point> out;
    for (int dn = -2 * r; dn <= 2 * r; ++dn) {
        for (int dm = -2 * r; dm <= 2 * r; ++dm) {
            Point n{dn, dm};
            if (n.norm() <= 2 * r && has_parity(n, parity)) {
                out.push_back(n);
            }
        }
    }
    return out;
}

std::string point_text(Point n)
{
    return "(" + std::to_string(n.dn) + "," + std::to_string(n.dm) + ")";
}

std::string tau_subject(int t, Point n)
{
    return var_name("tau", t, n);
}

} // namespace

void validate(const TodaParams& p)
{
    if (p.k1 < 1 || p.k2 < 1 || p.l1 < 1 || p.l2 < 1) {
        throw std::invalid_argument("k1, k2, l1 and l2 must be positive integers");
    }
}

std::string to_string(const TodaParams& p)
{
    return "(k1,k2,l1,l2)=(" + std::to_string(p.k1) + "," + std::to_string(p.k2) + "," + std::to_string(p.l1) + "," +
           std::to_string(p.l2) + ")";
}

std::string var_name(const std::string& family, int t, Point n)
{
    return family + ":" + std::to_string(t) + ":" + std::to_string(n.dn) + ":" + std::to_string(n.dm);
}

std::vector<mpz_class> c_values(const TodaParams& p, int t, std::size_t max_bits)
{
    validate(p);
    if (t < 2) {
        throw std::invalid_argument("c_t is defined for t >= 2");
    }
    const unsigned long ek = static_cast<unsigned long>(p.k1 + p.k2);
    const unsigned long el = static_cast<unsigned long>(p.l1 + p.l2);
    std::vector<mpz_class> c{1, 1, 2};
    for (int j = 5; j <= t; ++j) {
        const mpz_class& cur = c.back();
        if (max_bits > 0 && mpz_sizeinbase(cur.get_mpz_t(), 2) > max_bits) {
            break;
        }
        mpz_class a;
        mpz_class b;
        mpz_pow_ui(a.get_mpz_t(), cur.get_mpz_t(), ek);
        mpz_pow_ui(b.get_mpz_t(), cur.get_mpz_t(), el);
        mpz_class num = a + b;
        const mpz_class& prev = c[c.size() - 2];
        if (!mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t())) {
            throw std::domain_error("c_" + std::to_string(j) + " is not an integer");
        }
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        c.push_back(std::move(q));
    }
    c.resize(std::min<std::size_t>(c.size(), static_cast<std::size_t>(t) - 1));
    return c;
}

mpz_class c_sequence(const TodaParams& p, int t)
{
    return c_values(p, t).back();
}

ExponentFields::ExponentFields(const TodaParams& p, int max_t) : max_t_(max_t), span_(max_t + 2)
{
    validate(p);
    if (max_t < 1) {
        throw std::invalid_argument("exponent fields need max_t >= 1");
    }
    const std::size_t width = static_cast<std::size_t>(2 * span_ + 1);
    a_.assign(static_cast<std::size_t>(max_t) + 1, std::vector<std::int64_t>(width, 0));
    b_ = a_;
    a_[0][static_cast<std::size_t>(span_)] = 1;
    b_[1][static_cast<std::size_t>(span_ - 1)] = 1;
    for (int t = 1; t < max_t; ++t) {
        for (auto* y : {&a_, &b_}) {
            auto& next = (*y)[static_cast<std::size_t>(t) + 1];
            const auto& cur = (*y)[static_cast<std::size_t>(t)];
            const auto& prev = (*y)[static_cast<std::size_t>(t) - 1];
            for (std::size_t j = 1; j + 1 < width; ++j) {
                next[j] = p.k1 * cur[j - 1] + p.k2 * cur[j + 1] - prev[j];
                exponent(next[j]);
            }
        }
    }
}

std::int64_t ExponentFields::at(const std::vector<std::vector<std::int64_t>>& y, int t, Point n) const
{
    if (t < 0 || t > max_t_) {
        throw std::out_of_range("exponent field time " + std::to_string(t) + " outside 0.." + std::to_string(max_t_));
    }
    if (n.dn != -n.dm) {
        return 0;
    }
    int j = n.dm;
    if (j < -span_ || j > span_) {
        return 0;
    }
    return y[static_cast<std::size_t>(t)][static_cast<std::size_t>(j + span_)];
}

std::int64_t ExponentFields::a(int t, Point n) const
{
    return at(a_, t, n);
}

std::int64_t ExponentFields::b(int t, Point n) const
{
    return at(b_, t, n);
}

TodaEngine::TodaEngine(TodaParams params, int radius, bool mutate) : params_(params), radius_(radius), mutate_(mutate)
{
    validate(params_);
    if (radius_ < 2) {
        throw std::invalid_argument("window radius must be at least 2");
    }
    build_tables();
    build_initial_layers();
    build_w_images();
}

void TodaEngine::build_tables()
{
    std::vector<std::string> s;
    for (int parity = 0; parity < 2; ++parity) {
        for (Point n : diamond(radius_, parity)) {
            s.push_back(var_name("tau", 2 + parity, n));
            s.push_back(var_name("F", parity, n));
        }
    }
    std::vector<std::string> w;
    for (Point n : diamond(radius_ + 1, 0)) {
        w.push_back(var_name("tau", 0, n));
    }
    for (Point n : diamond(radius_ + 2, 1)) {
        w.push_back(var_name("tau", 1, n));
    }
    w_tau_count_ = w.size();
    for (Point n : diamond(radius_ + 1, 0)) {
        w.push_back(var_name("U", 1, n));
    }
    for (Point n : diamond(radius_, 1)) {
        w.push_back(var_name("U", 2, n));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        s_index_.emplace(s[i], static_cast<VarIndex>(i));
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        w_index_.emplace(w[i], static_cast<VarIndex>(i));
    }
    s_ = ring::VariableTable::make(std::move(s));
    w_ = ring::VariableTable::make(std::move(w));
}

int TodaEngine::layer_radius(int t) const
{
    if (t < 0) {
        return -1;
    }
    if (t == 0) {
        return radius_ - 2;
    }
    if (t == 1) {
        return radius_ - 1;
    }
    if (t <= 3) {
        return radius_;
    }
    return radius_ - (t - 3);
}

std::vector<Point> TodaEngine::layer_points(int t) const
{
    int r = layer_radius(t);
    if (r < 0) {
        return {};
    }
    return diamond(r, t % 2);
}

bool TodaEngine::in_layer(int t, Point n) const
{
    int r = layer_radius(t);
    return r >= 0 && has_parity(n, t) && n.norm() <= 2 * r;
}

LaurentPolynomial TodaEngine::s_var(const std::string& family, int t, Point n) const
{
    auto it = s_index_.find(var_name(family, t, n));
    if (it == s_index_.end()) {
        throw std::out_of_range(var_name(family, t, n) + " is outside the window");
    }
    return LaurentPolynomial::variable(s_, it->second);
}

LaurentPolynomial TodaEngine::w_var(const std::string& family, int t, Point n) const
{
    auto it = w_index_.find(var_name(family, t, n));
    if (it == w_index_.end()) {
        throw std::out_of_range(var_name(family, t, n) + " is outside the window");
    }
    return LaurentPolynomial::variable(w_, it->second);
}

const ExponentFields& TodaEngine::fields(int max_t)
{
    if (!fields_ || fields_->max_t() < max_t) {
        fields_ = std::make_unique<ExponentFields>(params_, std::max(max_t, 8));
    }
    return *fields_;
}

LaurentPolynomial TodaEngine::f_closed(int t, Point n)
{
    if (t < 0 || !has_parity(n, t)) {
        throw std::invalid_argument("F_{t,n} needs t >= 0 and n of parity t");
    }
    const ExponentFields& y = fields(t);
    std::vector<ring::VarPower> pw;
    for (int j = -(t + 2); j <= t + 2; ++j) {
        Point shift = j * e2;
        if (std::int64_t e = y.a(t, shift); e != 0) {
            pw.push_back({s_->index(var_name("F", 0, n - shift)), exponent(e)});
        }
        if (std::int64_t e = y.b(t, shift); e != 0) {
            Point r = n - shift - e2;
            auto it = s_index_.find(var_name("F", 1, r));
            if (it == s_index_.end()) {
                throw std::out_of_range(var_name("F", 1, r) + " is outside the window");
            }
            pw.push_back({it->second, exponent(e)});
        }
    }
    return LaurentPolynomial::monomial(s_, Monomial::from_powers(std::move(pw)));
}

void TodaEngine::build_initial_layers()
{
    const auto& p = params_;
    layers_.assign(4, {});
    for (int t = 2; t <= 3; ++t) {
        for (Point n : layer_points(t)) {
            layers_[t].emplace(n, s_var("tau", t, n));
        }
    }
    // Backward steps of the same recurrence; the divisors are generators or
    // earlier backward values, so the results stay Laurent.
    for (int t = 1; t >= 0; --t) {
        for (Point n : layer_points(t)) {
            auto T = [&](Point r) -> const LaurentPolynomial& { return layers_[t + 1].at(r); };
            LaurentPolynomial num = T(n - e2).pow(p.k1) * T(n + e2).pow(p.k2) +
                                    s_var("F", t, n) * T(n - e1).pow(p.l1) * T(n + e1).pow(p.l2);
            try {
                layers_[t].emplace(n, ring::exact_div(num, layers_[t + 2].at(n)));
            } catch (const ring::NotDivisible& e) {
                throw LaurentViolation(tau_subject(t, n), e.remainder());
            }
        }
    }
}

void TodaEngine::extend(int t)
{
    if (layer_radius(t) < 0) {
        throw std::out_of_range("layer " + std::to_string(t) + " is empty in a window of radius " +
                                std::to_string(radius_));
    }
    const auto& p = params_;
    std::map<Point, LaurentPolynomial> layer;
    const auto& prev = layers_[t - 1];
    const auto& prev2 = layers_[t - 2];
    for (Point n : layer_points(t)) {
        auto T = [&](Point r) -> const LaurentPolynomial& { return prev.at(r); };
        LaurentPolynomial f = f_closed(t - 2, n);
        if (mutate_) {
            f = f.mul_scalar(2);
        }
        LaurentPolynomial num = T(n - e2).pow(p.k1) * T(n + e2).pow(p.k2) + f * T(n - e1).pow(p.l1) * T(n + e1).pow(p.l2);
        try {
            layer.emplace(n, ring::exact_div(num, prev2.at(n)));
        } catch (const ring::NotDivisible& e) {
            throw LaurentViolation(tau_subject(t, n), e.remainder());
        }
    }
    layers_.push_back(std::move(layer));
}

void TodaEngine::iterate(int max_t)
{
    while (computed_layers() < max_t) {
        extend(computed_layers() + 1);
    }
}

const LaurentPolynomial& TodaEngine::tau(int t, Point n)
{
    if (!in_layer(t, n)) {
        throw std::out_of_range(tau_subject(t, n) + " is outside the window");
    }
    iterate(t);
    return layers_[static_cast<std::size_t>(t)].at(n);
}

RationalFunction TodaEngine::u_from_tau(int t, Point n)
{
    if (t < 1) {
        throw std::invalid_argument("U_{t,n} is defined for t >= 1");
    }
    const auto& p = params_;
    LaurentPolynomial num = tau(t + 1, n) * tau(t - 1, n);
    LaurentPolynomial den = tau(t, n - e2).pow(p.k1) * tau(t, n + e2).pow(p.k2);
    return RationalFunction::make(std::move(num), std::move(den));
}

void TodaEngine::build_w_images()
{
    const auto& p = params_;
    std::vector<LaurentPolynomial> factors;
    std::map<std::string, std::size_t> factor_of;
    for (Point n : diamond(radius_, 0)) {
        factor_of.emplace(var_name("U", 1, n), factors.size());
        factors.push_back(w_var("U", 1, n) - LaurentPolynomial(w_, 1));
    }
    for (Point n : diamond(radius_, 1)) {
        factor_of.emplace(var_name("U", 2, n), factors.size());
        factors.push_back(w_var("U", 2, n) - LaurentPolynomial(w_, 1));
    }
    ubasis_ = ring::make_basis(w_, std::move(factors));
    auto L = [&](const LaurentPolynomial& m) { return LocalizedPolynomial(ubasis_, m); };
    auto factor = [&](int s, Point n) { return LocalizedPolynomial::factor(ubasis_, factor_of.at(var_name("U", s, n))); };
    auto tau1 = [&](Point n) { return L(w_var("tau", 1, n)); };
    std::map<Point, LocalizedPolynomial> tau2;
    auto t2 = [&](Point n) -> const LocalizedPolynomial& {
        auto it = tau2.find(n);
        if (it == tau2.end()) {
            LocalizedPolynomial v =
                L(w_var("U", 1, n)) * tau1(n - e2).pow(p.k1) * tau1(n + e2).pow(p.k2) * L(w_var("tau", 0, n)).pow(-1);
            it = tau2.emplace(n, std::move(v)).first;
        }
        return it->second;
    };
    for (Point n : diamond(radius_, 0)) {
        t_in_w_.emplace(s_->index(var_name("tau", 2, n)), t2(n));
        t_in_w_.emplace(s_->index(var_name("F", 0, n)), tau1(n - e2).pow(p.k1) * tau1(n + e2).pow(p.k2) *
                                                             (tau1(n - e1).pow(p.l1) * tau1(n + e1).pow(p.l2)).pow(-1) *
                                                             factor(1, n));
    }
    for (Point n : diamond(radius_, 1)) {
        t_in_w_.emplace(s_->index(var_name("tau", 3, n)),
                        L(w_var("U", 2, n)) * t2(n - e2).pow(p.k1) * t2(n + e2).pow(p.k2) * tau1(n).pow(-1));
        t_in_w_.emplace(s_->index(var_name("F", 1, n)), t2(n - e2).pow(p.k1) * t2(n + e2).pow(p.k2) *
                                                             (t2(n - e1).pow(p.l1) * t2(n + e1).pow(p.l2)).pow(-1) *
                                                             factor(2, n));
    }
}

checks::RationalMap TodaEngine::t_in_w() const
{
    checks::RationalMap map{s_, w_, {}};
    for (const auto& [v, value] : t_in_w_) {
        map.images.emplace(v, ring::to_rational(value));
    }
    return map;
}

checks::RationalMap TodaEngine::w_in_t()
{
    checks::RationalMap map{w_, s_, {}};
    for (int t = 0; t <= 1; ++t) {
        for (Point n : layer_points(t)) {
            map.images.emplace(w_->index(var_name("tau", t, n)), RationalFunction(tau(t, n)));
        }
    }
    for (int s = 1; s <= 2; ++s) {
        for (Point n : diamond(radius_, s % 2 == 1 ? 0 : 1)) {
            if (in_layer(s - 1, n) && in_layer(s + 1, n) && in_layer(s, n - e2) && in_layer(s, n + e2)) {
                map.images.emplace(w_->index(var_name("U", s, n)), u_from_tau(s, n));
            }
        }
    }
    return map;
}

const LocalizedPolynomial& TodaEngine::sigma_tilde(int t, Point n)
{
    if (t < 2) {
        throw std::invalid_argument("sigma tilde is computed for t >= 2");
    }
    auto key = std::make_pair(t, n);
    if (auto it = sigma_.find(key); it != sigma_.end()) {
        return it->second;
    }
    LocalizedPolynomial image = ring::substitute_units(tau(t, n), t_in_w_, ubasis_);
    const LaurentPolynomial& core = image.core();
    if (core.is_zero()) {
        throw LaurentViolation("sigma:" + std::to_string(t) + ":" + std::to_string(n.dn) + ":" + std::to_string(n.dm),
                               core);
    }
    auto tau_part = [&](const Monomial& mono) {
        std::vector<ring::VarPower> pw;
        for (const auto& vp : mono.powers()) {
            if (vp.var < w_tau_count_) {
                pw.push_back(vp);
            }
        }
        return Monomial::from_sorted_powers(pw);
    };
    Monomial pre = tau_part(core.leading_term().mono);
    for (const auto& term : core.terms()) {
        if (!(tau_part(term.mono) == pre)) {
            throw LaurentViolation(
                "sigma:" + std::to_string(t) + ":" + std::to_string(n.dn) + ":" + std::to_string(n.dm), core);
        }
    }
    LocalizedPolynomial sigma =
        LocalizedPolynomial::from_parts(ubasis_, core.mul_monomial(pre.inverse()), image.exponents());
    return sigma_.emplace(key, std::move(sigma)).first->second;
}

RationalFunction TodaEngine::sigma_tilde_rational(int t, Point n)
{
    if (t < 2) {
        return RationalFunction(LaurentPolynomial(w_, 1));
    }
    return ring::to_rational(sigma_tilde(t, n));
}

RationalFunction TodaEngine::u_from_sigma(int t, Point n)
{
    if (t < 1) {
        throw std::invalid_argument("U_{t,n} is defined for t >= 1");
    }
    const auto& p = params_;
    auto S = [&](int s, Point r) {
        return s < 2 ? LocalizedPolynomial(ubasis_, LaurentPolynomial(w_, 1)) : sigma_tilde(s, r);
    };
    LocalizedPolynomial num = S(t + 1, n) * S(t - 1, n);
    LocalizedPolynomial den = S(t, n - e2).pow(p.k1) * S(t, n + e2).pow(p.k2);
    return ring::to_rational(num) / ring::to_rational(den);
}

std::optional<LaurentPolynomial> TodaEngine::translate(const LaurentPolynomial& p, Point shift) const
{
    if (shift.dn % 2 != 0 || shift.dm % 2 != 0) {
        throw std::invalid_argument("a translation must preserve parity");
    }
    std::vector<VarIndex> map(s_->arity());
    for (VarIndex v = 0; v < s_->arity(); ++v) {
        const std::string& name = s_->name(v);
        auto c1 = name.find(':');
        auto c2 = name.find(':', c1 + 1);
        auto c3 = name.find(':', c2 + 1);
        Point n{std::stoi(name.substr(c2 + 1, c3 - c2 - 1)), std::stoi(name.substr(c3 + 1))};
        std::string moved =
            name.substr(0, c1) + ":" + std::string(name.substr(c1 + 1, c2 - c1 - 1)) + ":" +
            std::to_string(n.dn + shift.dn) + ":" + std::to_string(n.dm + shift.dm);
        auto it = s_index_.find(moved);
        map[v] = it == s_index_.end() ? std::numeric_limits<VarIndex>::max() : it->second;
    }
    for (VarIndex v : p.variables()) {
        if (map[v] == std::numeric_limits<VarIndex>::max()) {
            return std::nullopt;
        }
    }
    for (auto& v : map) {
        if (v == std::numeric_limits<VarIndex>::max()) {
            v = 0;
        }
    }
    return p.rebase(s_, map);
}

std::optional<std::pair<int, Point>> TodaEngine::oracle_mismatch_mod_p(int max_t, int points, std::uint64_t seed)
{
    namespace mp = ring::modp;
    const auto& p = params_;
    iterate(max_t);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, mp::kPrime - 1);
    const std::size_t arity = s_->arity();
    for (int done = 0; done < points;) {
        std::vector<std::uint64_t> point(arity);
        for (auto& x : point) {
            x = dist(rng);
        }
        auto gen = [&](const std::string& family, int t, Point n) { return point[s_index_.at(var_name(family, t, n))]; };
        // F layers from the F equation itself, on every point where the stencil fits.
        std::vector<std::map<Point, std::uint64_t>> f(static_cast<std::size_t>(std::max(max_t, 2)) + 1);
        for (int t = 0; t <= 1; ++t) {
            for (Point n : diamond(radius_, t)) {
                f[t].emplace(n, gen("F", t, n));
            }
        }
        for (int t = 2; t < static_cast<int>(f.size()); ++t) {
            for (Point n : diamond(radius_, t % 2)) {
                auto a = f[t - 1].find(n - e2);
                auto b = f[t - 1].find(n + e2);
                auto c = f[t - 2].find(n);
                if (a != f[t - 1].end() && b != f[t - 1].end() && c != f[t - 2].end()) {
                    f[t].emplace(n, mp::mul(mp::mul(mp::pow(a->second, p.k1), mp::pow(b->second, p.k2)),
                                            mp::inv(c->second)));
                }
            }
        }
        bool degenerate = false;
        auto step = [&](Point n, const std::map<Point, std::uint64_t>& near, std::uint64_t fv, std::uint64_t div) {
            if (div == 0) {
                degenerate = true;
                return std::uint64_t{0};
            }
            std::uint64_t num = mp::add(mp::mul(mp::pow(near.at(n - e2), p.k1), mp::pow(near.at(n + e2), p.k2)),
                                        mp::mul(fv, mp::mul(mp::pow(near.at(n - e1), p.l1), mp::pow(near.at(n + e1), p.l2))));
            return mp::mul(num, mp::inv(div));
        };
        std::map<Point, std::uint64_t> t2;
        std::map<Point, std::uint64_t> t3;
        for (Point n : layer_points(2)) {
            t2.emplace(n, gen("tau", 2, n));
        }
        for (Point n : layer_points(3)) {
            t3.emplace(n, gen("tau", 3, n));
        }
        std::map<Point, std::uint64_t> t1;
        for (Point n : layer_points(1)) {
            t1.emplace(n, step(n, t2, f[1].at(n), t3.at(n)));
        }
        std::map<Point, std::uint64_t> t0;
        for (Point n : layer_points(0)) {
            t0.emplace(n, step(n, t1, f[0].at(n), t2.at(n)));
        }
        std::vector<std::map<Point, std::uint64_t>> all{t0, t1, t2, t3};
        for (int t = 4; t <= max_t; ++t) {
            std::map<Point, std::uint64_t> layer;
            for (Point n : layer_points(t)) {
                layer.emplace(n, step(n, all[t - 1], f[t - 2].at(n), all[t - 2].at(n)));
            }
            all.push_back(std::move(layer));
        }
        if (degenerate) {
            continue;
        }
        for (int t = 0; t <= max_t; ++t) {
            for (const auto& [n, want] : all[t]) {
                if (mp::evaluate(tau(t, n), point) != want) {
                    return std::make_pair(t, n);
                }
            }
        }
        ++done;
    }
    return std::nullopt;
}

VerificationRecord verify_u_equation(TodaEngine& engine, int t, Point n)
{
    const std::string subject = "U:" + std::to_string(t) + ":" + std::to_string(n.dn) + ":" + std::to_string(n.dm);
    return checks::timed([&] {
        if (t < 2 || !has_parity(n, t)) {
            throw std::invalid_argument("the U equation is stated at t >= 2 with n of parity t");
        }
        const auto& p = engine.params();
        const RationalFunction one(LaurentPolynomial(engine.s_table(), 1));
        auto U = [&](int s, Point r) { return engine.u_from_tau(s, r); };
        RationalFunction lhs = (U(t + 1, n) - one) * (U(t - 1, n) - one) * U(t, n - e2).pow(p.k1) * U(t, n + e2).pow(p.k2);
        RationalFunction rhs = (U(t, n - e2) - one).pow(p.k1) * (U(t, n + e2) - one).pow(p.k2) * U(t, n - e1).pow(p.l1) *
                               U(t, n + e1).pow(p.l2);
        if (lhs == rhs) {
            return VerificationRecord::passed("u-equation", subject);
        }
        auto text = [](const RationalFunction& f) {
            return "(" + ring::to_string(f.numerator()) + ") / (" + ring::to_string(f.denominator()) + ")";
        };
        return VerificationRecord::failed("u-equation", subject, "lhs = " + text(lhs) + "; rhs = " + text(rhs));
    });
}

Divisibility divisibility_parts(const TodaParams& p, int t, Point n, const ValueFn& tau, const ValueFn& f)
{
    if (t < 4) {
        throw std::invalid_argument("the divisibility identity needs t >= 4");
    }
    auto divide = [&](const LaurentPolynomial& a, const LaurentPolynomial& b, const std::string& what) {
        try {
            return ring::exact_div(a, b);
        } catch (const ring::NotDivisible& e) {
            throw LaurentViolation(what, e.remainder());
        }
    };
    auto T = [&](int s, Point r) { return tau(s, r); };
    const LaurentPolynomial c = T(t - 1, n);
    const LaurentPolynomial A1 = f(t - 2, n - e2) * T(t - 1, n - e1 - e2).pow(p.l1) * T(t - 1, n + e1 - e2).pow(p.l2);
    const LaurentPolynomial A2 = f(t - 2, n + e2) * T(t - 1, n - e1 + e2).pow(p.l1) * T(t - 1, n + e1 + e2).pow(p.l2);
    const LaurentPolynomial A3 = T(t - 1, n - e1 - e2).pow(p.k1) * T(t - 1, n - e1 + e2).pow(p.k2);
    const LaurentPolynomial A4 = T(t - 1, n + e1 - e2).pow(p.k1) * T(t - 1, n + e1 + e2).pow(p.k2);
    auto pj = [&](Point r, const LaurentPolynomial& A, int e, const char* name) {
        return divide((T(t, r) * T(t - 2, r)).pow(e) - A.pow(e), c, name);
    };
    const LaurentPolynomial p1 = pj(n - e2, A1, p.k1, "p1");
    const LaurentPolynomial p2 = pj(n + e2, A2, p.k2, "p2");
    const LaurentPolynomial p3 = pj(n - e1, A3, p.l1, "p3");
    const LaurentPolynomial p4 = pj(n + e1, A4, p.l2, "p4");
    const LaurentPolynomial T12 = T(t - 2, n - e2).pow(p.k1) * T(t - 2, n + e2).pow(p.k2);
    const LaurentPolynomial T34 = T(t - 2, n - e1).pow(p.l1) * T(t - 2, n + e1).pow(p.l2);
    const LaurentPolynomial Ft = f(t - 1, n);
    const LaurentPolynomial M = A3.pow(p.l1) * A4.pow(p.l2);
    const LaurentPolynomial A1k = A1.pow(p.k1);
    const LaurentPolynomial A2k = A2.pow(p.k2);
    const LaurentPolynomial A3l = A3.pow(p.l1);
    const LaurentPolynomial A4l = A4.pow(p.l2);
    LaurentPolynomial collapse = A1k * A2k * T34 + Ft * A3l * A4l * T12 - M * Ft * c * T(t - 3, n);
    LaurentPolynomial R = (p1 * A2k + A1k * p2 + c * p1 * p2) * T34 + Ft * (p3 * A4l + A3l * p4 + c * p3 * p4) * T12;
    LaurentPolynomial P = M * Ft * T(t - 3, n) + R;
    return {std::move(P), T12 * T34, std::move(collapse)};
}

Specialization::Specialization(TodaEngine& engine) : engine_(engine)
{
    std::vector<std::string> names;
    const int r = engine.radius();
    for (int dn = -2 * r; dn <= 2 * r; dn += 1) {
        for (int dm = -2 * r; dm <= 2 * r; dm += 1) {
            Point n{dn, dm};
            if (n.norm() <= 2 * r && has_parity(n, 0)) {
                index_.emplace(n, static_cast<VarIndex>(names.size()));
                names.push_back("t:" + std::to_string(dn) + ":" + std::to_string(dm));
            }
        }
    }
    table_ = ring::VariableTable::make(std::move(names));
    const auto& s = engine.s_table();
    f0_to_t_.resize(s->arity());
    for (const auto& [n, v] : index_) {
        f0_to_t_[s->index(var_name("F", 0, n))] = v;
    }
}

LaurentPolynomial Specialization::t(Point n, std::int32_t exp) const
{
    auto it = index_.find(n);
    if (it == index_.end()) {
        throw std::out_of_range("t_" + point_text(n) + " is outside the window");
    }
    return LaurentPolynomial::variable(table_, it->second, exp);
}

LaurentPolynomial Specialization::apply(const LaurentPolynomial& p) const
{
    std::vector<ring::Term> terms;
    terms.reserve(p.size());
    for (const auto& term : p.terms()) {
        std::vector<ring::VarPower> pw;
        for (const auto& vp : term.mono.powers()) {
            if (auto v = f0_to_t_[vp.var]) {
                pw.push_back({*v, -vp.exp});
            }
        }
        terms.push_back({Monomial::from_powers(std::move(pw)), term.coeff});
    }
    return LaurentPolynomial::from_terms(table_, std::move(terms));
}

LaurentPolynomial Specialization::tau(int t, Point n)
{
    return apply(engine_.tau(t, n));
}

LaurentPolynomial Specialization::f(int t, Point n)
{
    return apply(engine_.f_closed(t, n));
}

mpq_class Specialization::value(const LaurentPolynomial& p, const std::map<Point, mpq_class>& values,
                                const mpq_class& rest) const
{
    std::vector<mpq_class> point(table_->arity(), rest);
    for (const auto& [n, v] : values) {
        point[index_.at(n)] = v;
    }
    return ring::evaluate(p, point);
}

mpz_class p6_closed_form(const TodaParams& p)
{
    auto two = [](long e) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
        return r;
    };
    const long k1 = p.k1;
    const long k2 = p.k2;
    const long l1 = p.l1;
    const long l2 = p.l2;
    mpz_class v = -two((k1 + k2) * (l1 + l2));
    if (k1 == 1) {
        v -= k2 * two(k2 * (l1 + l2 + 1));
    }
    if (k2 == 1) {
        v -= k1 * two(k1 * (l1 + l2 + 1));
    }
    if (l1 == 1) {
        v -= l2 * two(l2 * (k1 + k2 + 1));
    }
    if (l2 == 1) {
        v -= l1 * two(l1 * (k1 + k2 + 1));
    }
    return v;
}

mpz_class p6_direct(TodaEngine& engine)
{
    Specialization sp(engine);
    Divisibility d = divisibility_parts(
        engine.params(), 5, Point{0, 0}, [&](int t, Point n) { return sp.tau(t, n); },
        [&](int t, Point n) { return sp.f(t, n); });
    mpq_class v = sp.value(d.p, {{Point{0, 0}, mpq_class(-1)}}, 1);
    mpq_class dv = sp.value(d.divisor, {{Point{0, 0}, mpq_class(-1)}}, 1);
    if (dv != 1 || v.get_den() != 1) {
        throw std::logic_error("specialized divisor is not 1");
    }
    return v.get_num();
}

} // namespace laurentlab::toda
