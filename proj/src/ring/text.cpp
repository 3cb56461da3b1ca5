#include "laurentlab/ring/text.hpp"

#include <cctype>

namespace laurentlab::ring {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message), position_(position)
{
}

std::string to_string(const LaurentPolynomial& p)
{
    if (p.is_zero()) {
        return "0";
    }
    const auto& table = *p.table();
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        bool negative = t.coeff < 0;
        if (first) {
            if (negative) {
                out += '-';
            }
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        mpz_class mag = abs(t.coeff);
        bool wrote = false;
        if (mag != 1 || t.mono.is_one()) {
            out += mag.get_str();
            wrote = true;
        }
        for (const auto& vp : t.mono.powers()) {
            if (wrote) {
                out += '*';
            }
            out += table.name(vp.var);
            if (vp.exp != 1) {
                out += '^';
                out += std::to_string(vp.exp);
            }
            wrote = true;
        }
    }
    return out;
}

namespace {

class Parser {
public:
    Parser(const TablePtr& table, std::string_view text) : table_(table), text_(text) {}

    LaurentPolynomial run()
    {
        skip_blanks();
        if (pos_ == text_.size()) {
            throw ParseError(pos_, "empty input");
        }
        std::vector<Term> terms;
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
            skip_blanks();
        }
        terms.push_back(term(negative));
        while (true) {
            skip_blanks();
            if (pos_ == text_.size()) {
                break;
            }
            char c = peek();
            if (c != '+' && c != '-') {
                throw ParseError(pos_, std::string("expected '+' or '-', found '") + c + "'");
            }
            ++pos_;
            skip_blanks();
            terms.push_back(term(c == '-'));
        }
        return LaurentPolynomial::from_terms(table_, std::move(terms));
    }

private:
    const TablePtr& table_;
    std::string_view text_;
    std::size_t pos_ = 0;

    char peek() const { return text_[pos_]; }

    void skip_blanks()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

    std::string digits()
    {
        std::size_t start = pos_;
        while (at_digit()) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Term term(bool negative)
    {
        if (pos_ == text_.size()) {
            throw ParseError(pos_, "expected a term");
        }
        mpz_class coeff = 1;
        std::vector<VarPower> powers;
        bool need_factor = true;
        if (at_digit()) {
            coeff = mpz_class(digits());
            need_factor = false;
            skip_blanks();
            if (pos_ < text_.size() && peek() == '*') {
                ++pos_;
                skip_blanks();
                need_factor = true;
            }
        }
        while (need_factor) {
            powers.push_back(factor());
            skip_blanks();
            need_factor = pos_ < text_.size() && peek() == '*';
            if (need_factor) {
                ++pos_;
                skip_blanks();
            }
        }
        if (negative) {
            coeff = -coeff;
        }
        return {Monomial::from_powers(std::move(powers)), coeff};
    }

    VarPower factor()
    {
        std::size_t start = pos_;
        if (pos_ == text_.size() || !std::isalpha(static_cast<unsigned char>(peek()))) {
            throw ParseError(pos_, "expected a variable name");
        }
        while (pos_ < text_.size()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '^' || c == '+') {
                break;
            }
            ++pos_;
        }
        std::string_view name = text_.substr(start, pos_ - start);
        auto idx = table_->find(name);
        if (!idx) {
            throw ParseError(start, "unknown variable '" + std::string(name) + "'");
        }
        std::int64_t exp = 1;
        if (pos_ < text_.size() && peek() == '^') {
            ++pos_;
            bool neg = false;
            if (pos_ < text_.size() && peek() == '-') {
                neg = true;
                ++pos_;
            }
            std::size_t at = pos_;
            if (!at_digit()) {
                throw ParseError(pos_, "expected an integer exponent");
            }
            std::string d = digits();
            if (d.size() > 9) {
                throw ParseError(at, "exponent out of range");
            }
            exp = std::stoll(d);
            if (neg) {
                exp = -exp;
            }
        }
        return {*idx, static_cast<std::int32_t>(exp)};
    }
};

} // namespace

LaurentPolynomial parse_polynomial(const TablePtr& table, std::string_view text)
{
    return Parser(table, text).run();
}

} // namespace laurentlab::ring
