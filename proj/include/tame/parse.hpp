#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "tame/fnelem.hpp"
#include "tame/milnor.hpp"

namespace tame {

/// Field descriptors: `q` (rationals), `fp:5`, `fq:3:t^2+1`.
FieldPtr parse_field(const std::string& text);

namespace parsedetail {

struct Token {
    enum class Kind { number, var, op, lparen, rparen, end } kind;
    std::string text;
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Kind::number, s.substr(i, j - i)});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            out.push_back({Token::Kind::var, std::string(1, c)});
            ++i;
            continue;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                out.push_back({Token::Kind::op, std::string(1, c)});
                break;
            case '(': out.push_back({Token::Kind::lparen, "("}); break;
            case ')': out.push_back({Token::Kind::rparen, ")"}); break;
            default:
                throw std::invalid_argument(std::string("parse: unexpected character '") + c + "'");
        }
        ++i;
    }
    out.push_back({Token::Kind::end, ""});
    return out;
}

/// Rational-expression evaluator over the plane; univariate inputs map their
/// variable onto the X slot.
struct Rat {
    BiPoly num, den;

    static Rat constant(const FieldElem& c) {
        return {BiPoly::constant(c), BiPoly::constant(FieldElem::one(c.field()))};
    }
    Rat operator+(const Rat& o) const { return reduce({num * o.den + o.num * den, den * o.den}); }
    Rat operator-(const Rat& o) const { return reduce({num * o.den - o.num * den, den * o.den}); }
    Rat operator*(const Rat& o) const { return reduce({num * o.num, den * o.den}); }
    Rat operator/(const Rat& o) const {
        if (o.num.is_zero()) throw std::invalid_argument("parse: division by zero");
        return reduce({num * o.den, den * o.num});
    }
    Rat pow(long long e) const {
        if (e >= 0) return {num.pow(e), den.pow(e)};
        if (num.is_zero()) throw std::invalid_argument("parse: division by zero");
        return {den.pow(-e), num.pow(-e)};
    }
    static Rat reduce(Rat r) { return r; }
};

class Parser {
  public:
    Parser(const std::string& s, FieldPtr F, bool bivariate, char uni_var)
        : toks_(lex(s)), field_(std::move(F)), bi_(bivariate), uni_var_(uni_var) {}

    Rat parse() {
        Rat r = expr();
        if (cur().kind != Token::Kind::end) throw std::invalid_argument("parse: trailing input");
        return r;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    FieldPtr field_;
    bool bi_;
    char uni_var_;

    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }
    bool eat_op(const std::string& o) {
        if (cur().kind == Token::Kind::op && cur().text == o) { advance(); return true; }
        return false;
    }

    Rat expr() {
        Rat r = eat_op("-") ? Rat::constant(-FieldElem::one(field_)) * term() : term();
        for (;;) {
            if (eat_op("+")) r = r + term();
            else if (eat_op("-")) r = r - term();
            else return r;
        }
    }
    Rat term() {
        Rat r = power();
        for (;;) {
            if (eat_op("*")) r = r * power();
            else if (eat_op("/")) r = r / power();
            else if (cur().kind == Token::Kind::var || cur().kind == Token::Kind::lparen)
                r = r * power();  // juxtaposition: 2t, 3(t+1)
            else return r;
        }
    }
    Rat power() {
        Rat b = atom();
        if (eat_op("^")) {
            bool neg = eat_op("-");
            if (cur().kind != Token::Kind::number)
                throw std::invalid_argument("parse: exponent must be an integer");
            long long e = std::stoll(cur().text);
            advance();
            return b.pow(neg ? -e : e);
        }
        return b;
    }
    Rat atom() {
        if (cur().kind == Token::Kind::number) {
            FieldElem c(field_, std::stoll(cur().text));
            advance();
            return Rat::constant(c);
        }
        if (cur().kind == Token::Kind::var) {
            char v = cur().text[0];
            advance();
            if (bi_) {
                if (v == 'X') return {BiPoly::X(field_), BiPoly::constant(FieldElem::one(field_))};
                if (v == 'Y') return {BiPoly::Y(field_), BiPoly::constant(FieldElem::one(field_))};
                throw std::invalid_argument(std::string("parse: unknown plane variable '") + v + "'");
            }
            if (v != uni_var_)
                throw std::invalid_argument(std::string("parse: unknown variable '") + v + "'");
            return {BiPoly::X(field_), BiPoly::constant(FieldElem::one(field_))};
        }
        if (cur().kind == Token::Kind::lparen) {
            advance();
            Rat r = expr();
            if (cur().kind != Token::Kind::rparen) throw std::invalid_argument("parse: missing ')'");
            advance();
            return r;
        }
        if (eat_op("-")) return Rat::constant(-FieldElem::one(field_)) * atom();
        throw std::invalid_argument("parse: unexpected token");
    }
};

inline UniPoly to_unipoly(const BiPoly& b, const FieldPtr& F) {
    if (b.deg_y() > 0) throw std::logic_error("parse: stray Y in a univariate context");
    std::vector<FieldElem> c(b.deg_x() + 1, FieldElem::zero(F));
    for (auto& [k, v] : b.terms()) c[k.first] = v;
    return UniPoly(F, std::move(c));
}

}  // namespace parsedetail

inline FieldPtr parse_field(const std::string& text) {
    if (text == "q" || text == "Q") return ConstField::rationals();
    if (text.rfind("fp:", 0) == 0) return ConstField::prime(std::stoll(text.substr(3)));
    if (text.rfind("fq:", 0) == 0) {
        size_t second = text.find(':', 3);
        if (second == std::string::npos)
            throw std::invalid_argument("parse_field: expected fq:<p>:<modulus>");
        long long p = std::stoll(text.substr(3, second - 3));
        FieldPtr Fp = ConstField::prime(p);
        parsedetail::Parser pr(text.substr(second + 1), Fp, false, 't');
        auto r = pr.parse();
        if (!r.den.is_constant()) throw std::invalid_argument("parse_field: modulus must be a polynomial");
        UniPoly m = parsedetail::to_unipoly(r.num, Fp);
        m = m * UniPoly::constant(r.den.lead_coeff().inverse());
        std::vector<long long> coeffs;
        for (int i = 0; i <= m.degree(); ++i) coeffs.push_back(m.coeff(i).prime_value());
        return ConstField::extension(p, coeffs);
    }
    throw std::invalid_argument("parse_field: unknown descriptor '" + text + "'");
}

/// Univariate rational function in `var` (default t) over the field.
inline Fact1 parse_ratfunc(const std::string& text, const FieldPtr& F, char var = 't') {
    parsedetail::Parser p(text, F, false, var);
    auto r = p.parse();
    if (r.num.is_zero()) throw std::invalid_argument("parse: the zero function is not a unit");
    return Fact1::from_parts(parsedetail::to_unipoly(r.num, F), parsedetail::to_unipoly(r.den, F), var);
}

/// Univariate polynomial (used for place moduli).
inline UniPoly parse_poly(const std::string& text, const FieldPtr& F, char var = 't') {
    parsedetail::Parser p(text, F, false, var);
    auto r = p.parse();
    if (!r.den.is_constant()) throw std::invalid_argument("parse: expected a polynomial");
    UniPoly n = parsedetail::to_unipoly(r.num, F);
    return n * UniPoly::constant(r.den.lead_coeff().inverse());
}

/// Plane rational function in X, Y over the field.
inline Fact2 parse_plane(const std::string& text, const FieldPtr& F) {
    parsedetail::Parser p(text, F, true, 0);
    auto r = p.parse();
    if (r.num.is_zero()) throw std::invalid_argument("parse: the zero function is not a unit");
    return Fact2::from_parts(r.num, r.den);
}

inline BiPoly parse_plane_poly(const std::string& text, const FieldPtr& F) {
    parsedetail::Parser p(text, F, true, 0);
    auto r = p.parse();
    if (!r.den.is_constant()) throw std::invalid_argument("parse: expected a polynomial");
    return r.num.scale(r.den.lead_coeff().inverse());
}

/// Symbol text: formal sums of brace tuples, e.g. `2*{a,b} - {c,d}` or `3`.
/// Entries are parsed as plane functions when `plane` is set, as univariate
/// functions in `var` otherwise.
inline MilnorSymbol parse_symbol(const std::string& text, const FieldPtr& F, bool plane,
                                 char var = 't') {
    MilnorSymbol out;
    bool have_degree = false;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    bool first = true;
    long long pending_int = 0;
    bool pure_int = true;
    skip_ws();
    while (i < text.size()) {
        long long sign = 1;
        skip_ws();
        if (!first || text[i] == '+' || text[i] == '-') {
            if (i >= text.size()) break;
            if (text[i] == '+') { ++i; }
            else if (text[i] == '-') { sign = -1; ++i; }
            else if (!first) throw std::invalid_argument("parse_symbol: expected '+' or '-'");
        }
        first = false;
        skip_ws();
        long long coeff = sign;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            coeff = sign * std::stoll(text.substr(i, j - i));
            i = j;
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
            else if (i >= text.size() || text[i] != '{') {
                // a bare integer: a degree-0 symbol term
                pending_int += coeff;
                continue;
            }
        }
        if (i >= text.size() || text[i] != '{')
            throw std::invalid_argument("parse_symbol: expected '{'");
        size_t close = text.find('}', i);
        if (close == std::string::npos) throw std::invalid_argument("parse_symbol: missing '}'");
        std::string inner = text.substr(i + 1, close - i - 1);
        i = close + 1;
        pure_int = false;
        std::vector<FnElem> entries;
        size_t start = 0;
        while (start <= inner.size()) {
            size_t comma = inner.find(',', start);
            std::string piece = inner.substr(start, comma == std::string::npos ? std::string::npos
                                                                               : comma - start);
            if (piece.find_first_not_of(" \t") == std::string::npos)
                throw std::invalid_argument("parse_symbol: empty entry");
            entries.push_back(plane ? FnElem(parse_plane(piece, F))
                                    : FnElem(parse_ratfunc(piece, F, var)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        MilnorSymbol term = MilnorSymbol::of(std::move(entries), coeff);
        if (!have_degree) { out = term; have_degree = true; }
        else out = out + term;
        skip_ws();
    }
    if (pure_int && !have_degree) return MilnorSymbol::integer(pending_int);
    if (pending_int != 0) throw std::invalid_argument("parse_symbol: mixed integer and tuple terms");
    return out;
}

}  // namespace tame
