#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tame/bipoly.hpp"
#include "tame/factor.hpp"

namespace tame {

/// Nonzero rational function of one variable in factored form:
///   c * prod base_i ^ e_i,  bases monic non-constant, pairwise distinct.
/// Over a finite constant field the bases are kept fully factored into
/// irreducibles; over Q they are squarefree and pairwise coprime (Yun), with
/// irreducibility of caller-supplied factors asserted, not proven.
class Fact1 {
  public:
    Fact1() = default;
    explicit Fact1(FieldElem c, char var = 't') : c_(std::move(c)), var_(var) {
        if (c_.is_zero()) throw std::domain_error("Fact1: zero element");
    }

    static Fact1 one(const FieldPtr& F, char var = 't') { return Fact1(FieldElem::one(F), var); }
    static Fact1 variable(const FieldPtr& F, char var = 't') {
        Fact1 r(FieldElem::one(F), var);
        r.b_.emplace_back(UniPoly::variable(F), 1);
        return r;
    }

    static Fact1 from_poly(const UniPoly& f, char var = 't') {
        return from_parts(f, UniPoly::constant(FieldElem::one(f.field())), var);
    }

    static Fact1 from_parts(const UniPoly& num, const UniPoly& den, char var = 't') {
        if (num.is_zero()) throw std::domain_error("Fact1: zero element");
        if (den.is_zero()) throw std::domain_error("Fact1: zero denominator");
        const FieldPtr& F = num.field();
        UniPoly g = poly_gcd(num, den);
        UniPoly n = UniPoly::exact_div(num, g), d = UniPoly::exact_div(den, g);
        Fact1 r(n.lead() / d.lead(), var);
        r.absorb(n.monic(), 1);
        r.absorb(d.monic(), -1);
        return r;
    }

    const FieldPtr& field() const { return c_.field(); }
    const FieldElem& unit() const { return c_; }
    const std::vector<std::pair<UniPoly, int>>& bases() const { return b_; }
    char var() const { return var_; }
    bool is_constant() const { return b_.empty(); }
    bool is_one() const { return b_.empty() && c_.is_one(); }

    std::pair<UniPoly, UniPoly> expand() const {
        UniPoly n = UniPoly::constant(c_);
        UniPoly d = UniPoly::constant(FieldElem::one(field()));
        for (auto& [base, e] : b_) {
            if (e > 0) n = n * base.pow(e);
            else d = d * base.pow(-e);
        }
        return {n, d};
    }

    friend Fact1 operator*(const Fact1& a, const Fact1& b) {
        Fact1 r(a.c_ * b.c_, a.var_);
        r.b_ = a.b_;
        for (auto& [base, e] : b.b_) r.push(base, e);
        r.tidy();
        return r;
    }
    Fact1 inverse() const {
        Fact1 r(c_.inverse(), var_);
        r.b_ = b_;
        for (auto& [base, e] : r.b_) e = -e;
        return r;
    }
    Fact1 pow(long long e) const {
        if (e == 0) return one(field(), var_);
        Fact1 r(c_.pow(e), var_);
        r.b_ = b_;
        for (auto& [base, x] : r.b_) x = static_cast<int>(x * e);
        r.tidy();
        return r;
    }
    Fact1 scale(const FieldElem& s) const {
        Fact1 r = *this;
        r.c_ = r.c_ * s;
        if (r.c_.is_zero()) throw std::domain_error("Fact1: zero element");
        return r;
    }

    /// Sum as a rational function; the result is re-factored from scratch.
    friend Fact1 add(const Fact1& a, const Fact1& b) {
        auto [an, ad] = a.expand();
        auto [bn, bd] = b.expand();
        return from_parts(an * bd + bn * ad, ad * bd, a.var_);
    }

    friend bool operator==(const Fact1& a, const Fact1& b) {
        auto [an, ad] = a.expand();
        auto [bn, bd] = b.expand();
        return an * bd == bn * ad;
    }
    friend bool operator!=(const Fact1& a, const Fact1& b) { return !(a == b); }

    int degree() const {  // deg num - deg den
        int d = 0;
        for (auto& [base, e] : b_) d += e * base.degree();
        return d;
    }

    std::string to_string() const {
        std::string v(1, var_);
        if (b_.empty()) return c_.to_string();
        std::string s;
        if (!c_.is_one()) s = c_.to_string() + "*";
        bool first = true;
        for (auto& [base, e] : b_) {
            if (!first) s += "*";
            first = false;
            std::string bs = base.to_string(v);
            bool atom = base.degree() == 1 && base.coeff(0).is_zero() && base.lead().is_one();
            s += atom ? bs : "(" + bs + ")";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

  private:
    FieldElem c_ = FieldElem::one(ConstField::rationals());
    std::vector<std::pair<UniPoly, int>> b_;
    char var_ = 't';

    void push(const UniPoly& base, int e) {
        if (e == 0) return;
        for (auto& [p, x] : b_)
            if (p == base) { x += e; return; }
        b_.emplace_back(base, e);
    }

    void tidy() {
        std::erase_if(b_, [](const auto& pr) { return pr.second == 0; });
        std::sort(b_.begin(), b_.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }

    // split a monic polynomial into bases and push with exponent sign
    void absorb(const UniPoly& f, int sign) {
        if (f.degree() < 1) return;
        if (field()->is_finite()) {
            for (auto& [g, m] : factor_finite(f)) push(g, sign * m);
        } else {
            // Yun squarefree split (f is monic, char 0)
            UniPoly g = poly_gcd(f, f.derivative());
            UniPoly w = UniPoly::exact_div(f, g);
            UniPoly y = UniPoly::exact_div(f.derivative(), g);
            UniPoly z = y - w.derivative();
            int mult = 1;
            while (w.degree() > 0) {
                UniPoly p = poly_gcd(w, z);
                if (p.degree() > 0) push(p, sign * mult);
                w = UniPoly::exact_div(w, p);
                y = UniPoly::exact_div(z, p);
                z = y - w.derivative();
                ++mult;
            }
        }
        tidy();
    }
};

/// Nonzero rational function on the plane in factored form:
///   c * X^ex * Y^ey * prod base_i ^ e_i,
/// bases normalized (no X or Y factor, leading coefficient 1), non-constant.
class Fact2 {
  public:
    Fact2() = default;
    explicit Fact2(FieldElem c, long long ex = 0, long long ey = 0)
        : c_(std::move(c)), ex_(ex), ey_(ey) {
        if (c_.is_zero()) throw std::domain_error("Fact2: zero element");
    }

    static Fact2 one(const FieldPtr& F) { return Fact2(FieldElem::one(F)); }
    static Fact2 monomial(const FieldPtr& F, long long ex, long long ey,
                          FieldElem c = FieldElem()) {
        if (c.field()->is_rationals() && !F->is_rationals()) c = FieldElem::one(F);
        if (c.is_zero()) c = FieldElem::one(F);
        return Fact2(c, ex, ey);
    }

    static Fact2 from_poly(const BiPoly& f) {
        return from_parts(f, BiPoly::constant(FieldElem::one(f.field())));
    }
    static Fact2 from_parts(const BiPoly& num, const BiPoly& den) {
        if (num.is_zero()) throw std::domain_error("Fact2: zero element");
        if (den.is_zero()) throw std::domain_error("Fact2: zero denominator");
        Fact2 r(FieldElem::one(num.field()));
        r.absorb(num, 1);
        r.absorb(den, -1);
        return r;
    }

    const FieldPtr& field() const { return c_.field(); }
    const FieldElem& unit() const { return c_; }
    long long ex() const { return ex_; }
    long long ey() const { return ey_; }
    const std::vector<std::pair<BiPoly, int>>& bases() const { return b_; }
    bool is_monomial() const { return b_.empty(); }
    bool is_one() const { return b_.empty() && ex_ == 0 && ey_ == 0 && c_.is_one(); }

    std::pair<BiPoly, BiPoly> expand() const {
        const FieldPtr& F = field();
        BiPoly n = BiPoly::term(F, ex_ > 0 ? static_cast<int>(ex_) : 0,
                                ey_ > 0 ? static_cast<int>(ey_) : 0, c_);
        BiPoly d = BiPoly::term(F, ex_ < 0 ? static_cast<int>(-ex_) : 0,
                                ey_ < 0 ? static_cast<int>(-ey_) : 0, FieldElem::one(F));
        for (auto& [base, e] : b_) {
            if (e > 0) n = n * base.pow(e);
            else d = d * base.pow(-e);
        }
        return {n, d};
    }

    friend Fact2 operator*(const Fact2& a, const Fact2& b) {
        Fact2 r(a.c_ * b.c_, a.ex_ + b.ex_, a.ey_ + b.ey_);
        r.b_ = a.b_;
        for (auto& [base, e] : b.b_) r.push(base, e);
        r.tidy();
        return r;
    }
    Fact2 inverse() const {
        Fact2 r(c_.inverse(), -ex_, -ey_);
        r.b_ = b_;
        for (auto& [base, e] : r.b_) e = -e;
        return r;
    }
    Fact2 pow(long long e) const {
        if (e == 0) return one(field());
        Fact2 r(c_.pow(e), ex_ * e, ey_ * e);
        r.b_ = b_;
        for (auto& [base, x] : r.b_) x = static_cast<int>(x * e);
        r.tidy();
        return r;
    }
    Fact2 scale(const FieldElem& s) const {
        Fact2 r = *this;
        r.c_ = r.c_ * s;
        if (r.c_.is_zero()) throw std::domain_error("Fact2: zero element");
        return r;
    }

    friend Fact2 add(const Fact2& a, const Fact2& b) {
        auto [an, ad] = a.expand();
        auto [bn, bd] = b.expand();
        return from_parts(an * bd + bn * ad, ad * bd);
    }

    friend bool operator==(const Fact2& a, const Fact2& b) {
        auto [an, ad] = a.expand();
        auto [bn, bd] = b.expand();
        return an * bd == bn * ad;
    }
    friend bool operator!=(const Fact2& a, const Fact2& b) { return !(a == b); }

    std::string to_string() const {
        std::string s;
        if (!c_.is_one() || (ex_ == 0 && ey_ == 0 && b_.empty())) s = c_.to_string();
        auto app = [&s](const std::string& piece) {
            if (!s.empty()) s += "*";
            s += piece;
        };
        if (ex_ != 0) app(ex_ == 1 ? "X" : "X^" + std::to_string(ex_));
        if (ey_ != 0) app(ey_ == 1 ? "Y" : "Y^" + std::to_string(ey_));
        for (auto& [base, e] : b_) {
            app("(" + base.to_string() + ")" + (e == 1 ? "" : "^" + std::to_string(e)));
        }
        return s;
    }

  private:
    FieldElem c_ = FieldElem::one(ConstField::rationals());
    long long ex_ = 0, ey_ = 0;
    std::vector<std::pair<BiPoly, int>> b_;

    void push(const BiPoly& base, int e) {
        if (e == 0) return;
        for (auto& [p, x] : b_)
            if (p == base) { x += e; return; }
        b_.emplace_back(base, e);
    }
    void tidy() {
        std::erase_if(b_, [](const auto& pr) { return pr.second == 0; });
        std::sort(b_.begin(), b_.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    void absorb(const BiPoly& f, int sign) {
        int a = f.min_deg_x(), b = f.min_deg_y();
        BiPoly g = f.shift(a, b);
        ex_ += sign * a;
        ey_ += sign * b;
        if (g.is_constant()) {
            c_ = c_ * (sign > 0 ? g.lead_coeff() : g.lead_coeff().inverse());
            return;
        }
        FieldElem lc = g.lead_coeff();
        c_ = c_ * (sign > 0 ? lc : lc.inverse());
        push(g.scale(lc.inverse()), sign);
        tidy();
    }
};

/// An element of one of the function fields in play: a constant-field scalar,
/// a univariate rational function, or a plane rational function.
class FnElem {
  public:
    FnElem() : v_(FieldElem::one(ConstField::rationals())) {}
    FnElem(FieldElem e) : v_(std::move(e)) {
        if (scalar().is_zero()) throw std::domain_error("FnElem: zero element");
    }
    FnElem(Fact1 f) : v_(std::move(f)) {}
    FnElem(Fact2 f) : v_(std::move(f)) {}

    bool is_scalar() const { return std::holds_alternative<FieldElem>(v_); }
    bool is_uni() const { return std::holds_alternative<Fact1>(v_); }
    bool is_bi() const { return std::holds_alternative<Fact2>(v_); }
    const FieldElem& scalar() const { return std::get<FieldElem>(v_); }
    const Fact1& uni() const { return std::get<Fact1>(v_); }
    const Fact2& bi() const { return std::get<Fact2>(v_); }

    const FieldPtr& constants() const {
        if (is_scalar()) return scalar().field();
        if (is_uni()) return uni().field();
        return bi().field();
    }

    bool is_one() const {
        if (is_scalar()) return scalar().is_one();
        if (is_uni()) return uni().is_one();
        return bi().is_one();
    }

    Fact1 as_uni(char var = 't') const {
        if (is_uni()) return uni();
        if (is_scalar()) return Fact1(scalar(), var);
        throw std::invalid_argument("FnElem: plane function used as univariate");
    }
    Fact2 as_bi() const {
        if (is_bi()) return bi();
        if (is_scalar()) return Fact2(scalar());
        throw std::invalid_argument("FnElem: univariate function used on the plane");
    }

    friend FnElem operator*(const FnElem& a, const FnElem& b) {
        if (a.is_bi() || b.is_bi()) return FnElem(a.as_bi() * b.as_bi());
        if (a.is_uni() || b.is_uni()) {
            char var = a.is_uni() ? a.uni().var() : b.uni().var();
            return FnElem(a.as_uni(var) * b.as_uni(var));
        }
        return FnElem(a.scalar() * b.scalar());
    }
    FnElem inverse() const {
        if (is_scalar()) return FnElem(scalar().inverse());
        if (is_uni()) return FnElem(uni().inverse());
        return FnElem(bi().inverse());
    }
    FnElem pow(long long e) const {
        if (is_scalar()) return FnElem(scalar().pow(e));
        if (is_uni()) return FnElem(uni().pow(e));
        return FnElem(bi().pow(e));
    }

    friend bool operator==(const FnElem& a, const FnElem& b) {
        if (a.is_bi() || b.is_bi()) return a.as_bi() == b.as_bi();
        if (a.is_uni() || b.is_uni()) {
            char var = a.is_uni() ? a.uni().var() : b.uni().var();
            return a.as_uni(var) == b.as_uni(var);
        }
        return a.scalar() == b.scalar();
    }
    friend bool operator!=(const FnElem& a, const FnElem& b) { return !(a == b); }

    std::string to_string() const {
        if (is_scalar()) return scalar().to_string();
        if (is_uni()) return uni().to_string();
        return bi().to_string();
    }

  private:
    std::variant<FieldElem, Fact1, Fact2> v_;
};

}  // namespace tame
