#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tame/field.hpp"

namespace tame {

/// Dense univariate polynomial over a ConstField, trailing zeros stripped.
class UniPoly {
  public:
    UniPoly() : field_(ConstField::rationals()) {}
    explicit UniPoly(FieldPtr f) : field_(std::move(f)) {}
    UniPoly(FieldPtr f, std::vector<FieldElem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

    static UniPoly zero(const FieldPtr& f) { return UniPoly(f); }
    static UniPoly constant(const FieldElem& e) {
        UniPoly r(e.field());
        if (!e.is_zero()) r.c_ = {e};
        return r;
    }
    static UniPoly monomial(const FieldPtr& f, int deg, const FieldElem& lead) {
        UniPoly r(f);
        if (lead.is_zero()) return r;
        r.c_.assign(deg + 1, FieldElem::zero(f));
        r.c_[deg] = lead;
        return r;
    }
    static UniPoly variable(const FieldPtr& f) { return monomial(f, 1, FieldElem::one(f)); }

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const FieldElem& operator[](size_t i) const { return c_[i]; }
    FieldElem coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem::zero(field_);
        return c_[i];
    }
    const FieldElem& lead() const {
        if (c_.empty()) throw std::domain_error("lead of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
    bool is_constant() const { return c_.size() <= 1; }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this * constant(lead().inverse());
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        a.same_field(b);
        UniPoly r(a.field_);
        r.c_.assign(std::max(a.c_.size(), b.c_.size()), FieldElem::zero(a.field_));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        r.trim();
        return r;
    }
    friend UniPoly operator-(const UniPoly& a) {
        UniPoly r = a;
        for (auto& e : r.c_) e = -e;
        return r;
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        a.same_field(b);
        if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
        UniPoly r(a.field_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldElem::zero(a.field_));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }

    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        a.same_field(b);
        if (b.is_zero()) throw std::domain_error("UniPoly: division by zero polynomial");
        UniPoly q(a.field_), r = a;
        FieldElem lcinv = b.lead().inverse();
        if (r.degree() >= b.degree())
            q.c_.assign(r.degree() - b.degree() + 1, FieldElem::zero(a.field_));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int off = r.degree() - b.degree();
            FieldElem f = r.lead() * lcinv;
            q.c_[off] = f;
            for (int i = 0; i <= b.degree(); ++i)
                r.c_[off + i] = r.c_[off + i] - f * b.c_[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

    /// Exact division; throws if the remainder is nonzero.
    static UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("UniPoly: non-exact division");
        return q;
    }

    UniPoly pow(long long e) const {
        if (e < 0) throw std::domain_error("UniPoly: negative exponent");
        UniPoly r = constant(FieldElem::one(field_)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    UniPoly derivative() const {
        UniPoly r(field_);
        if (c_.size() <= 1) return r;
        r.c_.assign(c_.size() - 1, FieldElem::zero(field_));
        for (size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = c_[i] * FieldElem(field_, static_cast<long long>(i));
        r.trim();
        return r;
    }

    FieldElem eval(const FieldElem& x) const {
        FieldElem r = FieldElem::zero(field_);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return *a.field_ == *b.field_ && a.c_ == b.c_;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }
    /// Lexicographic-by-degree-then-coefficients order, for deterministic factor lists.
    friend bool operator<(const UniPoly& a, const UniPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (size_t i = a.c_.size(); i-- > 0;) {
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        }
        return false;
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            std::string cs = c_[i].to_string();
            std::string term;
            if (i == 0) term = cs;
            else {
                if (!c_[i].is_one()) {
                    bool simple = cs.find('+') == std::string::npos && cs.find('u') == std::string::npos;
                    term = (simple ? cs : "(" + cs + ")") + "*";
                }
                term += var;
                if (i > 1) term += "^" + std::to_string(i);
            }
            if (s.empty()) s = term;
            else if (!term.empty() && term[0] == '-') s += term;
            else s += "+" + term;
        }
        return s;
    }

  private:
    FieldPtr field_;
    std::vector<FieldElem> c_;

    void trim() { while (!c_.empty() && c_.back().is_zero()) c_.pop_back(); }
    void same_field(const UniPoly& o) const {
        if (*field_ != *o.field_) throw std::invalid_argument("UniPoly: mismatched parent fields");
    }
};

/// Monic greatest common divisor; gcd(0,0) = 0.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    if (*a.field() != *b.field()) throw std::invalid_argument("poly_gcd: mismatched parent fields");
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// Sylvester resultant, computed by the Euclidean recursion
///   Res(a,b) = lc(b)^(deg a - deg r) * (-1)^(deg a * deg b) * Res(b, r).
inline FieldElem resultant(UniPoly a, UniPoly b) {
    if (*a.field() != *b.field()) throw std::invalid_argument("resultant: mismatched parent fields");
    const FieldPtr& F = a.field();
    if (a.is_zero() && b.is_zero()) throw std::domain_error("resultant: both arguments zero");
    if (a.is_zero() || b.is_zero()) return FieldElem::zero(F);
    FieldElem acc = FieldElem::one(F);
    while (b.degree() > 0) {
        UniPoly r = a % b;
        if (r.is_zero()) {
            if (b.degree() > 0) return FieldElem::zero(F);
            break;
        }
        acc = acc * b.lead().pow(a.degree() - r.degree());
        if ((a.degree() % 2) && (b.degree() % 2)) acc = -acc;
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant now
    return acc * b.coeff(0).pow(a.degree());
}

/// Field norm E -> F_p for E = F_p[u]/(f), computed as Res(f, g)/lc(f)^deg(g)
/// where g is the polynomial representative of the element.
inline FieldElem norm_to_prime(const FieldElem& e) {
    const FieldPtr& E = e.field();
    if (E->kind() != ConstField::Kind::extension)
        throw std::invalid_argument("norm_to_prime: element is not in an extension field");
    FieldPtr Fp = ConstField::prime(E->p());
    if (e.is_zero()) return FieldElem::zero(Fp);
    std::vector<FieldElem> mod_coeffs, g_coeffs;
    for (long long c : E->modulus()) mod_coeffs.emplace_back(Fp, c);
    for (long long c : e.coeffs()) g_coeffs.emplace_back(Fp, c);
    UniPoly f(Fp, std::move(mod_coeffs));
    UniPoly g(Fp, std::move(g_coeffs));
    // f is monic, so the lc(f)^deg(g) correction is trivial; kept for clarity
    return resultant(f, g) / f.lead().pow(g.degree());
}

}  // namespace tame
