#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tame/unipoly.hpp"

namespace tame {

/// Sparse bivariate polynomial in X, Y over a ConstField.
class BiPoly {
  public:
    using Key = std::pair<int, int>;  // (deg X, deg Y)

    BiPoly() : field_(ConstField::rationals()) {}
    explicit BiPoly(FieldPtr f) : field_(std::move(f)) {}

    static BiPoly constant(const FieldElem& e) {
        BiPoly r(e.field());
        if (!e.is_zero()) r.t_[{0, 0}] = e;
        return r;
    }
    static BiPoly term(const FieldPtr& F, int a, int b, const FieldElem& c) {
        BiPoly r(F);
        if (!c.is_zero()) r.t_[{a, b}] = c;
        return r;
    }
    static BiPoly X(const FieldPtr& F) { return term(F, 1, 0, FieldElem::one(F)); }
    static BiPoly Y(const FieldPtr& F) { return term(F, 0, 1, FieldElem::one(F)); }

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0}); }
    const std::map<Key, FieldElem>& terms() const { return t_; }

    int deg_x() const {
        int d = 0;
        for (auto& [k, v] : t_) d = std::max(d, k.first);
        return d;
    }
    int deg_y() const {
        int d = 0;
        for (auto& [k, v] : t_) d = std::max(d, k.second);
        return d;
    }

    /// Leading coefficient in lexicographic order with X > Y.
    FieldElem lead_coeff() const {
        if (t_.empty()) throw std::domain_error("lead_coeff of zero polynomial");
        Key best = t_.begin()->first;
        for (auto& [k, v] : t_)
            if (k.first > best.first || (k.first == best.first && k.second > best.second)) best = k;
        return t_.at(best);
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        a.same_field(b);
        BiPoly r = a;
        for (auto& [k, v] : b.t_) {
            auto it = r.t_.find(k);
            if (it == r.t_.end()) r.t_[k] = v;
            else {
                it->second = it->second + v;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
        return r;
    }
    friend BiPoly operator-(const BiPoly& a) {
        BiPoly r = a;
        for (auto& [k, v] : r.t_) v = -v;
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        a.same_field(b);
        BiPoly r(a.field_);
        for (auto& [ka, va] : a.t_)
            for (auto& [kb, vb] : b.t_) {
                Key k{ka.first + kb.first, ka.second + kb.second};
                FieldElem c = va * vb;
                auto it = r.t_.find(k);
                if (it == r.t_.end()) { if (!c.is_zero()) r.t_[k] = c; }
                else {
                    it->second = it->second + c;
                    if (it->second.is_zero()) r.t_.erase(it);
                }
            }
        return r;
    }
    BiPoly scale(const FieldElem& c) const {
        BiPoly r(field_);
        if (c.is_zero()) return r;
        for (auto& [k, v] : t_) r.t_[k] = v * c;
        return r;
    }

    BiPoly pow(long long e) const {
        if (e < 0) throw std::domain_error("BiPoly: negative exponent");
        BiPoly r = constant(FieldElem::one(field_)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    int min_deg_x() const {
        int d = t_.empty() ? 0 : 1 << 28;
        for (auto& [k, v] : t_) d = std::min(d, k.first);
        return d;
    }
    int min_deg_y() const {
        int d = t_.empty() ? 0 : 1 << 28;
        for (auto& [k, v] : t_) d = std::min(d, k.second);
        return d;
    }
    /// Divide by X^a Y^b (pre: every term divisible).
    BiPoly shift(int a, int b) const {
        BiPoly r(field_);
        for (auto& [k, v] : t_) {
            if (k.first < a || k.second < b) throw std::domain_error("BiPoly::shift: not divisible");
            r.t_[{k.first - a, k.second - b}] = v;
        }
        return r;
    }

    /// Coefficients as polynomials in X, indexed by the Y-degree.
    std::vector<UniPoly> coeffs_in_y() const {
        std::vector<UniPoly> out(deg_y() + 1, UniPoly::zero(field_));
        std::vector<std::vector<FieldElem>> buf(deg_y() + 1);
        for (auto& [k, v] : t_) {
            auto& row = buf[k.second];
            if (static_cast<int>(row.size()) <= k.first) row.resize(k.first + 1, FieldElem::zero(field_));
            row[k.first] = v;
        }
        for (size_t i = 0; i < buf.size(); ++i) out[i] = UniPoly(field_, buf[i]);
        return out;
    }

    /// Substitute X -> xv, Y -> yv where both are (num, den) pairs of UniPoly;
    /// returns the value as a (num, den) pair over the same field.
    std::pair<UniPoly, UniPoly> eval_rational(const std::pair<UniPoly, UniPoly>& xv,
                                              const std::pair<UniPoly, UniPoly>& yv) const {
        int A = deg_x(), B = deg_y();
        UniPoly num = UniPoly::zero(field_);
        for (auto& [k, v] : t_) {
            UniPoly t = UniPoly::constant(v) * xv.first.pow(k.first) * xv.second.pow(A - k.first) *
                        yv.first.pow(k.second) * yv.second.pow(B - k.second);
            num = num + t;
        }
        return {num, xv.second.pow(A) * yv.second.pow(B)};
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return *a.field_ == *b.field_ && a.t_ == b.t_;
    }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }
    friend bool operator<(const BiPoly& a, const BiPoly& b) {
        if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size();
        auto ia = a.t_.begin(), ib = b.t_.begin();
        for (; ia != a.t_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return false;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            auto [a, b] = it->first;
            std::string cs = it->second.to_string();
            std::string term;
            bool is_const_term = (a == 0 && b == 0);
            if (is_const_term || !it->second.is_one()) {
                bool simple = cs.find('+') == std::string::npos;
                term = simple ? cs : "(" + cs + ")";
                if (!is_const_term) term += "*";
            }
            if (a > 0) { term += "X"; if (a > 1) term += "^" + std::to_string(a); }
            if (b > 0) { if (a > 0) term += "*"; term += "Y"; if (b > 1) term += "^" + std::to_string(b); }
            if (s.empty()) s = term;
            else if (!term.empty() && term[0] == '-') s += term;
            else s += "+" + term;
        }
        return s;
    }

  private:
    FieldPtr field_;
    std::map<Key, FieldElem> t_;

    void same_field(const BiPoly& o) const {
        if (*field_ != *o.field_) throw std::invalid_argument("BiPoly: mismatched parent fields");
    }
};

/// Determinant of a square UniPoly matrix by fraction-free (Bareiss) elimination.
inline UniPoly det_bareiss(std::vector<std::vector<UniPoly>> m, const FieldPtr& F) {
    size_t n = m.size();
    if (n == 0) return UniPoly::constant(FieldElem::one(F));
    UniPoly prev = UniPoly::constant(FieldElem::one(F));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return UniPoly::zero(F);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = UniPoly::exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    UniPoly d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

/// Resultant of two bivariate polynomials with respect to Y, as a polynomial in X.
inline UniPoly resultant_y(const BiPoly& a, const BiPoly& b) {
    const FieldPtr& F = a.field();
    auto ca = a.coeffs_in_y(), cb = b.coeffs_in_y();
    int da = static_cast<int>(ca.size()) - 1, db = static_cast<int>(cb.size()) - 1;
    if (da < 1 && db < 1) throw std::domain_error("resultant_y: both arguments constant in Y");
    int n = da + db;
    std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n, UniPoly::zero(F)));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) m[i][i + j] = ca[da - j];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) m[db + i][i + j] = cb[db - j];
    return det_bareiss(std::move(m), F);
}

}  // namespace tame
