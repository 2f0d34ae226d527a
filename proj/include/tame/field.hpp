#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tame/rational.hpp"

namespace tame {

namespace detail {

// dense polynomial helpers over F_p with int64 coefficients in [0,p)
using ZpPoly = std::vector<long long>;

inline void zp_trim(ZpPoly& f) { while (!f.empty() && f.back() == 0) f.pop_back(); }

inline long long zp_pow(long long b, long long e, long long p) {
    long long r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}
inline long long zp_inv(long long a, long long p) {
    a %= p; if (a < 0) a += p;
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    return zp_pow(a, p - 2, p);
}

inline ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    zp_trim(r);
    return r;
}

inline ZpPoly zp_mod(ZpPoly a, const ZpPoly& m, long long p) {
    zp_trim(a);
    long long lcinv = zp_inv(m.back(), p);
    while (a.size() >= m.size()) {
        long long c = a.back() * lcinv % p;
        size_t off = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[off + i] = ((a[off + i] - c * m[i]) % p + p) % p;
        zp_trim(a);
    }
    return a;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, long long p) {
    zp_trim(a); zp_trim(b);
    while (!b.empty()) {
        ZpPoly r = zp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long long inv = zp_inv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

inline ZpPoly zp_powmod(ZpPoly base, long long e, const ZpPoly& m, long long p) {
    ZpPoly r{1};
    base = zp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = zp_mod(zp_mul(r, base, p), m, p);
        base = zp_mod(zp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// Rabin irreducibility test for monic f over F_p.
inline bool zp_irreducible(const ZpPoly& f, long long p) {
    size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    // x^(p^d) == x mod f
    ZpPoly x{0, 1};
    ZpPoly fr = x;
    for (size_t i = 0; i < d; ++i) fr = zp_powmod(fr, p, f, p);
    ZpPoly diff = fr;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    zp_trim(diff);
    if (!diff.empty()) return false;
    // gcd(x^(p^(d/q)) - x, f) == 1 for every prime q | d
    for (size_t q = 2; q <= d; ++q) {
        if (d % q != 0) continue;
        bool prime = true;
        for (size_t r = 2; r * r <= q; ++r) if (q % r == 0) { prime = false; break; }
        if (!prime) continue;
        ZpPoly g = x;
        for (size_t i = 0; i < d / q; ++i) g = zp_powmod(g, p, f, p);
        if (g.size() < 2) g.resize(2, 0);
        g[1] = ((g[1] - 1) % p + p) % p;
        zp_trim(g);
        ZpPoly gc = zp_gcd(g, f, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

class FieldElem;

/// Descriptor of a constant field: Q, a prime field F_p, or an extension
/// F_p[u]/(modulus) with the modulus monic irreducible over F_p.
class ConstField {
  public:
    enum class Kind { rationals, prime, extension };

    static std::shared_ptr<const ConstField> rationals() {
        static auto q = std::shared_ptr<const ConstField>(new ConstField());
        return q;
    }
    static std::shared_ptr<const ConstField> prime(long long p) {
        check_prime(p);
        return std::shared_ptr<const ConstField>(new ConstField(p));
    }
    static std::shared_ptr<const ConstField> extension(long long p, std::vector<long long> modulus) {
        check_prime(p);
        for (auto& c : modulus) { c %= p; if (c < 0) c += p; }
        detail::zp_trim(modulus);
        if (modulus.size() < 2) throw std::invalid_argument("extension: modulus must be non-constant");
        if (modulus.back() != 1) throw std::invalid_argument("extension: modulus must be monic");
        if (!detail::zp_irreducible(modulus, p))
            throw std::invalid_argument("extension: modulus is reducible over F_p");
        return std::shared_ptr<const ConstField>(new ConstField(p, std::move(modulus)));
    }

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::rationals; }
    bool is_finite() const { return kind_ != Kind::rationals; }
    long long characteristic() const { return kind_ == Kind::rationals ? 0 : p_; }
    long long p() const { return p_; }
    const std::vector<long long>& modulus() const { return modulus_; }
    long long degree() const { return kind_ == Kind::extension ? static_cast<long long>(modulus_.size()) - 1 : 1; }
    /// Field size; only valid for finite fields.
    long long size() const {
        long long q = 1;
        for (long long i = 0; i < degree(); ++i) q *= p_;
        return q;
    }

    std::string to_string() const;

    friend bool operator==(const ConstField& a, const ConstField& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.modulus_ == b.modulus_;
    }
    friend bool operator!=(const ConstField& a, const ConstField& b) { return !(a == b); }

  private:
    ConstField() : kind_(Kind::rationals) {}
    explicit ConstField(long long p) : kind_(Kind::prime), p_(p) {}
    ConstField(long long p, std::vector<long long> m)
        : kind_(Kind::extension), p_(p), modulus_(std::move(m)) {}

    static void check_prime(long long p) {
        if (p < 2) throw std::invalid_argument("characteristic must be a prime");
        for (long long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("characteristic must be a prime");
        if (p > (1LL << 30)) throw std::invalid_argument("characteristic too large");
    }

    Kind kind_;
    long long p_ = 0;
    std::vector<long long> modulus_;  // over F_p, monic
};

using FieldPtr = std::shared_ptr<const ConstField>;

/// An exact element of a constant field.
class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(FieldPtr f, Rational r) : field_(std::move(f)), rat_(std::move(r)) {
        if (!field_->is_rationals()) throw std::invalid_argument("rational value in finite field");
    }
    FieldElem(FieldPtr f, long long v) : field_(std::move(f)) {
        if (field_->is_rationals()) rat_ = Rational(v);
        else { coeffs_ = {mod(v)}; trim(); }
    }
    /// Extension element from coefficients over F_p (little-endian in the generator).
    FieldElem(FieldPtr f, std::vector<long long> coeffs) : field_(std::move(f)) {
        if (field_->is_rationals()) throw std::invalid_argument("coefficient vector over Q");
        for (auto& c : coeffs) c = mod(c);
        coeffs_ = std::move(coeffs);
        if (field_->kind() == ConstField::Kind::extension)
            coeffs_ = detail::zp_mod(std::move(coeffs_), field_->modulus(), field_->p());
        trim();
    }

    static FieldElem zero(const FieldPtr& f) { return FieldElem(f, 0); }
    static FieldElem one(const FieldPtr& f) { return FieldElem(f, 1); }
    /// The generator u of an extension field F_p[u]/(modulus).
    static FieldElem generator(const FieldPtr& f) {
        if (f->kind() != ConstField::Kind::extension)
            throw std::invalid_argument("generator: not an extension field");
        return FieldElem(f, std::vector<long long>{0, 1});
    }

    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return field_->is_rationals() ? rat_.is_zero() : coeffs_.empty(); }
    bool is_one() const {
        return field_->is_rationals() ? rat_.is_one() : (coeffs_.size() == 1 && coeffs_[0] == 1);
    }
    const Rational& rat() const { return rat_; }
    const std::vector<long long>& coeffs() const { return coeffs_; }

    /// True when the element lies in the prime subfield; then prime_value() is defined.
    bool in_prime_subfield() const { return field_->is_rationals() || coeffs_.size() <= 1; }
    long long prime_value() const {
        if (field_->is_rationals() || coeffs_.size() > 1)
            throw std::domain_error("prime_value: element not in prime subfield");
        return coeffs_.empty() ? 0 : coeffs_[0];
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        a.same_field(b);
        if (a.field_->is_rationals()) return FieldElem(a.field_, a.rat_ + b.rat_);
        std::vector<long long> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = (c[i] + b.coeffs_[i]) % a.field_->p();
        FieldElem r; r.field_ = a.field_; r.coeffs_ = std::move(c); r.trim();
        return r;
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }
    friend FieldElem operator-(const FieldElem& a) {
        if (a.field_->is_rationals()) return FieldElem(a.field_, -a.rat_);
        FieldElem r = a;
        for (auto& c : r.coeffs_) c = (a.field_->p() - c) % a.field_->p();
        r.trim();
        return r;
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        a.same_field(b);
        if (a.field_->is_rationals()) return FieldElem(a.field_, a.rat_ * b.rat_);
        auto c = detail::zp_mul(a.coeffs_, b.coeffs_, a.field_->p());
        if (a.field_->kind() == ConstField::Kind::extension)
            c = detail::zp_mod(std::move(c), a.field_->modulus(), a.field_->p());
        FieldElem r; r.field_ = a.field_; r.coeffs_ = std::move(c); r.trim();
        return r;
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

    FieldElem inverse() const {
        if (is_zero()) throw std::domain_error("FieldElem: inverse of zero");
        if (field_->is_rationals()) return FieldElem(field_, Rational(1) / rat_);
        if (field_->kind() == ConstField::Kind::prime)
            return FieldElem(field_, detail::zp_inv(coeffs_[0], field_->p()));
        // extended Euclid in F_p[u] modulo the modulus
        long long p = field_->p();
        detail::ZpPoly r0 = field_->modulus(), r1 = coeffs_;
        detail::ZpPoly s0{}, s1{1};
        while (!r1.empty()) {
            // r0 = q*r1 + rem
            detail::ZpPoly rem = r0, q;
            long long lcinv = detail::zp_inv(r1.back(), p);
            q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                long long c = rem.back() * lcinv % p;
                size_t off = rem.size() - r1.size();
                q[off] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[off + i] = ((rem[off + i] - c * r1[i]) % p + p) % p;
                detail::zp_trim(rem);
            }
            detail::ZpPoly s2 = s0;  // s2 = s0 - q*s1
            detail::ZpPoly qs = detail::zp_mul(q, s1, p);
            if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
            for (size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % p + p) % p;
            detail::zp_trim(s2);
            r0 = std::move(r1); r1 = std::move(rem);
            s0 = std::move(s1); s1 = std::move(s2);
        }
        // r0 = gcd (a unit since the modulus is irreducible)
        long long inv = detail::zp_inv(r0[0], p);
        for (auto& c : s0) c = c * inv % p;
        FieldElem r; r.field_ = field_; r.coeffs_ = std::move(s0); r.trim();
        return r;
    }

    FieldElem pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElem r = one(field_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return *a.field_ == *b.field_ &&
               (a.field_->is_rationals() ? a.rat_ == b.rat_ : a.coeffs_ == b.coeffs_);
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
    /// Total order for canonical sorting (within one field).
    friend bool operator<(const FieldElem& a, const FieldElem& b) {
        if (a.field_->is_rationals()) {
            Rational d = a.rat_ - b.rat_;
            return d.num().is_negative();
        }
        if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
        for (size_t i = a.coeffs_.size(); i-- > 0;)
            if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
        return false;
    }

    std::string to_string() const {
        if (field_->is_rationals()) return rat_.to_string();
        if (coeffs_.empty()) return "0";
        if (coeffs_.size() == 1) return std::to_string(coeffs_[0]);
        std::string s;
        for (size_t i = coeffs_.size(); i-- > 0;) {
            if (coeffs_[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) s += std::to_string(coeffs_[i]);
            else {
                if (coeffs_[i] != 1) s += std::to_string(coeffs_[i]) + "*";
                s += "u";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

  private:
    FieldPtr field_ = ConstField::rationals();
    Rational rat_;                     // when field is Q
    std::vector<long long> coeffs_;    // when field is finite; empty = 0

    long long mod(long long v) const {
        long long p = field_->p();
        v %= p;
        if (v < 0) v += p;
        return v;
    }
    void trim() { while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back(); }
    void same_field(const FieldElem& o) const {
        if (*field_ != *o.field_) throw std::invalid_argument("FieldElem: mismatched parent fields");
    }
};

inline std::string ConstField::to_string() const {
    switch (kind_) {
        case Kind::rationals: return "q";
        case Kind::prime: return "fp:" + std::to_string(p_);
        case Kind::extension: {
            std::string m;
            for (size_t i = modulus_.size(); i-- > 0;) {
                if (modulus_[i] == 0) continue;
                if (!m.empty()) m += "+";
                if (i == 0) m += std::to_string(modulus_[i]);
                else {
                    if (modulus_[i] != 1) m += std::to_string(modulus_[i]) + "*";
                    m += "t";
                    if (i > 1) m += "^" + std::to_string(i);
                }
            }
            return "fq:" + std::to_string(p_) + ":" + m;
        }
    }
    return "?";
}

}  // namespace tame
