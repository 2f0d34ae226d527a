#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tame {

/// Arbitrary-precision signed integer, sign-magnitude over base 2^32 limbs.
/// Small and exact; all coefficient arithmetic in the library routes through
/// this type (no floating point anywhere).
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) { neg_ = true; }
        unsigned long long m = neg_ ? ~static_cast<unsigned long long>(v) + 1ULL
                                    : static_cast<unsigned long long>(v);
        while (m) { limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffULL)); m >>= 32; }
    }

    static BigInt from_string(const std::string& s) {
        BigInt r;
        size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) { neg = s[i] == '-'; ++i; }
        if (i >= s.size()) throw std::invalid_argument("BigInt: empty literal");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            r = r.mul_small(10);
            r = r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        r.neg_ = neg && !r.is_zero();
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return neg_; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    bool fits_ll() const {
        if (limbs_.size() > 2) return false;
        unsigned long long m = mag_ull();
        return neg_ ? m <= 0x8000000000000000ULL : m < 0x8000000000000000ULL;
    }
    long long to_ll() const {
        if (!fits_ll()) throw std::overflow_error("BigInt: does not fit long long");
        unsigned long long m = mag_ull();
        return neg_ ? -static_cast<long long>(m) : static_cast<long long>(m);
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        if (!r.is_zero()) r.neg_ = !r.neg_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.neg_ == b.neg_) {
            BigInt r;
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.neg_ = a.neg_ && !r.limbs_.empty();
            return r;
        }
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        BigInt r;
        if (c > 0) { r.limbs_ = sub_mag(a.limbs_, b.limbs_); r.neg_ = a.neg_; }
        else       { r.limbs_ = sub_mag(b.limbs_, a.limbs_); r.neg_ = b.neg_; }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned long long carry = 0;
            for (size_t j = 0; j < b.limbs_.size(); ++j) {
                unsigned long long cur = r.limbs_[i + j] +
                    static_cast<unsigned long long>(a.limbs_[i]) * b.limbs_[j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
            }
            size_t k = i + b.limbs_.size();
            while (carry) {
                unsigned long long cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.neg_ = a.neg_ != b.neg_;
        return r;
    }

    /// Truncated quotient (rounds toward zero), matching C semantics.
    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        if (cmp_mag(a.limbs_, b.limbs_) < 0) return {BigInt(), a};
        BigInt q, r;
        q.limbs_.assign(a.limbs_.size(), 0);
        for (size_t i = a.limbs_.size(); i-- > 0;) {
            r.limbs_.insert(r.limbs_.begin(), a.limbs_[i]);
            r.trim();
            // binary search for the quotient limb
            uint32_t lo = 0, hi = 0xffffffffu, best = 0;
            while (lo <= hi) {
                uint32_t mid = lo + (hi - lo) / 2;
                BigInt t = abs(b).mul_small(mid);
                if (cmp_mag(t.limbs_, r.limbs_) <= 0) { best = mid; if (mid == 0xffffffffu) break; lo = mid + 1; }
                else { if (mid == 0) break; hi = mid - 1; }
            }
            q.limbs_[i] = best;
            BigInt t = abs(b).mul_small(best);
            r.limbs_ = sub_mag(r.limbs_, t.limbs_);
        }
        q.trim(); r.trim();
        q.neg_ = (a.neg_ != b.neg_) && !q.is_zero();
        r.neg_ = a.neg_ && !r.is_zero();
        return {q, r};
    }

    static BigInt abs(const BigInt& a) { BigInt r = a; r.neg_ = false; return r; }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false; b.neg_ = false;
        while (!b.is_zero()) {
            BigInt r = a % b;
            a = b;
            b = r;
        }
        return a;
    }

    static BigInt pow(const BigInt& base, long long e) {
        if (e < 0) throw std::domain_error("BigInt: negative exponent");
        BigInt r(1), b = base;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.neg_ != b.neg_) return a.neg_;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.neg_ ? c > 0 : c < 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string digits;
        std::vector<uint32_t> m = limbs_;
        while (!m.empty()) {
            unsigned long long rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                unsigned long long cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int d = 0; d < 9; ++d) { digits.push_back(static_cast<char>('0' + rem % 10)); rem /= 10; }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (neg_) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

  private:
    std::vector<uint32_t> limbs_;  // little-endian, no trailing zeros
    bool neg_ = false;

    void trim() { while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back(); if (limbs_.empty()) neg_ = false; }

    unsigned long long mag_ull() const {
        unsigned long long m = 0;
        if (limbs_.size() > 1) m = static_cast<unsigned long long>(limbs_[1]) << 32;
        if (!limbs_.empty()) m |= limbs_[0];
        return m;
    }

    BigInt mul_small(uint32_t f) const {
        BigInt r;
        unsigned long long carry = 0;
        for (uint32_t limb : limbs_) {
            unsigned long long cur = static_cast<unsigned long long>(limb) * f + carry;
            r.limbs_.push_back(static_cast<uint32_t>(cur & 0xffffffffULL));
            carry = cur >> 32;
        }
        while (carry) { r.limbs_.push_back(static_cast<uint32_t>(carry & 0xffffffffULL)); carry >>= 32; }
        r.trim();
        r.neg_ = neg_ && !r.is_zero();
        return r;
    }

    BigInt add_small(uint32_t v) const {
        BigInt b;
        if (v) b.limbs_.push_back(v);
        return *this + b;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r;
        unsigned long long carry = 0;
        for (size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
            unsigned long long cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r.push_back(static_cast<uint32_t>(cur & 0xffffffffULL));
            carry = cur >> 32;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // pre: |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        long long borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            long long cur = static_cast<long long>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) { cur += 1LL << 32; borrow = 1; }
            else borrow = 0;
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

}  // namespace tame
