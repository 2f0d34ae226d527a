#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tame/place.hpp"

namespace tame {

/// One term of a formal Milnor symbol: coeff * {e_1, ..., e_n}.
struct SymTerm {
    long long coeff = 0;
    std::vector<FnElem> entries;
};

/// A formal integer combination of n-tuples of nonzero function-field
/// elements. The representation is not canonical: equality in K_n is
/// undecidable in general and is never asserted directly; tests compare
/// through evaluation maps into K_1/K_0. Terms containing the entry 1 are
/// dropped (they are zero in K_n for n >= 1).
class MilnorSymbol {
  public:
    MilnorSymbol() = default;
    explicit MilnorSymbol(int degree) : degree_(degree) {
        if (degree < 0) throw std::invalid_argument("MilnorSymbol: negative degree");
    }

    static MilnorSymbol integer(long long n) {
        MilnorSymbol s(0);
        if (n != 0) s.terms_.push_back({n, {}});
        return s;
    }
    static MilnorSymbol unit(FnElem e) {
        MilnorSymbol s(1);
        s.terms_.push_back({1, {std::move(e)}});
        s.normalize();
        return s;
    }
    static MilnorSymbol of(std::vector<FnElem> entries, long long coeff = 1) {
        MilnorSymbol s(static_cast<int>(entries.size()));
        s.terms_.push_back({coeff, std::move(entries)});
        s.normalize();
        return s;
    }

    int degree() const { return degree_; }
    const std::vector<SymTerm>& terms() const { return terms_; }
    bool is_formally_zero() const { return terms_.empty(); }

    /// Value of a degree-0 symbol (K_0 = Z).
    long long int_value() const {
        if (degree_ != 0) throw std::domain_error("int_value: symbol degree is not 0");
        long long n = 0;
        for (auto& t : terms_) n += t.coeff;
        return n;
    }

    /// Decidable triviality for degree <= 1: degree 0 sums to 0, degree 1
    /// multiplies out to 1 in the field.
    bool is_trivial() const {
        if (terms_.empty()) return true;
        if (degree_ == 0) return int_value() == 0;
        if (degree_ == 1) {
            FnElem prod = terms_[0].entries[0].pow(terms_[0].coeff);
            for (size_t i = 1; i < terms_.size(); ++i)
                prod = prod * terms_[i].entries[0].pow(terms_[i].coeff);
            return prod.is_one();
        }
        throw std::domain_error("is_trivial: undecidable above degree 1");
    }

    /// Degree-1 symbol over a constant field, multiplied out to one element.
    FieldElem k1_scalar(const FieldPtr& K) const {
        if (degree_ != 1) throw std::domain_error("k1_scalar: symbol degree is not 1");
        FieldElem prod = FieldElem::one(K);
        for (auto& t : terms_) prod = prod * t.entries[0].scalar().pow(t.coeff);
        return prod;
    }

    /// The K_1 value of a degree-1 symbol as a single field element.
    FnElem k1_value() const {
        if (degree_ != 1) throw std::domain_error("k1_value: symbol degree is not 1");
        if (terms_.empty()) throw std::domain_error("k1_value: need a field context for the trivial symbol");
        FnElem prod = terms_[0].entries[0].pow(terms_[0].coeff);
        for (size_t i = 1; i < terms_.size(); ++i)
            prod = prod * terms_[i].entries[0].pow(terms_[i].coeff);
        return prod;
    }

    MilnorSymbol operator-() const { return scaled(-1); }
    MilnorSymbol scaled(long long c) const {
        MilnorSymbol s(degree_);
        if (c == 0) return s;
        s.terms_ = terms_;
        for (auto& t : s.terms_) t.coeff *= c;
        return s;
    }
    friend MilnorSymbol operator+(const MilnorSymbol& a, const MilnorSymbol& b) {
        if (a.degree_ != b.degree_) {
            if (a.terms_.empty()) return b;
            if (b.terms_.empty()) return a;
            throw std::invalid_argument("MilnorSymbol: degree mismatch in sum");
        }
        MilnorSymbol s(a.degree_);
        s.terms_ = a.terms_;
        s.terms_.insert(s.terms_.end(), b.terms_.begin(), b.terms_.end());
        s.normalize();
        return s;
    }
    friend MilnorSymbol operator-(const MilnorSymbol& a, const MilnorSymbol& b) { return a + (-b); }

    /// The Milnor product: bilinear concatenation of entry tuples.
    friend MilnorSymbol operator*(const MilnorSymbol& a, const MilnorSymbol& b) {
        MilnorSymbol s(a.degree_ + b.degree_);
        for (auto& ta : a.terms_)
            for (auto& tb : b.terms_) {
                SymTerm t;
                t.coeff = ta.coeff * tb.coeff;
                t.entries = ta.entries;
                t.entries.insert(t.entries.end(), tb.entries.begin(), tb.entries.end());
                s.terms_.push_back(std::move(t));
            }
        s.normalize();
        return s;
    }

    /// Formal (representation-level) equality after sorting; sufficient, not
    /// necessary, for equality in K_n.
    friend bool operator==(const MilnorSymbol& a, const MilnorSymbol& b) {
        return a.degree_ == b.degree_ && a.to_string() == b.to_string();
    }
    friend bool operator!=(const MilnorSymbol& a, const MilnorSymbol& b) { return !(a == b); }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& t : terms_) {
            std::string term;
            if (t.coeff != 1) {
                if (t.coeff == -1) term = "-";
                else term = std::to_string(t.coeff) + "*";
            }
            if (t.entries.empty()) {
                term = std::to_string(t.coeff);
            } else {
                term += "{";
                for (size_t i = 0; i < t.entries.size(); ++i) {
                    if (i) term += ", ";
                    term += t.entries[i].to_string();
                }
                term += "}";
            }
            if (s.empty()) s = term;
            else if (term[0] == '-') s += " - " + term.substr(1);
            else s += " + " + term;
        }
        return s;
    }

    void normalize() {
        std::erase_if(terms_, [](const SymTerm& t) {
            if (t.coeff == 0) return true;
            for (auto& e : t.entries)
                if (e.is_one()) return true;
            return false;
        });
        // merge syntactically identical terms
        std::map<std::string, size_t> seen;
        std::vector<SymTerm> merged;
        for (auto& t : terms_) {
            std::string key;
            for (auto& e : t.entries) key += e.to_string() + "|";
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen[key] = merged.size();
                merged.push_back(t);
            } else {
                merged[it->second].coeff += t.coeff;
            }
        }
        std::erase_if(merged, [](const SymTerm& t) { return t.coeff == 0; });
        std::sort(merged.begin(), merged.end(), [](const SymTerm& x, const SymTerm& y) {
            std::string kx, ky;
            for (auto& e : x.entries) kx += e.to_string() + "|";
            for (auto& e : y.entries) ky += e.to_string() + "|";
            return kx < ky;
        });
        terms_ = std::move(merged);
    }

  private:
    int degree_ = 0;
    std::vector<SymTerm> terms_;
};

namespace detail {

inline FnElem neg_one_like(const FnElem& sample) {
    FieldElem m1 = -FieldElem::one(sample.constants());
    if (sample.is_uni()) return FnElem(Fact1(m1, sample.uni().var()));
    if (sample.is_bi()) return FnElem(Fact2(m1));
    return FnElem(m1);
}

/// pi-reduction of a single tame-symbol term of degree >= 1: multilinearly
/// split every entry into pi-power times unit, fold repeated pi's through
/// {pi, pi} = {pi, -1}, and apply d{pi, u_2, ..., u_n} = {res u_2, ...}.
inline void tame_reduce_term(const Place& v, const SymTerm& term, MilnorSymbol& out) {
    const FnElem pi = v.uniformizer();
    struct Partial {
        long long coeff;
        std::vector<int> is_pi;       // 1 = uniformizer slot, 0 = unit slot
        std::vector<FnElem> units;    // unit for each slot with is_pi == 0 (indexed in order)
    };
    std::vector<Partial> work{{term.coeff, {}, {}}};
    for (const FnElem& f : term.entries) {
        long long w = v.valuation(f);
        FnElem u = f * pi.pow(-w);
        std::vector<Partial> next;
        for (auto& p : work) {
            if (w != 0) {
                Partial q = p;
                q.coeff *= w;
                q.is_pi.push_back(1);
                next.push_back(std::move(q));
            }
            if (!u.is_one() || w == 0) {
                Partial q = p;
                q.is_pi.push_back(0);
                q.units.push_back(u);
                next.push_back(std::move(q));
            }
        }
        work = std::move(next);
    }
    for (auto& p : work) {
        int n = static_cast<int>(p.is_pi.size());
        int lead = -1;
        for (int i = 0; i < n; ++i)
            if (p.is_pi[i]) { lead = i; break; }
        if (lead < 0) continue;  // all units: boundary is zero
        // moving the leading pi to the front costs (-1)^lead; every further pi
        // is replaced in place by the unit -1 via {pi, pi} = {pi, -1}
        long long coeff = (lead % 2 == 0) ? p.coeff : -p.coeff;
        FnElem m1 = neg_one_like(pi);
        std::vector<FnElem> residues;
        bool dead = false;
        size_t uidx = 0;
        for (int i = 0; i < n; ++i) {
            if (i == lead) continue;
            FnElem u = p.is_pi[i] ? m1 : p.units[uidx];
            if (!p.is_pi[i]) ++uidx;
            FnElem r = v.residue(u);
            if (r.is_one()) { dead = true; break; }
            residues.push_back(std::move(r));
        }
        if (dead) continue;
        out = out + MilnorSymbol::of(std::move(residues), coeff);
    }
}

}  // namespace detail

/// The boundary map at a place: K_n of the field down to K_{n-1} of the
/// residue field. Degree 1 is the valuation, degree 2 the closed form
///   d{f, g} = (-1)^(v(f)v(g)) * res(g^v(f) / f^v(g)),
/// higher degrees reduce through uniformizer-and-unit splitting.
inline MilnorSymbol tame_symbol(const Place& v, const MilnorSymbol& s) {
    if (s.degree() < 1) throw std::invalid_argument("tame_symbol: degree must be at least 1");
    if (s.degree() == 1) {
        long long n = 0;
        for (auto& t : s.terms()) n += t.coeff * v.valuation(t.entries[0]);
        return MilnorSymbol::integer(n);
    }
    if (s.degree() == 2) {
        MilnorSymbol out(1);
        for (auto& t : s.terms()) {
            long long vf = v.valuation(t.entries[0]);
            long long vg = v.valuation(t.entries[1]);
            if (vf == 0 && vg == 0) continue;  // residue of 1 is 1
            FnElem arg = t.entries[1].pow(vf) * t.entries[0].pow(-vg);
            FnElem r = v.residue(arg);
            if ((vf * vg) % 2 != 0) r = r * detail::neg_one_like(r);
            if (r.is_one()) continue;
            out = out + MilnorSymbol::of({std::move(r)}, t.coeff);
        }
        return out;
    }
    MilnorSymbol out(s.degree() - 1);
    for (auto& t : s.terms()) detail::tame_reduce_term(v, t, out);
    return out;
}

/// Entrywise residue of a symbol of v-units (the specialization map s_v^pi
/// composed with the choice of uniformizer hidden in `v`).
inline MilnorSymbol specialization(const Place& v, const MilnorSymbol& s) {
    if (s.degree() == 0) return s;
    MilnorSymbol out(s.degree());
    for (auto& t : s.terms()) {
        std::vector<FnElem> res;
        for (auto& e : t.entries) {
            if (v.valuation(e) != 0)
                throw std::domain_error("specialization: entry has nonzero valuation");
            res.push_back(v.residue(e));
        }
        out = out + MilnorSymbol::of(std::move(res), t.coeff);
    }
    return out;
}

/// Corestriction (norm) for degree <= 1 along a finite extension E/base.
/// Degree 0 multiplies by the extension degree; degree 1 applies the field
/// norm. Higher degrees are rejected.
inline MilnorSymbol corestrict(const MilnorSymbol& s, const FieldPtr& E, const FieldPtr& base) {
    if (s.degree() >= 2)
        throw std::invalid_argument("corestrict: degree >= 2 corestriction is not supported");
    long long ext_degree;
    bool same = (*E == *base);
    if (same) ext_degree = 1;
    else if (E->kind() == ConstField::Kind::extension &&
             base->kind() == ConstField::Kind::prime && E->p() == base->p())
        ext_degree = E->degree();
    else
        throw std::invalid_argument("corestrict: unsupported field extension");
    if (s.degree() == 0) return MilnorSymbol::integer(s.int_value() * ext_degree);
    MilnorSymbol out(1);
    for (auto& t : s.terms()) {
        if (!t.entries[0].is_scalar())
            throw std::invalid_argument("corestrict: entry is not a constant-field element");
        FieldElem n = same ? t.entries[0].scalar() : norm_to_prime(t.entries[0].scalar());
        if (n.is_one()) continue;
        out = out + MilnorSymbol::of({FnElem(n)}, t.coeff);
    }
    return out;
}

/// Replace the `slot` entry of every term by a verified factorization,
/// expanding bilinearly: {.. prod b_i^k_i ..} = sum_i k_i {.. b_i ..}.
inline MilnorSymbol multilinear_expand(const MilnorSymbol& s, size_t slot,
                                       const std::vector<std::pair<FnElem, long long>>& factors) {
    if (s.degree() == 0 || slot >= static_cast<size_t>(s.degree()))
        throw std::invalid_argument("multilinear_expand: slot out of range");
    MilnorSymbol out(s.degree());
    for (auto& t : s.terms()) {
        FnElem prod = factors.empty() ? FnElem() : factors[0].first.pow(factors[0].second);
        for (size_t i = 1; i < factors.size(); ++i) prod = prod * factors[i].first.pow(factors[i].second);
        if (factors.empty() || prod != t.entries[slot])
            throw std::invalid_argument("multilinear_expand: factorization does not multiply back to the entry");
        for (auto& [b, k] : factors) {
            SymTerm nt = t;
            nt.coeff *= k;
            nt.entries[slot] = b;
            out = out + MilnorSymbol::of(std::move(nt.entries), nt.coeff);
        }
    }
    return out;
}

}  // namespace tame
