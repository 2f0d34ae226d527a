#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tame/funcfield.hpp"

namespace tame {

/// An idele on the projective line in the rational-component model: a global
/// symbol over k(t) included diagonally, plus finitely many local
/// adjustments indexed by places. The effective component at a place v is
/// global + local[v]; all unnamed components are the restricted global class.
class CurveIdele {
  public:
    explicit CurveIdele(int weight, FieldPtr field)
        : weight_(weight), field_(std::move(field)), global_(weight) {
        if (weight != 1 && weight != 2)
            throw std::invalid_argument("CurveIdele: weight must be 1 or 2");
    }

    int weight() const { return weight_; }
    const FieldPtr& constants() const { return field_; }
    const MilnorSymbol& global() const { return global_; }

    void set_global(MilnorSymbol s) {
        if (s.degree() != weight_) throw std::invalid_argument("CurveIdele: wrong symbol degree");
        global_ = std::move(s);
    }
    void set_local(const Place& v, MilnorSymbol s) {
        if (s.degree() != weight_) throw std::invalid_argument("CurveIdele: wrong symbol degree");
        if (s.is_formally_zero()) local_.erase(v.to_string());
        else local_[v.to_string()] = {v, std::move(s)};
    }

    MilnorSymbol component(const Place& v) const {
        auto it = local_.find(v.to_string());
        if (it == local_.end()) return global_;
        return global_ + it->second.second;
    }

    /// All places where the effective component can differ from a unit:
    /// the support of the global symbol plus the named local places.
    std::vector<Place> support() const {
        std::vector<Place> out;
        auto add = [&out](const Place& p) {
            for (auto& q : out)
                if (q == p) return;
            out.push_back(p);
        };
        for (auto& t : global_.terms())
            for (auto& e : t.entries) {
                if (e.is_scalar()) continue;
                for (auto& sp : places_of_support(e.as_uni())) add(sp.place);
            }
        for (auto& [k, pv] : local_) {
            add(pv.first);
            for (auto& t : pv.second.terms())
                for (auto& e : t.entries) {
                    if (e.is_scalar()) continue;
                    for (auto& sp : places_of_support(e.as_uni())) add(sp.place);
                }
        }
        return out;
    }

  private:
    int weight_;
    FieldPtr field_;
    MilnorSymbol global_;
    std::map<std::string, std::pair<Place, MilnorSymbol>> local_;
};

/// The degree of the divisor class of a weight-1 idele:
///   sum_v [kappa(v):k] * v(a_v), a complete invariant of Pic(P^1) = Z.
inline long long pic_class(const CurveIdele& a) {
    if (a.weight() != 1) throw std::invalid_argument("pic_class: need a weight-1 idele");
    long long deg = 0;
    for (const Place& v : a.support()) {
        MilnorSymbol comp = a.component(v);
        if (comp.is_formally_zero()) continue;
        deg += v.residue_degree() * tame_symbol(v, comp).int_value();
    }
    return deg;
}

/// The K_2 idele class map onto k^x:
///   prod_v N_{kappa(v)/k} (d_v a_v).
inline FieldElem k2_class(const CurveIdele& a) {
    if (a.weight() != 2) throw std::invalid_argument("k2_class: need a weight-2 idele");
    const FieldPtr& k = a.constants();
    FieldElem acc = FieldElem::one(k);
    for (const Place& v : a.support()) {
        MilnorSymbol comp = a.component(v);
        if (comp.is_formally_zero()) continue;
        MilnorSymbol dv = tame_symbol(v, comp);
        MilnorSymbol nm = corestrict(dv, v.residue_field(), k);
        acc = acc * nm.k1_scalar(k);
    }
    return acc;
}

/// True when a symbol over k(t) has trivial boundary at every place of the
/// projective line (the sections of the unramified sheaf).
inline bool p1_unramified(const MilnorSymbol& s, const FieldPtr& F) {
    if (s.degree() == 0) return true;
    std::vector<Place> places;
    auto add = [&places](const Place& p) {
        for (auto& q : places)
            if (q == p) return;
        places.push_back(p);
    };
    for (auto& t : s.terms())
        for (auto& e : t.entries) {
            if (e.is_scalar()) continue;
            for (auto& sp : places_of_support(e.as_uni())) add(sp.place);
        }
    add(Place::p1_infinite(F));
    for (const Place& v : places)
        if (!tame_symbol(v, s).is_trivial()) return false;
    return true;
}

/// One place's contribution to the reciprocity product.
struct ReciprocityEntry {
    Place place;
    FieldElem symbol_value;  // d_v {f, g} in kappa(v)^x
    FieldElem norm_value;    // its norm down to k
};

struct ReciprocityReport {
    std::vector<ReciprocityEntry> entries;
    FieldElem product;
    bool holds = false;
};

/// Weil reciprocity on P^1: the product over all places of the norms of the
/// tame symbols of {f, g} equals 1.
inline ReciprocityReport weil_reciprocity(const Fact1& f, const Fact1& g) {
    const FieldPtr& k = f.field();
    MilnorSymbol s = MilnorSymbol::of({FnElem(f), FnElem(g)});
    ReciprocityReport rep;
    rep.product = FieldElem::one(k);

    std::vector<Place> places;
    auto add = [&places](const Place& p) {
        for (auto& q : places)
            if (q == p) return;
        places.push_back(p);
    };
    for (auto& sp : places_of_support(f)) add(sp.place);
    for (auto& sp : places_of_support(g)) add(sp.place);
    add(Place::p1_infinite(k));

    for (const Place& v : places) {
        MilnorSymbol dv = tame_symbol(v, s);
        FieldPtr kv = v.residue_field();
        FieldElem val = dv.k1_scalar(kv);
        FieldElem nm = corestrict(dv, kv, k).k1_scalar(k);
        rep.entries.push_back({v, val, nm});
        rep.product = rep.product * nm;
    }
    rep.holds = rep.product.is_one();
    return rep;
}

}  // namespace tame
