#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "tame/surface.hpp"

namespace tame {

/// A finitely supported map from scheme points to Milnor symbols over their
/// residue fields: an element of the cycle group in one fixed codimension.
/// Codimension 0 is a symbol at the generic point, codimension 1 a map from
/// curves, codimension 2 a map from closed points.
class Cycle {
  public:
    Cycle() = default;
    Cycle(int codim, int weight) : codim_(codim), weight_(weight) {
        if (codim < 0 || codim > 2) throw std::invalid_argument("Cycle: codimension must be 0, 1 or 2");
    }

    static Cycle at_generic(int weight, MilnorSymbol s) {
        Cycle c(0, weight);
        if (s.degree() != weight) throw std::invalid_argument("Cycle: symbol degree must equal the weight");
        c.generic_ = std::move(s);
        return c;
    }

    int codim() const { return codim_; }
    int weight() const { return weight_; }
    const MilnorSymbol& generic_symbol() const { return generic_; }
    const std::map<CurveId, MilnorSymbol>& curve_part() const { return curves_; }
    const std::map<ClosedPt, MilnorSymbol>& point_part() const { return points_; }

    void set_curve(CurveId y, MilnorSymbol s) {
        require(1);
        if (s.degree() != weight_ - 1)
            throw std::invalid_argument("Cycle: curve symbol degree must be weight - 1");
        if (decidably_trivial(s)) curves_.erase(y);
        else curves_[y] = std::move(s);
    }
    void add_point(const ClosedPt& x, const MilnorSymbol& s) {
        require(2);
        if (s.degree() != weight_ - 2)
            throw std::invalid_argument("Cycle: point symbol degree must be weight - 2");
        auto it = points_.find(x);
        if (it == points_.end()) points_[x] = s;
        else it->second = it->second + s;
        if (decidably_trivial(points_[x])) points_.erase(x);
    }

    bool is_zero() const {
        switch (codim_) {
            case 0: return decidably_trivial(generic_);
            case 1: return curves_.empty();
            case 2: return points_.empty();
        }
        return true;
    }

    /// Exact equality for codimension-2 cycles of weight 2 (integer values).
    friend bool operator==(const Cycle& a, const Cycle& b) {
        if (a.codim_ != 2 || b.codim_ != 2 || a.weight_ != 2 || b.weight_ != 2)
            throw std::domain_error("Cycle equality is decidable only at codimension 2, weight 2");
        std::map<std::string, long long> va, vb;
        for (auto& [x, s] : a.points_) va[x.key()] = s.int_value();
        for (auto& [x, s] : b.points_) vb[x.key()] = s.int_value();
        std::erase_if(va, [](auto& kv) { return kv.second == 0; });
        std::erase_if(vb, [](auto& kv) { return kv.second == 0; });
        return va == vb;
    }

    std::string to_string() const {
        std::string out;
        auto emit = [&out](const std::string& pt, const MilnorSymbol& s) {
            if (!out.empty()) out += " + ";
            out += "[" + pt + ", " + s.to_string() + "]";
        };
        if (codim_ == 0) emit("eta", generic_);
        if (codim_ == 1)
            for (auto& [y, s] : curves_) emit("y" + std::to_string(y.index), s);
        if (codim_ == 2)
            for (auto& [x, s] : points_) emit(x.key(), s);
        return out.empty() ? "0" : out;
    }

  private:
    int codim_ = 0;
    int weight_ = 0;
    MilnorSymbol generic_;
    std::map<CurveId, MilnorSymbol> curves_;
    std::map<ClosedPt, MilnorSymbol> points_;

    void require(int c) const {
        if (codim_ != c) throw std::invalid_argument("Cycle: wrong codimension for this operation");
    }
    static bool decidably_trivial(const MilnorSymbol& s) {
        if (s.is_formally_zero()) return true;
        if (s.degree() <= 1) return s.is_trivial();
        return false;
    }
};

/// The differential of the cycle complex. For a generic-point cycle this is
/// the tame symbol at every curve; for a curve-supported cycle it is the sum
/// over closed points of corestricted boundary values at the places lying
/// over them.
inline Cycle boundary(Surface& surf, const Cycle& c) {
    if (c.codim() == 0) {
        Cycle out(1, c.weight());
        if (c.generic_symbol().is_formally_zero()) return out;
        for (CurveId y : surf.candidate_curves(c.generic_symbol())) {
            MilnorSymbol t = tame_symbol(surf.curve_place(y), c.generic_symbol());
            out.set_curve(y, std::move(t));
        }
        return out;
    }
    if (c.codim() == 1) {
        Cycle out(2, c.weight());
        for (auto& [y, t] : c.curve_part()) {
            if (t.degree() == 0) continue;  // K_0 has no further boundary
            if (t.degree() >= 2)
                throw std::domain_error("boundary: curve symbols of degree >= 2 are out of scope");
            for (const Place& pl : support_places_of_symbol(t, surf.constants())) {
                MilnorSymbol val = tame_symbol(pl, t);  // K_0 of kappa(place)
                if (val.int_value() == 0) continue;
                CurvePoint cp = surf.point_under(y, pl);
                if (!cp.point) continue;  // center lies off the surface
                long long cor = pl.residue_is_constant() ? pl.residue_degree() : 1;
                if (cp.point->kind == ClosedPt::Kind::on_curve) cor = 1;
                out.add_point(*cp.point, MilnorSymbol::integer(val.int_value() * cor));
            }
        }
        return out;
    }
    throw std::invalid_argument("boundary: cycles of codimension 2 have no boundary on a surface");
}

/// Proper pushforward to the base point: sum of [kappa(x):k] times the K_0
/// values of a codimension-2, weight-2 cycle.
inline long long pushforward_degree(const Surface& surf, const Cycle& c) {
    if (c.codim() != 2) throw std::invalid_argument("pushforward_degree: need a codimension-2 cycle");
    long long total = 0;
    for (auto& [x, s] : c.point_part()) {
        if (s.degree() != 0)
            throw std::invalid_argument("pushforward_degree: point symbols must have degree 0");
        total += surf.point_degree(x) * s.int_value();
    }
    return total;
}

/// True when every boundary of the generic cycle evaluates to the identity.
inline bool check_unramified(Surface& surf, const Cycle& c) {
    if (c.codim() != 0) throw std::invalid_argument("check_unramified: need a codimension-0 cycle");
    return boundary(surf, c).is_zero();
}

}  // namespace tame
