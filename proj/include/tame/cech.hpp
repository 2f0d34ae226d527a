#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "tame/cycle.hpp"

namespace tame {

/// Sort an index tuple and report the permutation sign; a repeated index
/// means the alternating value is zero.
struct TupleAccess {
    std::vector<int> sorted;
    int sign = 1;
    bool repeated = false;
};

inline TupleAccess sort_tuple(std::vector<int> idx) {
    TupleAccess out;
    out.sorted = std::move(idx);
    for (size_t i = 1; i < out.sorted.size(); ++i)
        for (size_t j = i; j > 0 && out.sorted[j - 1] >= out.sorted[j]; --j) {
            if (out.sorted[j - 1] == out.sorted[j]) { out.repeated = true; return out; }
            std::swap(out.sorted[j - 1], out.sorted[j]);
            out.sign = -out.sign;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Abstract covers with product-type values: the setting of the contracting
// homotopy. Points are abstract ids; sections assign an integer to each point
// of the open where they live.
// ---------------------------------------------------------------------------

/// A finite cover of a finite point set, given by a membership matrix.
struct AbstractCover {
    int opens = 0;
    int points = 0;
    std::vector<std::vector<bool>> member;  // member[open][point]

    bool in(int open, int pt) const { return member[open][pt]; }
    bool tuple_contains(const std::vector<int>& t, int pt) const {
        for (int a : t)
            if (!member[a][pt]) return false;
        return true;
    }
    /// The disjoint decomposition: each point belongs to the smallest open
    /// containing it.
    int owner(int pt) const {
        for (int a = 0; a < opens; ++a)
            if (member[a][pt]) return a;
        throw std::domain_error("cover: a point lies in no open");
    }
    void validate() const {
        for (int p = 0; p < points; ++p) owner(p);
    }
};

/// An alternating cochain with values in the product sheaf prod_pt Z.
/// Degree -1 holds the single global section (empty index tuple).
class PtCochain {
  public:
    PtCochain(int degree, const AbstractCover* cover) : deg_(degree), cover_(cover) {}

    int degree() const { return deg_; }
    const AbstractCover& cover() const { return *cover_; }

    void set(std::vector<int> idx, std::map<int, long long> sec) {
        auto acc = sort_tuple(std::move(idx));
        if (acc.repeated) throw std::invalid_argument("cochain: repeated index in storage");
        // keep only points of the overlap
        std::erase_if(sec, [&](auto& kv) { return !cover_->tuple_contains(acc.sorted, kv.first) || kv.second == 0; });
        if (acc.sign < 0)
            for (auto& [p, v] : sec) v = -v;
        vals_[acc.sorted] = std::move(sec);
    }

    /// Alternating access: permuted tuples return the sign-twisted section,
    /// repeated indices return zero.
    std::map<int, long long> at(std::vector<int> idx) const {
        auto acc = sort_tuple(std::move(idx));
        if (acc.repeated) return {};
        auto it = vals_.find(acc.sorted);
        if (it == vals_.end()) return {};
        auto sec = it->second;
        if (acc.sign < 0)
            for (auto& [p, v] : sec) v = -v;
        return sec;
    }
    long long at_point(const std::vector<int>& idx, int pt) const {
        auto sec = at(idx);
        auto it = sec.find(pt);
        return it == sec.end() ? 0 : it->second;
    }

    friend bool operator==(const PtCochain& a, const PtCochain& b) {
        if (a.deg_ != b.deg_) return false;
        auto norm = [](const PtCochain& c) {
            std::map<std::vector<int>, std::map<int, long long>> m;
            for (auto& [k, v] : c.vals_) {
                auto vv = v;
                std::erase_if(vv, [](auto& kv) { return kv.second == 0; });
                if (!vv.empty()) m[k] = vv;
            }
            return m;
        };
        return norm(a) == norm(b);
    }

    /// Iterate over all strictly increasing tuples of a given length.
    static void for_each_tuple(int opens, int len, const std::function<void(const std::vector<int>&)>& f) {
        std::vector<int> idx(len);
        std::function<void(int, int)> rec = [&](int pos, int from) {
            if (pos == len) { f(idx); return; }
            for (int a = from; a < opens; ++a) {
                idx[pos] = a;
                rec(pos + 1, a + 1);
            }
        };
        rec(0, 0);
    }

  private:
    int deg_;
    const AbstractCover* cover_;
    std::map<std::vector<int>, std::map<int, long long>> vals_;
};

/// Alternating Čech differential for product-type values.
inline PtCochain cech_differential(const PtCochain& f) {
    const AbstractCover& U = f.cover();
    PtCochain out(f.degree() + 1, &U);
    PtCochain::for_each_tuple(U.opens, f.degree() + 2, [&](const std::vector<int>& idx) {
        std::map<int, long long> sec;
        for (size_t k = 0; k < idx.size(); ++k) {
            std::vector<int> sub;
            for (size_t j = 0; j < idx.size(); ++j)
                if (j != k) sub.push_back(idx[j]);
            auto part = f.at(sub);
            long long sgn = (k % 2 == 0) ? 1 : -1;
            for (auto& [p, v] : part) {
                if (!U.tuple_contains(idx, p)) continue;  // restriction to the overlap
                sec[p] += sgn * v;
            }
        }
        out.set(idx, std::move(sec));
    });
    return out;
}

/// The contracting homotopy H built from the disjoint decomposition:
/// (Hf)_{b0..b_{i-1}}(pt) = f_{owner(pt), b0, .., b_{i-1}}(pt), the
/// extension-by-zero along the Sigma-owner of each point.
inline PtCochain contracting_homotopy(const PtCochain& f) {
    const AbstractCover& U = f.cover();
    if (f.degree() < 0)
        throw std::invalid_argument("contracting_homotopy: already at global sections");
    PtCochain out(f.degree() - 1, &U);
    PtCochain::for_each_tuple(U.opens, f.degree(), [&](const std::vector<int>& idx) {
        std::map<int, long long> sec;
        for (int p = 0; p < U.points; ++p) {
            if (!U.tuple_contains(idx, p)) continue;
            std::vector<int> full{U.owner(p)};
            full.insert(full.end(), idx.begin(), idx.end());
            long long v = f.at_point(full, p);
            if (v != 0) sec[p] = v;
        }
        out.set(idx, std::move(sec));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Sheaf-valued cochains on the toric cover: values are unramified symbols,
// identified with global symbols over the function field; restriction maps
// are the identity on representatives.
// ---------------------------------------------------------------------------

/// Alternating cochain of Milnor-K sheaf sections over the cover of a toric
/// surface by its maximal cones.
class SymCochain {
  public:
    SymCochain(int degree, int weight, Surface* surf)
        : deg_(degree), weight_(weight), surf_(surf) {
        if (surf->kind() != Surface::Kind::toric)
            throw std::invalid_argument("SymCochain: requires a toric cover");
    }

    int degree() const { return deg_; }
    int weight() const { return weight_; }
    Surface& surface() const { return *surf_; }

    void set(std::vector<int> idx, MilnorSymbol s) {
        if (static_cast<int>(idx.size()) != deg_ + 1)
            throw std::invalid_argument("SymCochain: wrong tuple length");
        if (s.degree() != weight_) throw std::invalid_argument("SymCochain: wrong symbol degree");
        auto acc = sort_tuple(std::move(idx));
        if (acc.repeated) throw std::invalid_argument("SymCochain: repeated index in storage");
        if (acc.sign < 0) s = -s;
        if (s.is_formally_zero()) vals_.erase(acc.sorted);
        else vals_[acc.sorted] = std::move(s);
    }

    MilnorSymbol at(std::vector<int> idx) const {
        auto acc = sort_tuple(std::move(idx));
        if (acc.repeated) return MilnorSymbol(weight_);
        auto it = vals_.find(acc.sorted);
        if (it == vals_.end()) return MilnorSymbol(weight_);
        return acc.sign < 0 ? -it->second : it->second;
    }

    const std::map<std::vector<int>, MilnorSymbol>& raw() const { return vals_; }

  private:
    int deg_;
    int weight_;
    Surface* surf_;
    std::map<std::vector<int>, MilnorSymbol> vals_;
};

inline SymCochain cech_differential(const SymCochain& f) {
    Surface& S = f.surface();
    SymCochain out(f.degree() + 1, f.weight(), &S);
    PtCochain::for_each_tuple(S.num_opens(), f.degree() + 2, [&](const std::vector<int>& idx) {
        MilnorSymbol s(f.weight());
        for (size_t k = 0; k < idx.size(); ++k) {
            std::vector<int> sub;
            for (size_t j = 0; j < idx.size(); ++j)
                if (j != k) sub.push_back(idx[j]);
            MilnorSymbol part = f.at(sub);
            s = s + ((k % 2 == 0) ? part : -part);
        }
        out.set(idx, std::move(s));
    });
    return out;
}

/// Cup product of sheaf cochains: on a strictly increasing index tuple the
/// value is the Milnor product of the front face of f and the back face of g;
/// other tuples follow by the alternating rule.
inline SymCochain cup(const SymCochain& f, const SymCochain& g) {
    Surface& S = f.surface();
    int p = f.degree(), q = g.degree();
    SymCochain out(p + q, f.weight() + g.weight(), &S);
    PtCochain::for_each_tuple(S.num_opens(), p + q + 1, [&](const std::vector<int>& idx) {
        std::vector<int> front(idx.begin(), idx.begin() + p + 1);
        std::vector<int> back(idx.begin() + p, idx.end());
        out.set(idx, f.at(front) * g.at(back));
    });
    return out;
}

/// How the index beta_x of a closed point is chosen in the comparison maps:
/// the owner from the disjoint decomposition (the default), or the largest
/// admissible open (to exercise independence of the choice).
enum class BetaPolicy { sigma_owner, max_admissible };

inline int beta_of_point(const Surface& S, const ClosedPt& x, BetaPolicy policy) {
    if (policy == BetaPolicy::sigma_owner) return S.owner_of_point(x);
    int best = -1;
    for (int a = 0; a < S.num_opens(); ++a)
        if (S.point_in_open(x, a)) best = a;
    return best;
}

/// The degree-1 comparison of a sheaf cochain into the cycle complex:
/// y -> boundary at y of f_{beta_eta, beta_y}.
inline Cycle mu_cech_to_gersten(const SymCochain& f) {
    if (f.degree() != 1) throw std::invalid_argument("mu_cech_to_gersten: need a degree-1 cochain");
    Surface& S = f.surface();
    Cycle out(1, f.weight());
    int beta_eta = S.owner_of_generic();
    for (int y = 0; y < S.num_curves(); ++y) {
        CurveId cy{y};
        int beta_y = S.owner_of_curve(cy);
        MilnorSymbol sec = f.at({beta_eta, beta_y});
        if (sec.is_formally_zero()) continue;
        out.set_curve(cy, tame_symbol(S.curve_place(cy), sec));
    }
    return out;
}

/// The degree-2 comparison into the cycle complex:
///   h_x = sum_{y : x in closure(y)} d_x^y d_y^eta f_{beta_eta, beta_y, beta_x}.
inline Cycle lambda_cech_to_gersten(const SymCochain& f,
                                    BetaPolicy policy = BetaPolicy::sigma_owner) {
    if (f.degree() != 2) throw std::invalid_argument("lambda_cech_to_gersten: need a degree-2 cochain");
    Surface& S = f.surface();
    Cycle out(2, f.weight());
    int beta_eta = S.owner_of_generic();
    int n = S.num_opens();
    for (int y = 0; y < S.num_curves(); ++y) {
        CurveId cy{y};
        int beta_y = S.owner_of_curve(cy);
        const Place& vy = S.curve_place(cy);
        // boundary of the candidate sections, one per choice of beta_x
        std::vector<MilnorSymbol> T;
        T.reserve(n);
        bool any = false;
        for (int g = 0; g < n; ++g) {
            MilnorSymbol sec = f.at({beta_eta, beta_y, g});
            MilnorSymbol t = sec.is_formally_zero() ? MilnorSymbol(f.weight() - 1)
                                                    : tame_symbol(vy, sec);
            if (!t.is_formally_zero()) any = true;
            T.push_back(std::move(t));
        }
        if (!any) continue;
        if (f.weight() - 1 < 1) continue;  // K_0 values have no further boundary
        // closed points of the curve where any candidate has nonzero divisor
        std::vector<std::pair<Place, ClosedPt>> pts;
        auto add_pt = [&](const Place& pl) {
            CurvePoint cp = S.point_under(cy, pl);
            if (!cp.point) return;
            for (auto& [q, x] : pts)
                if (q == pl) return;
            pts.emplace_back(pl, *cp.point);
        };
        for (int g = 0; g < n; ++g) {
            if (T[g].is_formally_zero()) continue;
            for (const Place& pl : support_places_of_symbol(T[g], S.constants())) add_pt(pl);
        }
        for (auto& [pl, x] : pts) {
            int beta_x = beta_of_point(S, x, policy);
            const MilnorSymbol& t = T[beta_x];
            if (t.is_formally_zero()) continue;
            MilnorSymbol val = tame_symbol(pl, t);
            long long cor = (x.kind == ClosedPt::Kind::on_curve) ? 1 : pl.residue_degree();
            if (val.degree() == 0) {
                if (val.int_value() != 0)
                    out.add_point(x, MilnorSymbol::integer(val.int_value() * cor));
            } else {
                throw std::domain_error("lambda: point values above K_0 are out of scope");
            }
        }
    }
    return out;
}

}  // namespace tame
