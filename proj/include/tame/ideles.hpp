#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "tame/cech.hpp"

namespace tame {

/// A flag (closed point, branch of a curve through it). On the surfaces in
/// scope every branch index is 0: invariant curves are smooth at fixed
/// points and parametrized curves are indexed by their places directly.
struct BranchKey {
    ClosedPt x;
    CurveId y;
    int branch = 0;

    std::string key() const {
        return x.key() + "/y" + std::to_string(y.index) + "/" + std::to_string(branch);
    }
    friend bool operator<(const BranchKey& a, const BranchKey& b) { return a.key() < b.key(); }
    friend bool operator==(const BranchKey& a, const BranchKey& b) { return a.key() == b.key(); }
};

/// Degree-0 idele: components at the generic point, at curves (integral by
/// default) and at closed points. Components are restricted global symbols;
/// the neutral default stands for an integral class.
struct Idele0 {
    int weight = 1;
    MilnorSymbol eta;
    std::map<CurveId, MilnorSymbol> at_y;
    std::map<ClosedPt, MilnorSymbol> at_x;

    explicit Idele0(int w) : weight(w), eta(w) {}
};

/// Degree-1 idele with components along (curve), (point) and (point, branch)
/// flags. Finiteness holds by construction: all but the stored components
/// are neutral.
struct Idele1 {
    int weight = 1;
    std::map<CurveId, MilnorSymbol> c01;
    std::map<ClosedPt, MilnorSymbol> c02;
    std::map<BranchKey, MilnorSymbol> c12;

    explicit Idele1(int w) : weight(w) {}

    MilnorSymbol get01(CurveId y) const {
        auto it = c01.find(y);
        return it == c01.end() ? MilnorSymbol(weight) : it->second;
    }
    MilnorSymbol get02(const ClosedPt& x) const {
        auto it = c02.find(x);
        return it == c02.end() ? MilnorSymbol(weight) : it->second;
    }
    MilnorSymbol get12(const BranchKey& k) const {
        auto it = c12.find(k);
        return it == c12.end() ? MilnorSymbol(weight) : it->second;
    }
    void prune() {
        std::erase_if(c01, [](auto& kv) { return kv.second.is_formally_zero(); });
        std::erase_if(c02, [](auto& kv) { return kv.second.is_formally_zero(); });
        std::erase_if(c12, [](auto& kv) { return kv.second.is_formally_zero(); });
    }
};

/// Degree-2 idele: components at (point, branch) flags only.
struct Idele2 {
    int weight = 1;
    std::map<BranchKey, MilnorSymbol> c012;

    explicit Idele2(int w) : weight(w) {}
    void prune() {
        std::erase_if(c012, [](auto& kv) { return kv.second.is_formally_zero(); });
    }
};

namespace detail {

/// All branches through the stored supports of an idele-0/1, used as the key
/// set for the differentials: fixed-point branches on toric surfaces plus
/// the branches over boundary-support points of curve components.
inline std::vector<BranchKey> branch_keys(Surface& S, const std::vector<CurveId>& curves,
                                          const std::vector<ClosedPt>& points) {
    std::vector<BranchKey> out;
    auto add = [&out](BranchKey k) {
        for (auto& q : out)
            if (q == k) return;
        out.push_back(std::move(k));
    };
    for (const ClosedPt& x : points) {
        // curves through x
        if (S.kind() == Surface::Kind::toric && x.kind == ClosedPt::Kind::fixed) {
            auto [a, b] = S.fan().cone_rays(x.cone);
            add({x, S.ray_curve(a), 0});
            add({x, S.ray_curve(b), 0});
        } else if (x.kind == ClosedPt::Kind::on_curve) {
            add({x, CurveId{x.curve}, 0});
        }
    }
    for (CurveId y : curves) {
        if (S.kind() == Surface::Kind::toric && S.is_ray_curve(y)) {
            auto [prev, next] = S.fan().cones_of_ray(S.ray_of(y));
            add({ClosedPt::fixed(prev), y, 0});
            add({ClosedPt::fixed(next), y, 0});
        }
        for (const ClosedPt& x : points) {
            auto br = S.curve_places_over_point(y, x);
            for (int i = 0; i < static_cast<int>(br.size()); ++i) add({x, y, i});
        }
    }
    return out;
}

inline std::vector<CurveId> curves_of(const Idele0& a, Surface& S) {
    std::vector<CurveId> out;
    for (auto& [y, s] : a.at_y) out.push_back(y);
    if (!a.eta.is_formally_zero())
        for (CurveId y : S.candidate_curves(a.eta)) {
            bool seen = false;
            for (auto& z : out) seen = seen || z == y;
            if (!seen) out.push_back(y);
        }
    return out;
}

}  // namespace detail

/// First idele differential: componentwise differences of restrictions,
///   c01_y = a_y - a_eta,  c02_x = a_x - a_eta,  c12_{x,y'} = a_x - a_y.
inline Idele1 idele_differential_0(Surface& S, const Idele0& a) {
    Idele1 out(a.weight);
    std::vector<CurveId> curves = detail::curves_of(a, S);
    std::vector<ClosedPt> points;
    for (auto& [x, s] : a.at_x) points.push_back(x);
    if (S.kind() == Surface::Kind::toric)
        for (int c = 0; c < S.fan().num_cones(); ++c) points.push_back(ClosedPt::fixed(c));
    auto ay = [&](CurveId y) {
        auto it = a.at_y.find(y);
        return it == a.at_y.end() ? MilnorSymbol(a.weight) : it->second;
    };
    auto ax = [&](const ClosedPt& x) {
        auto it = a.at_x.find(x);
        return it == a.at_x.end() ? MilnorSymbol(a.weight) : it->second;
    };
    for (CurveId y : curves) out.c01[y] = ay(y) - a.eta;
    for (const ClosedPt& x : points) out.c02[x] = ax(x) - a.eta;
    for (const BranchKey& k : detail::branch_keys(S, curves, points))
        out.c12[k] = ax(k.x) - ay(k.y);
    out.prune();
    return out;
}

/// Second idele differential, the displayed sign convention:
///   (d j)^{012}_{x,y'} = j^{12}_{x,y'} - res j^{02}_x + res j^{01}_y.
inline Idele2 idele_differential_1(Surface& S, const Idele1& a) {
    Idele2 out(a.weight);
    std::vector<CurveId> curves;
    for (auto& [y, s] : a.c01) curves.push_back(y);
    std::vector<ClosedPt> points;
    for (auto& [x, s] : a.c02) points.push_back(x);
    // points where a curve component can ramify
    for (auto& [y, s] : a.c01) {
        if (s.degree() < 1) continue;
        MilnorSymbol t = tame_symbol(S.curve_place(y), s);
        if (t.is_formally_zero() || t.degree() > 1) continue;
        for (const Place& pl : support_places_of_symbol(t, S.constants())) {
            CurvePoint cp = S.point_under(y, pl);
            if (cp.point) points.push_back(*cp.point);
        }
        if (t.degree() == 0) continue;
    }
    std::vector<BranchKey> keys = detail::branch_keys(S, curves, points);
    for (auto& [k, s] : a.c12) {
        bool seen = false;
        for (auto& q : keys) seen = seen || q == k;
        if (!seen) keys.push_back(k);
    }
    for (const BranchKey& k : keys)
        out.c012[k] = a.get12(k) - a.get02(k.x) + a.get01(k.y);
    out.prune();
    return out;
}

/// Comparison map from degree-2 ideles to the cycle complex:
///   x -> sum over branches of cor . d_x^{y'} d_{y'} (component at the flag).
inline Cycle theta_ideles_to_gersten(Surface& S, const Idele2& a) {
    Cycle out(2, a.weight);
    for (auto& [k, s] : a.c012) {
        if (s.is_formally_zero()) continue;
        MilnorSymbol t = tame_symbol(S.curve_place(k.y), s);
        if (t.is_formally_zero() || t.degree() == 0) {
            if (t.degree() == 0 && t.int_value() != 0)
                throw std::domain_error("theta: weight too low for a codimension-2 value");
            continue;
        }
        auto branches = S.curve_places_over_point(k.y, k.x);
        if (k.branch >= static_cast<int>(branches.size()))
            throw std::domain_error("theta: flag names a branch that does not exist");
        const Place& pl = branches[k.branch].place;
        MilnorSymbol val = tame_symbol(pl, t);
        if (val.degree() != 0)
            throw std::domain_error("theta: point values above K_0 are out of scope");
        long long cor = (k.x.kind == ClosedPt::Kind::on_curve) ? 1 : pl.residue_degree();
        if (val.int_value() != 0)
            out.add_point(k.x, MilnorSymbol::integer(val.int_value() * cor));
    }
    return out;
}

/// The idele cup product: (e v f)_{x,y'} = (res e^{01}_y) . f^{12}_{x,y'},
/// supported exactly on the shared flags.
inline Idele2 vee_product(Surface& S, const Idele1& e, const Idele1& f) {
    (void)S;
    Idele2 out(e.weight + f.weight);
    for (auto& [k, s] : f.c12) {
        auto it = e.c01.find(k.y);
        if (it == e.c01.end()) continue;
        out.c012[k] = it->second * s;
    }
    out.prune();
    return out;
}

/// Comparison of a Cech 1-cocycle into the ideles along the disjoint
/// decomposition: components are -res of the sections indexed by the owners,
///   f~01_y = -f_{beta_eta, beta_y}, f~02_x = -f_{beta_eta, beta_x},
///   f~12_{x,y'} = -f_{beta_y, beta_x}.
inline Idele1 tau_cech_to_ideles(const SymCochain& f, BetaPolicy policy = BetaPolicy::sigma_owner) {
    if (f.degree() != 1) throw std::invalid_argument("tau: need a degree-1 cochain");
    Surface& S = f.surface();
    Idele1 out(f.weight());
    int beta_eta = S.owner_of_generic();
    int n = S.num_opens();
    for (int yi = 0; yi < S.num_curves(); ++yi) {
        CurveId y{yi};
        int beta_y = S.owner_of_curve(y);
        out.c01[y] = -f.at({beta_eta, beta_y});
    }
    std::vector<ClosedPt> points;
    for (int c = 0; c < S.fan().num_cones(); ++c) points.push_back(ClosedPt::fixed(c));
    // points on invariant curves where the candidate sections ramify
    for (int yi = 0; yi < S.num_curves(); ++yi) {
        CurveId y{yi};
        const Place& vy = S.curve_place(y);
        for (int g = 0; g < n; ++g) {
            int beta_y = S.owner_of_curve(y);
            MilnorSymbol sec = f.at({beta_y, g});
            if (sec.is_formally_zero() || f.weight() < 1) continue;
            MilnorSymbol t = tame_symbol(vy, sec);
            if (t.is_formally_zero() || t.degree() < 1) continue;
            for (const Place& pl : support_places_of_symbol(t, S.constants())) {
                CurvePoint cp = S.point_under(y, pl);
                if (cp.point) points.push_back(*cp.point);
            }
        }
    }
    for (const ClosedPt& x : points) {
        int beta_x = beta_of_point(S, x, policy);
        out.c02[x] = -f.at({beta_eta, beta_x});
    }
    for (const ClosedPt& x : points) {
        int beta_x = beta_of_point(S, x, policy);
        std::vector<CurveId> through;
        if (x.kind == ClosedPt::Kind::fixed) {
            auto [a, b] = S.fan().cone_rays(x.cone);
            through = {S.ray_curve(a), S.ray_curve(b)};
        } else if (x.kind == ClosedPt::Kind::on_curve) {
            through = {CurveId{x.curve}};
        }
        for (CurveId y : through) {
            int beta_y = S.owner_of_curve(y);
            out.c12[{x, y, 0}] = -f.at({beta_y, beta_x});
        }
    }
    out.prune();
    return out;
}

/// Reciprocity check around closed points: the sums sum_y d_x^y d_y a^{01}_y
/// for every x in the induced support. Returns the defects (empty = passes).
inline std::map<std::string, long long> reciprocity_defects(Surface& S, const Idele1& a) {
    std::map<std::string, long long> defect;
    for (auto& [y, s] : a.c01) {
        if (s.degree() < 1) continue;
        MilnorSymbol t = tame_symbol(S.curve_place(y), s);
        if (t.is_formally_zero()) continue;
        if (t.degree() == 0) continue;  // K_0 has no boundary toward points
        if (t.degree() > 1) throw std::domain_error("reciprocity: curve values above K_1 are out of scope");
        for (const Place& pl : support_places_of_symbol(t, S.constants())) {
            MilnorSymbol val = tame_symbol(pl, t);
            if (val.int_value() == 0) continue;
            CurvePoint cp = S.point_under(y, pl);
            if (!cp.point) continue;
            long long cor = (cp.point->kind == ClosedPt::Kind::on_curve) ? 1 : pl.residue_degree();
            defect[cp.point->key()] += val.int_value() * cor;
        }
    }
    std::erase_if(defect, [](auto& kv) { return kv.second == 0; });
    return defect;
}

inline bool check_reciprocity_constraint(Surface& S, const Idele1& a) {
    return reciprocity_defects(S, a).empty();
}

}  // namespace tame
