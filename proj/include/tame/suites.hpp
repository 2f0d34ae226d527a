#pragma once

#include <random>
#include <string>
#include <vector>

#include "tame/curve1d.hpp"
#include "tame/toric.hpp"

namespace tame {

/// One verdict of a randomized property suite. Reports are ordered by case
/// index; identical seeds reproduce identical streams.
struct CaseReport {
    int index = 0;
    bool ok = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseReport> cases;
    bool all_ok() const {
        for (auto& c : cases)
            if (!c.ok) return false;
        return true;
    }
};

namespace suitedetail {

inline Fact1 random_ratfunc(const FieldPtr& F, std::mt19937_64& rng, int maxdeg) {
    UniPoly n = detail::random_poly(F, 1 + static_cast<int>(rng() % maxdeg), rng);
    UniPoly d = detail::random_poly(F, 1 + static_cast<int>(rng() % maxdeg), rng);
    while (n.is_zero()) n = detail::random_poly(F, 2, rng);
    while (d.is_zero()) d = detail::random_poly(F, 2, rng);
    return Fact1::from_parts(n, d);
}

inline FnElem random_plane_entry(Surface& surf, const FieldPtr& F, std::mt19937_64& rng) {
    long long p = F->p();
    FnElem e = FnElem(Fact2::monomial(F, static_cast<long long>(rng() % 3) - 1,
                                      static_cast<long long>(rng() % 3) - 1,
                                      FieldElem(F, 1 + static_cast<long long>(rng() % (p - 1)))));
    int nlin = static_cast<int>(rng() % 3);
    for (int i = 0; i < nlin; ++i) {
        long long a = static_cast<long long>(rng() % p), b = static_cast<long long>(rng() % p);
        long long c = static_cast<long long>(rng() % p);
        if (a == 0 && b == 0) a = 1;
        BiPoly lin = BiPoly::term(F, 1, 0, FieldElem(F, a)) +
                     BiPoly::term(F, 0, 1, FieldElem(F, b)) +
                     BiPoly::term(F, 0, 0, FieldElem(F, c));
        long long e2 = 1 + static_cast<long long>(rng() % 2);
        Fact2 lf = Fact2::from_poly(lin);
        e = e * FnElem(lf).pow(rng() % 2 ? e2 : -e2);
        if (!lf.bases().empty()) surf.curve_of_prime(lf.bases().at(0).first);
    }
    return e;
}

}  // namespace suitedetail

/// Boundary-squared vanishing: random K_2 symbols on the affine plane built from
/// monomials and linear forms satisfy boundary(boundary(.)) = 0.
inline SuiteReport run_gersten_square_zero(unsigned long long seed, int cases, const FieldPtr& F) {
    SuiteReport rep{"gersten-square-zero", {}};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        Surface a2 = Surface::affine_plane(F);
        MilnorSymbol s(2);
        int terms = 1 + static_cast<int>(rng() % 2);
        for (int t = 0; t < terms; ++t)
            s = s + MilnorSymbol::of({suitedetail::random_plane_entry(a2, F, rng),
                                      suitedetail::random_plane_entry(a2, F, rng)},
                                     1 - 2 * static_cast<long long>(rng() % 2));
        CaseReport c;
        c.index = i;
        if (s.is_formally_zero()) {
            c.ok = true;
            c.detail = "trivial symbol";
        } else {
            Cycle dd = boundary(a2, boundary(a2, Cycle::at_generic(2, s)));
            c.ok = dd.is_zero();
            c.detail = c.ok ? "dd = 0" : "dd = " + dd.to_string() + " for " + s.to_string();
        }
        rep.cases.push_back(std::move(c));
    }
    return rep;
}

/// The contracting homotopy identity H d + d H = id on random product-type
/// cochains over random 3- and 4-element covers, degrees 0, 1 and 2.
inline SuiteReport run_homotopy(unsigned long long seed, int cases) {
    SuiteReport rep{"homotopy", {}};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        int opens = 3 + static_cast<int>(rng() % 2);
        int degree = static_cast<int>(rng() % 3);
        AbstractCover U;
        U.opens = opens;
        U.points = 7;
        U.member.assign(opens, std::vector<bool>(U.points, false));
        for (int p = 0; p < U.points; ++p) {
            bool any = false;
            for (int a = 0; a < opens; ++a) {
                bool m = rng() % 2 == 0;
                U.member[a][p] = m;
                any = any || m;
            }
            if (!any) U.member[rng() % opens][p] = true;
        }
        PtCochain f(degree, &U);
        PtCochain::for_each_tuple(opens, degree + 1, [&](const std::vector<int>& idx) {
            std::map<int, long long> sec;
            for (int p = 0; p < U.points; ++p)
                if (U.tuple_contains(idx, p) && rng() % 2 == 0)
                    sec[p] = static_cast<long long>(rng() % 9) - 4;
            f.set(idx, std::move(sec));
        });
        PtCochain lhs = cech_differential(contracting_homotopy(f));
        PtCochain rhs = contracting_homotopy(cech_differential(f));
        bool ok = true;
        PtCochain::for_each_tuple(opens, degree + 1, [&](const std::vector<int>& idx) {
            for (int p = 0; p < U.points; ++p)
                ok = ok && lhs.at_point(idx, p) + rhs.at_point(idx, p) == f.at_point(idx, p);
        });
        rep.cases.push_back({i, ok,
                             "degree " + std::to_string(degree) + ", " + std::to_string(opens) +
                                 " opens"});
    }
    return rep;
}

/// Product compatibility: theta(tau g vee tau h) = lambda(g cup h) exactly,
/// for the line-bundle cocycles of all invariant-divisor pairs on F_0..F_3.
inline SuiteReport run_product_compat(unsigned long long seed, const FieldPtr& F) {
    (void)seed;  // the case list is a fixed enumeration
    SuiteReport rep{"product-compat", {}};
    int index = 0;
    for (long long n = 0; n <= 3; ++n) {
        Surface S = Surface::toric(hirzebruch(n), F);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                SymCochain g = line_bundle_cocycle(S, cartier_data(S.fan(), ToricDivisor::ray(i)));
                SymCochain h = line_bundle_cocycle(S, cartier_data(S.fan(), ToricDivisor::ray(j)));
                Cycle via_ideles = theta_ideles_to_gersten(
                    S, vee_product(S, tau_cech_to_ideles(g), tau_cech_to_ideles(h)));
                Cycle via_cech = lambda_cech_to_gersten(cup(g, h));
                bool ok = via_ideles == via_cech;
                rep.cases.push_back({index++, ok,
                                     "F_" + std::to_string(n) + ", D" + std::to_string(i) +
                                         " . D" + std::to_string(j)});
            }
    }
    return rep;
}

/// Weil reciprocity for random pairs of rational functions over a finite
/// field: the product of the norms of all tame symbols is 1.
inline SuiteReport run_reciprocity(unsigned long long seed, int cases, const FieldPtr& F) {
    if (!F->is_finite()) throw std::invalid_argument("reciprocity: needs a finite constant field");
    SuiteReport rep{"reciprocity", {}};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        Fact1 f = suitedetail::random_ratfunc(F, rng, 6);
        Fact1 g = suitedetail::random_ratfunc(F, rng, 6);
        ReciprocityReport r = weil_reciprocity(f, g);
        rep.cases.push_back({i, r.holds,
                             "f = " + f.to_string() + ", g = " + g.to_string() + ", product = " +
                                 r.product.to_string()});
    }
    return rep;
}

}  // namespace tame
