#pragma once

#include <vector>

#include "tame/milnor.hpp"

namespace tame {

/// One place in the support of a rational function, with its valuation.
/// Over Q the factored bases are caller-asserted irreducible; the flag
/// records that the assertion was used rather than proven.
struct SupportPlace {
    Place place;
    long long valuation = 0;
    bool assumed_irreducible = false;
};

/// All places of k(t) (including infinity) where f has nonzero valuation.
/// Over a finite constant field the factorization is computed; over Q the
/// element must already be in factored form with pairwise coprime squarefree
/// bases, otherwise an error is raised.
inline std::vector<SupportPlace> places_of_support(const Fact1& f) {
    const FieldPtr& F = f.field();
    std::vector<SupportPlace> out;
    if (!F->is_finite()) {
        // validate: squarefree and pairwise coprime
        const auto& bs = f.bases();
        for (size_t i = 0; i < bs.size(); ++i) {
            if (poly_gcd(bs[i].first, bs[i].first.derivative()).degree() > 0)
                throw std::domain_error("places_of_support: base over Q is not squarefree");
            for (size_t j = i + 1; j < bs.size(); ++j)
                if (poly_gcd(bs[i].first, bs[j].first).degree() > 0)
                    throw std::domain_error("places_of_support: bases over Q share a factor; "
                                            "supply the input in factored form");
        }
        for (auto& [base, e] : bs)
            out.push_back({Place::p1_finite(base), e, base.degree() > 1});
    } else {
        for (auto& [base, e] : f.bases())
            out.push_back({Place::p1_finite(base), e, false});
    }
    long long dinf = -f.degree();
    if (dinf != 0) out.push_back({Place::p1_infinite(F), dinf, false});
    return out;
}

/// Union of the supports of all entries of a symbol over k(t).
inline std::vector<Place> support_places_of_symbol(const MilnorSymbol& s, const FieldPtr& F) {
    std::vector<Place> out;
    auto add = [&out](const Place& p) {
        for (auto& q : out)
            if (q == p) return;
        out.push_back(p);
    };
    for (auto& t : s.terms())
        for (auto& e : t.entries) {
            if (e.is_scalar()) continue;
            for (auto& sp : places_of_support(e.as_uni())) add(sp.place);
        }
    (void)F;
    return out;
}

/// Lattice pairing <u, (a, b)>: the valuation of the Laurent monomial
/// X^a Y^b along the invariant divisor of the primitive ray u.
inline long long monomial_valuation(std::array<long long, 2> u, long long a, long long b) {
    long long g = [](long long x, long long y) {
        x = x < 0 ? -x : x; y = y < 0 ? -y : y;
        while (y) { long long t = x % y; x = y; y = t; }
        return x;
    }(u[0], u[1]);
    if (g != 1) throw std::invalid_argument("monomial_valuation: ray vector not primitive");
    return u[0] * a + u[1] * b;
}

}  // namespace tame
