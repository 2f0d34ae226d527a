#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "tame/ideles.hpp"

namespace tame {

/// A torus-invariant divisor: integer coefficients per ray.
struct ToricDivisor {
    std::map<int, long long> coeffs;  // ray index -> multiplicity

    long long at(int ray) const {
        auto it = coeffs.find(ray);
        return it == coeffs.end() ? 0 : it->second;
    }
    static ToricDivisor ray(int i, long long n = 1) {
        ToricDivisor d;
        if (n != 0) d.coeffs[i] = n;
        return d;
    }
    friend ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b) {
        ToricDivisor r = a;
        for (auto& [i, n] : b.coeffs) {
            r.coeffs[i] += n;
            if (r.coeffs[i] == 0) r.coeffs.erase(i);
        }
        return r;
    }
    ToricDivisor scaled(long long c) const {
        ToricDivisor r;
        if (c != 0)
            for (auto& [i, n] : coeffs) r.coeffs[i] = n * c;
        return r;
    }
};

/// Cartier data for an invariant divisor: one Laurent monomial exponent per
/// maximal cone, cutting the divisor out on that cone's chart.
struct CartierData {
    std::vector<std::array<long long, 2>> m;  // exponent of c_sigma per cone
};

/// Solve <u_a, m> = n_a, <u_b, m> = n_b on every cone (the fan is smooth, so
/// the solution is integral).
inline CartierData cartier_data(const Fan2D& fan, const ToricDivisor& d) {
    for (auto& [i, n] : d.coeffs)
        if (i < 0 || i >= fan.num_rays()) throw std::invalid_argument("cartier_data: unknown ray index");
    CartierData out;
    for (int c = 0; c < fan.num_cones(); ++c) {
        auto [a, b] = fan.cone_rays(c);
        auto ua = fan.rays[a], ub = fan.rays[b];
        long long na = d.at(a), nb = d.at(b);
        // inverse of the unimodular matrix (ua; ub)
        long long m1 = ub[1] * na - ua[1] * nb;
        long long m2 = -ub[0] * na + ua[0] * nb;
        out.m.push_back({m1, m2});
    }
    return out;
}

/// The transition cocycle of the associated line bundle: the degree-1
/// alternating cochain with c~_{ab} = { chi^(m_b - m_a) }.
inline SymCochain line_bundle_cocycle(Surface& S, const CartierData& cd) {
    SymCochain out(1, 1, &S);
    int n = S.num_opens();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            long long ex = cd.m[b][0] - cd.m[a][0];
            long long ey = cd.m[b][1] - cd.m[a][1];
            if (ex == 0 && ey == 0) continue;
            out.set({a, b}, MilnorSymbol::unit(FnElem(Fact2::monomial(S.constants(), ex, ey))));
        }
    return out;
}

/// The divisor as a codimension-1, weight-1 cycle.
inline Cycle divisor_cycle(Surface& S, const ToricDivisor& d) {
    Cycle c(1, 1);
    for (auto& [i, n] : d.coeffs) c.set_curve(S.ray_curve(i), MilnorSymbol::integer(n));
    return c;
}

/// Explicit preimage of a divisor cycle in the degree-1 ideles:
///   f_y = { pi_y^{n_y} } at supporting curves (a unit elsewhere),
///   g_x = { c_sigma(x) } the local Cartier generator,
///   alpha_{x,y'} = res g_x - res f_y, combined into one unit entry.
inline Idele1 phi_gersten_to_ideles(Surface& S, const Cycle& c) {
    if (c.codim() != 1) throw std::invalid_argument("phi: need a codimension-1 cycle");
    if (c.weight() != 1)
        throw std::domain_error("phi: preimage construction outside supported weights");
    const FieldPtr& F = S.constants();
    ToricDivisor d;
    for (auto& [y, s] : c.curve_part()) {
        if (!S.is_ray_curve(y))
            throw std::domain_error("phi: divisors must be supported on invariant curves");
        long long n = s.int_value();
        if (n != 0) d.coeffs[S.ray_of(y)] = n;
    }
    CartierData cd = cartier_data(S.fan(), d);
    Idele1 out(1);
    auto pi_exp = [&](int ray) {
        const Place& pl = S.curve_place(S.ray_curve(ray));
        return pl.uniformizer();
    };
    for (auto& [ray, n] : d.coeffs)
        out.c01[S.ray_curve(ray)] = MilnorSymbol::of({pi_exp(ray)}, n);
    for (int cone = 0; cone < S.fan().num_cones(); ++cone) {
        ClosedPt x = ClosedPt::fixed(cone);
        auto m = cd.m[cone];
        if (m[0] != 0 || m[1] != 0)
            out.c02[x] = MilnorSymbol::unit(FnElem(Fact2::monomial(F, m[0], m[1])));
        auto [a, b] = S.fan().cone_rays(cone);
        for (int ray : {a, b}) {
            long long n = d.at(ray);
            FnElem quot = FnElem(Fact2::monomial(F, m[0], m[1])) * pi_exp(ray).pow(-n);
            if (quot.is_one()) continue;
            out.c12[{x, S.ray_curve(ray), 0}] = MilnorSymbol::unit(quot);
        }
    }
    out.prune();
    return out;
}

/// Sign convention of the intersection pairing: `standard` matches the
/// classical fan combinatorics; `twisted` applies the (-1)^{pq} = -1 twist.
enum class SignConvention { standard, twisted };

/// Intersection number through the Cech pipeline: transition cocycles, cup
/// product, comparison into the cycle complex, pushforward.
inline long long intersect_paper_cech(Surface& S, const ToricDivisor& d1, const ToricDivisor& d2,
                                      SignConvention sc = SignConvention::standard,
                                      BetaPolicy policy = BetaPolicy::sigma_owner) {
    SymCochain g = line_bundle_cocycle(S, cartier_data(S.fan(), d1));
    SymCochain h = line_bundle_cocycle(S, cartier_data(S.fan(), d2));
    Cycle z = lambda_cech_to_gersten(cup(g, h), policy);
    long long r = pushforward_degree(S, z);
    return sc == SignConvention::standard ? r : -r;
}

/// Intersection number through the idele pipeline: divisor preimages, the
/// vee product, comparison into the cycle complex, pushforward.
inline long long intersect_paper_ideles(Surface& S, const ToricDivisor& d1, const ToricDivisor& d2,
                                        SignConvention sc = SignConvention::standard) {
    Idele1 a = phi_gersten_to_ideles(S, divisor_cycle(S, d1));
    Idele1 b = phi_gersten_to_ideles(S, divisor_cycle(S, d2));
    Cycle z = theta_ideles_to_gersten(S, vee_product(S, a, b));
    long long r = pushforward_degree(S, z);
    return sc == SignConvention::standard ? r : -r;
}

/// Classical fan-combinatorics oracle: adjacent rays meet once; the
/// self-intersection of D_i is -a_i with u_{i-1} + u_{i+1} = a_i u_i;
/// non-adjacent invariant curves are disjoint. Extended bilinearly.
inline long long intersect_classical(const Fan2D& fan, const ToricDivisor& d1,
                                     const ToricDivisor& d2) {
    int n = fan.num_rays();
    auto pairing = [&](int i, int j) -> long long {
        int prev = (i + n - 1) % n, next = (i + 1) % n;
        if (j == prev || j == next) return 1;
        if (j != i) return 0;
        auto up = fan.rays[prev], ui = fan.rays[i], un = fan.rays[next];
        long long sx = up[0] + un[0], sy = up[1] + un[1];
        long long a;
        if (ui[0] != 0) {
            if (sx % ui[0] != 0) throw std::logic_error("fan: broken wall relation");
            a = sx / ui[0];
            if (a * ui[1] != sy) throw std::logic_error("fan: broken wall relation");
        } else {
            if (sy % ui[1] != 0) throw std::logic_error("fan: broken wall relation");
            a = sy / ui[1];
            if (a * ui[0] != sx) throw std::logic_error("fan: broken wall relation");
        }
        return -a;
    };
    long long total = 0;
    for (auto& [i, ni] : d1.coeffs)
        for (auto& [j, nj] : d2.coeffs) total += ni * nj * pairing(i, j);
    return total;
}

}  // namespace tame
