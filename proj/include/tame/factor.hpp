#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "tame/unipoly.hpp"

namespace tame {

namespace detail {

inline UniPoly powmod(UniPoly base, unsigned long long e, const UniPoly& m) {
    UniPoly r = UniPoly::constant(FieldElem::one(base.field()));
    base = base % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

inline UniPoly random_poly(const FieldPtr& F, int max_deg, std::mt19937_64& rng) {
    std::vector<FieldElem> c;
    long long p = F->p();
    long long d = F->degree();
    for (int i = 0; i <= max_deg; ++i) {
        std::vector<long long> cc;
        for (long long j = 0; j < d; ++j) cc.push_back(static_cast<long long>(rng() % p));
        c.emplace_back(F, cc);
    }
    return UniPoly(F, std::move(c));
}

/// f = g(t^p) over F_q, q = p^m  ->  g, using c -> c^(p^(m-1)) on coefficients.
inline UniPoly pth_root(const UniPoly& f) {
    const FieldPtr& F = f.field();
    long long p = F->p();
    long long root_pow = 1;
    for (long long i = 0; i < F->degree() - 1; ++i) root_pow *= p;
    std::vector<FieldElem> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
        c.push_back(f.coeff(i).pow(root_pow));
    return UniPoly(F, std::move(c));
}

}  // namespace detail

/// Squarefree decomposition over a finite field: f = prod part[i]^(i+1) * lc.
inline std::vector<UniPoly> squarefree_decomposition(UniPoly f) {
    const FieldPtr& F = f.field();
    if (!F->is_finite()) throw std::invalid_argument("squarefree_decomposition: field not finite");
    if (f.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
    f = f.monic();
    std::vector<UniPoly> out;  // out[i] has multiplicity i+1
    auto bump = [&](const UniPoly& g, size_t mult) {
        if (g.degree() < 1) return;
        if (out.size() < mult) out.resize(mult, UniPoly::constant(FieldElem::one(F)));
        out[mult - 1] = out[mult - 1] * g;
    };
    // Yun-style loop, restarting through p-th roots when the derivative dies
    size_t outer = 1;
    while (f.degree() > 0) {
        UniPoly d = f.derivative();
        if (d.is_zero()) {
            UniPoly g = detail::pth_root(f);
            auto inner = squarefree_decomposition(g);
            for (size_t i = 0; i < inner.size(); ++i)
                bump(inner[i], (i + 1) * static_cast<size_t>(F->p()) * outer);
            return out;
        }
        UniPoly a = poly_gcd(f, d);
        UniPoly b = UniPoly::exact_div(f, a);  // squarefree part
        size_t mult = outer;
        while (b.degree() > 0) {
            UniPoly c = poly_gcd(a, b);
            UniPoly piece = UniPoly::exact_div(b, c);
            bump(piece, mult);
            b = c;
            a = UniPoly::exact_div(a, c);
            mult += outer;
        }
        if (a.degree() == 0) return out;
        // a = remaining part, a perfect p-th power
        UniPoly g = detail::pth_root(a);
        auto inner = squarefree_decomposition(g);
        for (size_t i = 0; i < inner.size(); ++i)
            bump(inner[i], (i + 1) * static_cast<size_t>(F->p()) * outer);
        return out;
    }
    return out;
}

/// Distinct-degree splitting of a monic squarefree f: list of (product, degree d).
inline std::vector<std::pair<UniPoly, int>> distinct_degree_split(UniPoly f) {
    const FieldPtr& F = f.field();
    unsigned long long q = static_cast<unsigned long long>(F->size());
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly x = UniPoly::variable(F);
    UniPoly h = x;  // x^(q^d) mod f
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) { out.emplace_back(f, f.degree()); break; }
        h = detail::powmod(h, q, f);
        UniPoly g = poly_gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = UniPoly::exact_div(f, g);
            h = h % f;
        }
    }
    return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus) of monic squarefree f whose
/// irreducible factors all have degree d. Randomized; seeded by the caller's rng.
inline void equal_degree_split(const UniPoly& f, int d, std::mt19937_64& rng,
                               std::vector<UniPoly>& out) {
    const FieldPtr& F = f.field();
    if (f.degree() == d) { out.push_back(f.monic()); return; }
    unsigned long long q = static_cast<unsigned long long>(F->size());
    UniPoly one = UniPoly::constant(FieldElem::one(F));
    for (;;) {
        UniPoly h = detail::random_poly(F, f.degree() - 1, rng);
        if (h.is_zero()) continue;
        UniPoly g = poly_gcd(h, f);
        if (g.degree() == 0) {
            if (F->p() == 2) {
                // trace map over F_2: T(h) = h + h^2 + ... + h^(2^(k-1)), k = d*m
                long long k = static_cast<long long>(d) * F->degree();
                UniPoly t = h % f, acc = t;
                for (long long i = 1; i < k; ++i) {
                    t = (t * t) % f;
                    acc = acc + t;
                }
                g = poly_gcd(acc, f);
            } else {
                unsigned long long e = 1;
                for (int i = 0; i < d; ++i) e *= q;  // q^d; in-range for all supported sizes
                g = poly_gcd(detail::powmod(h, (e - 1) / 2, f) - one, f);
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(UniPoly::exact_div(f, g), d, rng, out);
            return;
        }
    }
}

/// Full factorization over a finite field: monic irreducible factors with
/// multiplicities, sorted lexicographically by coefficient sequence. The
/// leading coefficient times the factor product reproduces the input exactly.
inline std::vector<std::pair<UniPoly, int>> factor_finite(const UniPoly& f,
                                                          unsigned long long seed = 1) {
    const FieldPtr& F = f.field();
    if (!F->is_finite()) throw std::invalid_argument("factor_finite: field is not finite");
    if (f.is_zero()) throw std::domain_error("factor_finite: zero polynomial");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<UniPoly, int>> factors;
    auto parts = squarefree_decomposition(f);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degree() < 1) continue;
        for (auto& [g, d] : distinct_degree_split(parts[i].monic())) {
            std::vector<UniPoly> irr;
            equal_degree_split(g, d, rng, irr);
            for (auto& h : irr) factors.emplace_back(h, static_cast<int>(i + 1));
        }
    }
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return factors;
}

/// Irreducibility of a non-constant polynomial over a finite field.
inline bool is_irreducible(const UniPoly& f, unsigned long long seed = 1) {
    if (f.degree() < 1) return false;
    auto fs = factor_finite(f, seed);
    return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace tame
