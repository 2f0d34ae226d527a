#include "doctest.h"

#include "tame/toric.hpp"

#include <random>

using namespace tame;

namespace {

MilnorSymbol mono_sym(const FieldPtr& F, long long ex, long long ey, long long coeff = 1) {
    return MilnorSymbol::of({FnElem(Fact2::monomial(F, ex, ey))}, coeff);
}

/// Random degree-0 idele from toric monomial data: a global unit symbol, a
/// few integral curve components, constant point components.
Idele0 random_idele0(Surface& S, std::mt19937_64& rng) {
    const FieldPtr& F = S.constants();
    Idele0 a(1);
    a.eta = mono_sym(F, static_cast<long long>(rng() % 5) - 2,
                     static_cast<long long>(rng() % 5) - 2,
                     1 - 2 * static_cast<long long>(rng() % 2));
    for (int r = 0; r < S.fan().num_rays(); ++r) {
        if (rng() % 2) continue;
        auto u = S.fan().rays[r];
        long long k = static_cast<long long>(rng() % 3) - 1;
        // a monomial orthogonal to the ray: integral on the curve
        a.at_y[S.ray_curve(r)] = mono_sym(F, -u[1] * k, u[0] * k);
    }
    for (int c = 0; c < S.fan().num_cones(); ++c) {
        if (rng() % 2) continue;
        long long v = 2 + static_cast<long long>(rng() % 3);
        a.at_x[ClosedPt::fixed(c)] =
            MilnorSymbol::of({FnElem(Fact2(FieldElem(F, v)))});
    }
    return a;
}

Idele1 random_idele1(Surface& S, std::mt19937_64& rng) {
    const FieldPtr& F = S.constants();
    Idele1 a(2);
    for (int r = 0; r < S.fan().num_rays(); ++r) {
        if (rng() % 2) continue;
        MilnorSymbol s = mono_sym(F, static_cast<long long>(rng() % 3) - 1,
                                  static_cast<long long>(rng() % 3) - 1) *
                         mono_sym(F, static_cast<long long>(rng() % 3) - 1,
                                  static_cast<long long>(rng() % 3) - 1);
        a.c01[S.ray_curve(r)] = s;
    }
    for (int c = 0; c < S.fan().num_cones(); ++c) {
        if (rng() % 2) continue;
        a.c02[ClosedPt::fixed(c)] = mono_sym(F, static_cast<long long>(rng() % 3) - 1, 0) *
                                    mono_sym(F, 0, static_cast<long long>(rng() % 3) - 1);
        auto [x, y] = S.fan().cone_rays(c);
        int r = rng() % 2 ? x : y;
        // the flag component must be integral along its curve: entries are
        // powers of the coordinate transverse to the ray
        auto u = S.fan().rays[r];
        long long k1 = static_cast<long long>(rng() % 3) - 1;
        long long k2 = static_cast<long long>(rng() % 3) - 1;
        a.c12[{ClosedPt::fixed(c), S.ray_curve(r), 0}] =
            mono_sym(F, -u[1] * k1, u[0] * k1) * mono_sym(F, -u[1] * k2, u[0] * k2);
    }
    return a;
}

}  // namespace

TEST_CASE("the idele differentials compose to zero") {
    auto Q = ConstField::rationals();
    std::mt19937_64 rng(11);
    for (long long n : {0, 1, 2, 5}) {
        Surface S = Surface::toric(hirzebruch(n), Q);
        for (int trial = 0; trial < 10; ++trial) {
            Idele0 a = random_idele0(S, rng);
            Idele2 dd = idele_differential_1(S, idele_differential_0(S, a));
            CHECK(dd.c012.empty());
        }
        // the diagonal idele of a global symbol is a cocycle
        Idele0 diag(1);
        diag.eta = mono_sym(Q, 1, -2);
        for (int r = 0; r < S.fan().num_rays(); ++r) diag.at_y[S.ray_curve(r)] = diag.eta;
        for (int c = 0; c < S.fan().num_cones(); ++c) diag.at_x[ClosedPt::fixed(c)] = diag.eta;
        Idele1 d = idele_differential_0(S, diag);
        CHECK(d.c01.empty());
        CHECK(d.c02.empty());
        CHECK(d.c12.empty());
    }
}

TEST_CASE("a constant global component maps to evaluation-neutral components") {
    auto Q = ConstField::rationals();
    Surface S = Surface::toric(hirzebruch(1), Q);
    Idele0 a(1);
    a.eta = MilnorSymbol::unit(FnElem(Fact2(FieldElem(Q, 7))));
    Idele1 d = idele_differential_0(S, a);
    for (auto& [y, s] : d.c01) CHECK(tame_symbol(S.curve_place(y), s).int_value() == 0);
    for (auto& [k, s] : d.c12) CHECK(tame_symbol(S.curve_place(k.y), s).int_value() == 0);
}

TEST_CASE("a single-flag idele passes through the differential unchanged") {
    auto Q = ConstField::rationals();
    Surface S = Surface::toric(hirzebruch(2), Q);
    Idele1 a(2);
    BranchKey k{ClosedPt::fixed(2), S.ray_curve(2), 0};
    a.c12[k] = mono_sym(Q, 1, 0) * mono_sym(Q, 0, 1);
    Idele2 d = idele_differential_1(S, a);
    REQUIRE(d.c012.count(k) == 1);
    CHECK(d.c012.at(k) == a.c12.at(k));
}

TEST_CASE("theta of an idele coboundary is a cycle boundary") {
    auto Q = ConstField::rationals();
    std::mt19937_64 rng(123);
    for (long long n : {1, 2}) {
        Surface S = Surface::toric(hirzebruch(n), Q);
        for (int trial = 0; trial < 10; ++trial) {
            Idele1 a = random_idele1(S, rng);
            Cycle z = theta_ideles_to_gersten(S, idele_differential_1(S, a));
            CHECK(pushforward_degree(S, z) == 0);
        }
    }
}

TEST_CASE("theta on the Hirzebruch single-flag computation") {
    auto Q = ConstField::rationals();
    for (long long n : {1, 2, 3}) {
        Surface S = Surface::toric(hirzebruch(n), Q);
        // the flag (fixed point of sigma_2, branch of the ray-(-1,n) curve)
        Idele2 a(2);
        a.c012[{ClosedPt::fixed(2), S.ray_curve(2), 0}] =
            MilnorSymbol::of({FnElem(Fact2::monomial(Q, n, 0)), FnElem(Fact2::monomial(Q, -n, -1))});
        Cycle z = theta_ideles_to_gersten(S, a);
        REQUIRE(z.point_part().size() == 1);
        CHECK(z.point_part().begin()->first == ClosedPt::fixed(2));
        CHECK(z.point_part().begin()->second.int_value() == -n);
        // neutral input gives zero
        Idele2 zero(2);
        CHECK(theta_ideles_to_gersten(S, zero).is_zero());
    }
}

TEST_CASE("phi sends a divisor cycle to a valid idele cocycle") {
    auto Q = ConstField::rationals();
    std::mt19937_64 rng(55);
    for (long long n : {0, 2, 3}) {
        Surface S = Surface::toric(hirzebruch(n), Q);
        for (int trial = 0; trial < 8; ++trial) {
            ToricDivisor d;
            for (int r = 0; r < 4; ++r) {
                long long c = static_cast<long long>(rng() % 5) - 2;
                if (c != 0) d.coeffs[r] = c;
            }
            Idele1 a = phi_gersten_to_ideles(S, divisor_cycle(S, d));
            // cocycle: the second differential vanishes after evaluation
            Idele2 da = idele_differential_1(S, a);
            for (auto& [k, s] : da.c012) {
                // components are K_1 symbols; triviality is decidable
                CHECK(s.is_trivial());
            }
            // the 12-components are integral along their curve
            for (auto& [k, s] : a.c12)
                CHECK(tame_symbol(S.curve_place(k.y), s).int_value() == 0);
        }
        // the zero divisor gives the neutral idele
        Idele1 z = phi_gersten_to_ideles(S, divisor_cycle(S, ToricDivisor{}));
        CHECK(z.c01.empty());
        CHECK(z.c02.empty());
        CHECK(z.c12.empty());
    }
}

TEST_CASE("phi of a principal divisor is cohomologous to the diagonal") {
    // c = boundary of [eta, {f}] with f a monomial: phi(c) differs from the
    // diagonal image of f by the image of an explicit degree-0 idele.
    auto Q = ConstField::rationals();
    Surface S = Surface::toric(hirzebruch(2), Q);
    FnElem f = FnElem(Fact2::monomial(Q, 1, 1));  // X*Y
    Cycle de = boundary(S, Cycle::at_generic(1, MilnorSymbol::unit(f)));
    Idele1 phi = phi_gersten_to_ideles(S, de);

    // b: comp_y = f * pi_y^{-n_y}, comp_x = f * c_sigma^{-1}; both integral
    ToricDivisor d;
    for (auto& [y, s] : de.curve_part()) d.coeffs[S.ray_of(y)] = s.int_value();
    CartierData cd = cartier_data(S.fan(), d);
    Idele0 b(1);
    for (auto& [y, s] : de.curve_part()) {
        FnElem pi = S.curve_place(y).uniformizer();
        b.at_y[y] = MilnorSymbol::unit(f * pi.pow(-s.int_value()));
    }
    for (int c = 0; c < S.fan().num_cones(); ++c) {
        FnElem csig = FnElem(Fact2::monomial(Q, cd.m[c][0], cd.m[c][1]));
        b.at_x[ClosedPt::fixed(c)] = MilnorSymbol::unit(f * csig.inverse());
    }
    Idele1 db = idele_differential_0(S, b);

    // phi(c) + d(b) must equal the diagonal image of f, componentwise in K_1
    auto k1_eq = [](const MilnorSymbol& s, const FnElem& want) {
        if (s.is_formally_zero()) return want.is_one();
        return s.k1_value() == want;
    };
    for (int r = 0; r < 4; ++r) {
        CurveId y = S.ray_curve(r);
        CHECK(k1_eq(phi.get01(y) + db.get01(y), f));
    }
    for (int c = 0; c < 4; ++c) {
        ClosedPt x = ClosedPt::fixed(c);
        CHECK(k1_eq(phi.get02(x) + db.get02(x), f));
        auto [ra, rb] = S.fan().cone_rays(c);
        for (int r : {ra, rb}) {
            BranchKey k{x, S.ray_curve(r), 0};
            CHECK(k1_eq(phi.get12(k) + db.get12(k), FnElem(FieldElem::one(Q))));
        }
    }
}

TEST_CASE("vee product is supported on shared flags") {
    auto Q = ConstField::rationals();
    Surface S = Surface::toric(hirzebruch(1), Q);
    Idele1 e(1), f(1);
    e.c01[S.ray_curve(1)] = mono_sym(Q, 0, 1);
    f.c12[{ClosedPt::fixed(1), S.ray_curve(1), 0}] = mono_sym(Q, 1, 0);
    f.c12[{ClosedPt::fixed(2), S.ray_curve(2), 0}] = mono_sym(Q, 1, 0);
    Idele2 p = vee_product(S, e, f);
    REQUIRE(p.c012.size() == 1);
    CHECK(p.c012.begin()->first == BranchKey{ClosedPt::fixed(1), S.ray_curve(1), 0});
    // neutral first factor gives the neutral product
    Idele1 neutral(1);
    CHECK(vee_product(S, neutral, f).c012.empty());
}

TEST_CASE("tau sends the line-bundle cocycle to the expected idele") {
    auto Q = ConstField::rationals();
    long long n = 2;
    Surface S = Surface::toric(hirzebruch(n), Q);
    SymCochain c = line_bundle_cocycle(S, cartier_data(S.fan(), ToricDivisor::ray(1)));
    Idele1 t = tau_cech_to_ideles(c);
    // f~01 at V_1-bar (ray 2, owner 1) is -c_{01} = {X^-n}
    CHECK(t.get01(S.ray_curve(2)).k1_value() == FnElem(Fact2::monomial(Q, -n, 0)));
    // f~12 at the sigma_2 fixed point along ray 2 is -c_{12} = {X^n Y}
    CHECK(t.get12({ClosedPt::fixed(2), S.ray_curve(2), 0}).k1_value() ==
          FnElem(Fact2::monomial(Q, n, 1)));
    // curves owned by the eta-chart carry neutral components
    CHECK(t.get01(S.ray_curve(0)).is_formally_zero());
    CHECK(t.get01(S.ray_curve(1)).is_formally_zero());
}

TEST_CASE("tau of a coboundary is an idele coboundary") {
    auto Q = ConstField::rationals();
    std::mt19937_64 rng(77);
    for (long long n : {0, 2}) {
        Surface S = Surface::toric(hirzebruch(n), Q);
        for (int trial = 0; trial < 6; ++trial) {
            // random 0-cochain: constants per chart (units of A^2)
            SymCochain g(0, 1, &S);
            std::vector<MilnorSymbol> gs;
            for (int a = 0; a < S.num_opens(); ++a) {
                long long v = 2 + static_cast<long long>(rng() % 5);
                MilnorSymbol s = MilnorSymbol::of({FnElem(Fact2(FieldElem(Q, v)))});
                g.set({a}, s);
                gs.push_back(s);
            }
            Idele1 lhs = tau_cech_to_ideles(cech_differential(g));
            // the matching degree-0 idele: the negated owner-selected sections
            Idele0 b(1);
            b.eta = -gs[S.owner_of_generic()];
            for (int r = 0; r < S.fan().num_rays(); ++r)
                b.at_y[S.ray_curve(r)] = -gs[S.owner_of_curve(S.ray_curve(r))];
            for (int c2 = 0; c2 < S.fan().num_cones(); ++c2)
                b.at_x[ClosedPt::fixed(c2)] = -gs[S.owner_of_point(ClosedPt::fixed(c2))];
            Idele1 rhs = idele_differential_0(S, b);
            for (int r = 0; r < 4; ++r)
                CHECK((lhs.get01(S.ray_curve(r)) - rhs.get01(S.ray_curve(r))).is_trivial());
            for (int c2 = 0; c2 < 4; ++c2) {
                ClosedPt x = ClosedPt::fixed(c2);
                CHECK((lhs.get02(x) - rhs.get02(x)).is_trivial());
            }
        }
    }
}

TEST_CASE("reciprocity constraint: diagonal passes, the puncture example fails") {
    auto F5 = ConstField::prime(5);
    Surface a2 = Surface::affine_plane(F5);

    // diagonal image of a global symbol satisfies the constraint
    Idele1 diag(2);
    MilnorSymbol xy = MilnorSymbol::of({FnElem(Fact2::monomial(F5, 1, 0)),
                                        FnElem(Fact2::monomial(F5, 0, 1))});
    diag.c01[CurveId{0}] = xy;
    diag.c01[CurveId{1}] = xy;
    CHECK(check_reciprocity_constraint(a2, diag));

    // the puncture counterexample: {X, Y} along the curve X = 0 only
    Idele1 bad(2);
    bad.c01[CurveId{0}] = xy;
    auto defects = reciprocity_defects(a2, bad);
    REQUIRE(defects.size() == 1);
    ClosedPt origin = ClosedPt::rational(FieldElem::zero(F5), FieldElem::zero(F5));
    CHECK(defects.begin()->first == origin.key());
    CHECK(defects.begin()->second == 1);
    CHECK_FALSE(check_reciprocity_constraint(a2, bad));

    // the neutral idele passes
    Idele1 neutral(2);
    CHECK(check_reciprocity_constraint(a2, neutral));
}

TEST_CASE("product compatibility: theta(tau g vee tau h) equals lambda(g cup h)") {
    auto Q = ConstField::rationals();
    for (long long n : {0, 1, 2, 3}) {
        Surface S = Surface::toric(hirzebruch(n), Q);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                SymCochain g = line_bundle_cocycle(S, cartier_data(S.fan(), ToricDivisor::ray(i)));
                SymCochain h = line_bundle_cocycle(S, cartier_data(S.fan(), ToricDivisor::ray(j)));
                Cycle via_ideles = theta_ideles_to_gersten(S, vee_product(S, tau_cech_to_ideles(g),
                                                                          tau_cech_to_ideles(h)));
                Cycle via_cech = lambda_cech_to_gersten(cup(g, h));
                CHECK(via_ideles == via_cech);
            }
    }
}
