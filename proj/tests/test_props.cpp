#include "doctest.h"

#include "tame/toric.hpp"

#include <random>

using namespace tame;

TEST_CASE("valued-field handle invariants: v(pi) = 1, v multiplicative, unit residues") {
    auto F5 = ConstField::prime(5);
    auto Q = ConstField::rationals();
    std::vector<Place> places = {
        Place::p1_finite(UniPoly::variable(F5)),
        Place::p1_infinite(F5),
        Place::ray(Q, {-1, 3}),
        Place::principal(BiPoly::X(F5),
                         CurveParam{{UniPoly::zero(F5), UniPoly::constant(FieldElem::one(F5))},
                                    {UniPoly::variable(F5), UniPoly::constant(FieldElem::one(F5))}}),
    };
    for (const Place& v : places) {
        FnElem pi = v.uniformizer();
        CHECK(v.valuation(pi) == 1);
        // v(ab) = v(a) + v(b) on powers of the uniformizer times units
        CHECK(v.valuation(pi.pow(3)) == 3);
        CHECK(v.valuation(pi.pow(-2) * pi.pow(5)) == 3);
        // residues of units are nonzero by construction (FnElem excludes 0);
        // check a unit residue is not 1 for some unit
        if (v.kind() == Place::Kind::ray) {
            FnElem s_unit = FnElem(Fact2::monomial(Q, 3, 1));  // <(-1,3),(3,1)> = 0
            CHECK(v.valuation(s_unit) == 0);
            CHECK_FALSE(v.residue(s_unit).is_one());
        }
    }
}

TEST_CASE("monomial_valuation is additive in the monomial argument") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        long long a1 = static_cast<long long>(rng() % 9) - 4, b1 = static_cast<long long>(rng() % 9) - 4;
        long long a2 = static_cast<long long>(rng() % 9) - 4, b2 = static_cast<long long>(rng() % 9) - 4;
        std::array<long long, 2> u{1, static_cast<long long>(rng() % 5)};
        CHECK(monomial_valuation(u, a1 + a2, b1 + b2) ==
              monomial_valuation(u, a1, b1) + monomial_valuation(u, a2, b2));
    }
}

TEST_CASE("boundary commutes with multilinear expansion of entries") {
    auto F5 = ConstField::prime(5);
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 15; ++trial) {
        Surface a2 = Surface::affine_plane(F5);
        // a symbol whose first slot factors as a product of two visible pieces
        long long c = 1 + static_cast<long long>(rng() % 4);
        BiPoly lin = BiPoly::term(F5, 1, 0, FieldElem(F5, 1)) +
                     BiPoly::term(F5, 0, 0, FieldElem(F5, c));
        FnElem p1 = FnElem(Fact2::monomial(F5, 1 + static_cast<long long>(rng() % 2), 0));
        FnElem p2 = FnElem(Fact2::from_poly(lin));
        FnElem q = FnElem(Fact2::monomial(F5, 0, 1 + static_cast<long long>(rng() % 2)));
        MilnorSymbol s = MilnorSymbol::of({p1 * p2, q});
        MilnorSymbol e = multilinear_expand(s, 0, {{p1, 1}, {p2, 1}});
        a2.curve_of_prime(lin);
        Cycle bs = boundary(a2, Cycle::at_generic(2, s));
        Cycle be = boundary(a2, Cycle::at_generic(2, e));
        // the boundaries agree curvewise in K_1
        for (auto& [y, sym] : bs.curve_part()) {
            auto it = be.curve_part().find(y);
            FnElem lhs = sym.k1_value();
            if (it == be.curve_part().end()) CHECK(lhs.is_one());
            else CHECK(lhs == it->second.k1_value());
        }
        for (auto& [y, sym] : be.curve_part()) CHECK(bs.curve_part().count(y) == 1);
        // and pointwise after a second boundary
        CHECK(boundary(a2, bs) == boundary(a2, be));
    }
}

TEST_CASE("vee products with coboundaries are cycle boundaries") {
    auto Q = ConstField::rationals();
    std::mt19937_64 rng(123);
    Surface S = Surface::toric(hirzebruch(2), Q);
    for (int trial = 0; trial < 8; ++trial) {
        // e: the image of a divisor under phi (a cocycle)
        ToricDivisor d;
        for (int r = 0; r < 4; ++r) {
            long long a = static_cast<long long>(rng() % 5) - 2;
            if (a) d.coeffs[r] = a;
        }
        Idele1 e = phi_gersten_to_ideles(S, divisor_cycle(S, d));
        // d(b) for a degree-0 idele with unit comp_y entries
        Idele0 b(1);
        b.eta = MilnorSymbol::unit(FnElem(Fact2::monomial(Q, static_cast<long long>(rng() % 3) - 1,
                                                          static_cast<long long>(rng() % 3) - 1)));
        for (int r = 0; r < 4; ++r) {
            auto u = S.fan().rays[r];
            long long k = static_cast<long long>(rng() % 3) - 1;
            b.at_y[S.ray_curve(r)] = MilnorSymbol::unit(FnElem(Fact2::monomial(Q, -u[1] * k, u[0] * k)));
        }
        Idele1 db = idele_differential_0(S, b);
        CHECK(pushforward_degree(S, theta_ideles_to_gersten(S, vee_product(S, db, e))) == 0);
        CHECK(pushforward_degree(S, theta_ideles_to_gersten(S, vee_product(S, e, db))) == 0);
    }
}

TEST_CASE("sigma decomposition of abstract covers") {
    // single-open cover: everything belongs to the only open
    AbstractCover single;
    single.opens = 1;
    single.points = 4;
    single.member = {{true, true, true, true}};
    for (int p = 0; p < 4; ++p) CHECK(single.owner(p) == 0);

    // overlapping opens: the smallest index wins
    AbstractCover two;
    two.opens = 2;
    two.points = 3;
    two.member = {{true, true, false}, {false, true, true}};
    CHECK(two.owner(0) == 0);
    CHECK(two.owner(1) == 0);
    CHECK(two.owner(2) == 1);

    // a point in no open is a validation error
    AbstractCover bad;
    bad.opens = 1;
    bad.points = 1;
    bad.member = {{false}};
    CHECK_THROWS(bad.validate());

    // the partition refines the cover: Sigma_a is contained in U_a
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        AbstractCover U;
        U.opens = 3;
        U.points = 6;
        U.member.assign(3, std::vector<bool>(6, false));
        for (int p = 0; p < 6; ++p) U.member[rng() % 3][p] = true;
        for (int p = 0; p < 6; ++p) CHECK(U.in(U.owner(p), p));
    }
}
