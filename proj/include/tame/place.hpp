#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tame/fnelem.hpp"

namespace tame {

/// Parametrization of a rational curve in the plane, t -> (x(t), y(t)),
/// with each coordinate a rational function given as numerator/denominator.
struct CurveParam {
    std::pair<UniPoly, UniPoly> x, y;

    Fact1 x_fact() const { return Fact1::from_parts(x.first, x.second); }
    Fact1 y_fact() const { return Fact1::from_parts(y.first, y.second); }
};

/// A discrete valuation datum: valuation, residue map on units, uniformizer,
/// residue field. Four concrete classes are provided:
///   - finite place (p(t)) of k(t), and the place at infinity (s = 1/t chart);
///   - monomial valuation along a ray of a fan, acting on plane functions;
///   - divisorial valuation at a прime h(X, Y) with a rational parametrization.
class Place {
  public:
    enum class Kind { p1_finite, p1_infinite, ray, principal };

    static Place p1_finite(UniPoly p) {
        if (p.degree() < 1) throw std::invalid_argument("place: modulus must be non-constant");
        Place v;
        v.kind_ = Kind::p1_finite;
        v.field_ = p.field();
        v.p_ = p.monic();
        return v;
    }
    static Place p1_infinite(FieldPtr F) {
        Place v;
        v.kind_ = Kind::p1_infinite;
        v.field_ = std::move(F);
        return v;
    }
    /// Monomial valuation along the primitive ray u. The residue coordinate s
    /// is the character of `ms`; `ms` must generate the orthogonal lattice of
    /// u. If not supplied, (-u2, u1) is used.
    static Place ray(FieldPtr F, std::array<long long, 2> u,
                     std::optional<std::array<long long, 2>> ms = std::nullopt) {
        if (u[0] == 0 && u[1] == 0) throw std::invalid_argument("ray: zero vector");
        long long g = gcd_ll(u[0] < 0 ? -u[0] : u[0], u[1] < 0 ? -u[1] : u[1]);
        if (g != 1) throw std::invalid_argument("ray: vector not primitive");
        Place v;
        v.kind_ = Kind::ray;
        v.field_ = std::move(F);
        v.u_ = u;
        v.ms_ = ms ? *ms : std::array<long long, 2>{-u[1], u[0]};
        if (v.u_[0] * v.ms_[0] + v.u_[1] * v.ms_[1] != 0)
            throw std::invalid_argument("ray: ms not orthogonal to u");
        // m_pi with <u, m_pi> = 1 via the extended Euclid relation
        auto [a, b] = bezout(u[0], u[1]);
        v.mpi_ = {a, b};
        return v;
    }
    static Place principal(BiPoly h, std::optional<CurveParam> param) {
        if (h.is_zero() || h.is_constant())
            throw std::invalid_argument("principal place: constant polynomial");
        Place v;
        v.kind_ = Kind::principal;
        v.field_ = h.field();
        int mx = h.min_deg_x(), my = h.min_deg_y();
        bool is_axis = (h == BiPoly::X(h.field())) || (h == BiPoly::Y(h.field()));
        if (!is_axis && (mx > 0 || my > 0))
            throw std::invalid_argument("principal place: polynomial has a monomial factor");
        v.h_ = h.scale(h.lead_coeff().inverse());
        v.param_ = std::move(param);
        if (v.param_) {
            auto val = v.h_.eval_rational(v.param_->x, v.param_->y);
            if (!val.first.is_zero())
                throw std::invalid_argument("principal place: parametrization does not satisfy h = 0");
        }
        return v;
    }

    Kind kind() const { return kind_; }
    const FieldPtr& constants() const { return field_; }
    const UniPoly& p1_modulus() const { return p_; }
    const std::array<long long, 2>& ray_vector() const { return u_; }
    const BiPoly& prime() const { return h_; }
    bool has_param() const { return param_.has_value(); }
    const CurveParam& param() const { return *param_; }

    /// The Z-valued valuation of a nonzero element.
    long long valuation(const FnElem& f) const {
        switch (kind_) {
            case Kind::p1_finite: {
                if (f.is_scalar()) return 0;
                const Fact1 g = f.as_uni();
                long long v = 0;
                for (auto& [base, e] : g.bases()) v += e * mult_in(base);
                return v;
            }
            case Kind::p1_infinite:
                return f.is_scalar() ? 0 : -f.as_uni().degree();
            case Kind::ray: {
                if (f.is_scalar()) return 0;
                const Fact2& g = f.as_bi();
                long long v = pair_u(g.ex(), g.ey());
                for (auto& [base, e] : g.bases()) v += e * min_level(base);
                return v;
            }
            case Kind::principal: {
                if (f.is_scalar()) return 0;
                const Fact2& g = f.as_bi();
                if (h_ == BiPoly::X(field_)) return g.ex();
                if (h_ == BiPoly::Y(field_)) return g.ey();
                long long v = 0;
                for (auto& [base, e] : g.bases()) {
                    if (base == h_) v += e;
                    else check_coprime(base);
                }
                return v;
            }
        }
        throw std::logic_error("unreachable");
    }

    /// Residue of a v-unit into the residue field: a constant-field element for
    /// places of k(t), a univariate function (coordinate s resp. t) for
    /// divisorial valuations on the plane.
    FnElem residue(const FnElem& f) const {
        if (valuation(f) != 0) throw std::domain_error("residue: element is not a unit at the place");
        switch (kind_) {
            case Kind::p1_finite: {
                if (f.is_scalar()) return FnElem(embed(f.scalar()));
                const Fact1& g = f.as_uni();
                FieldElem r = embed(g.unit());
                for (auto& [base, e] : g.bases()) {
                    if (mult_in(base) != 0) continue;  // cancels in a unit only with itself
                    r = r * reduce(base).pow(e);
                }
                return FnElem(r);
            }
            case Kind::p1_infinite: {
                // leading-coefficient chart s = 1/t: the unit's value at s = 0
                if (f.is_scalar()) return f;
                return FnElem(f.as_uni().unit());
            }
            case Kind::ray: {
                if (f.is_scalar()) return FnElem(Fact1(f.scalar(), 's'));
                const Fact2& g = f.as_bi();
                Fact1 r(g.unit(), 's');
                r = r * monomial_image(g.ex(), g.ey());
                for (auto& [base, e] : g.bases()) r = r * base_image(base).pow(e);
                return FnElem(r);
            }
            case Kind::principal: {
                if (!param_) throw std::domain_error("residue: curve carries no parametrization");
                if (f.is_scalar()) return FnElem(Fact1(f.scalar()));
                const Fact2& g = f.as_bi();
                Fact1 r(g.unit());
                if (g.ex() != 0) r = r * param_->x_fact().pow(g.ex());
                if (g.ey() != 0) r = r * param_->y_fact().pow(g.ey());
                for (auto& [base, e] : g.bases()) {
                    if (base == h_) continue;  // cancels within a unit
                    auto val = base.eval_rational(param_->x, param_->y);
                    if (val.first.is_zero())
                        throw std::domain_error("residue: base vanishes on the curve but is not the prime");
                    r = r * Fact1::from_parts(val.first, val.second).pow(e);
                }
                return FnElem(r);
            }
        }
        throw std::logic_error("unreachable");
    }

    FnElem uniformizer() const {
        switch (kind_) {
            case Kind::p1_finite: {
                Fact1 f(FieldElem::one(field_));
                return FnElem(f * Fact1::from_poly(p_));
            }
            case Kind::p1_infinite:
                return FnElem(Fact1::variable(field_).inverse());
            case Kind::ray:
                return FnElem(Fact2::monomial(field_, mpi_[0], mpi_[1]));
            case Kind::principal: {
                if (h_ == BiPoly::X(field_)) return FnElem(Fact2::monomial(field_, 1, 0));
                if (h_ == BiPoly::Y(field_)) return FnElem(Fact2::monomial(field_, 0, 1));
                return FnElem(Fact2::from_poly(h_));
            }
        }
        throw std::logic_error("unreachable");
    }

    /// True when the residue field is a constant field (places of k(t)); for
    /// divisorial valuations on the plane the residue field is a curve
    /// function field and this returns false.
    bool residue_is_constant() const {
        return kind_ == Kind::p1_finite || kind_ == Kind::p1_infinite;
    }

    /// Residue field of a place of k(t). Towers over extension constant
    /// fields and number fields over Q are rejected.
    FieldPtr residue_field() const {
        if (!residue_is_constant())
            throw std::domain_error("residue_field: residue field is not a constant field");
        if (kind_ == Kind::p1_infinite || p_.degree() == 1) return field_;
        if (field_->kind() != ConstField::Kind::prime)
            throw std::domain_error("residue_field: extension residues supported over prime fields only");
        std::vector<long long> mod;
        for (int i = 0; i <= p_.degree(); ++i) mod.push_back(p_.coeff(i).prime_value());
        return ConstField::extension(field_->p(), mod);
    }

    /// [kappa(v) : k] for places of k(t).
    long long residue_degree() const {
        if (!residue_is_constant())
            throw std::domain_error("residue_degree: not a constant-field place");
        return kind_ == Kind::p1_infinite ? 1 : p_.degree();
    }

    friend bool operator==(const Place& a, const Place& b) {
        if (a.kind_ != b.kind_ || *a.field_ != *b.field_) return false;
        switch (a.kind_) {
            case Kind::p1_finite: return a.p_ == b.p_;
            case Kind::p1_infinite: return true;
            case Kind::ray: return a.u_ == b.u_;
            case Kind::principal: return a.h_ == b.h_;
        }
        return false;
    }
    friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }

    std::string to_string() const {
        switch (kind_) {
            case Kind::p1_finite: return "(" + p_.to_string() + ")";
            case Kind::p1_infinite: return "inf";
            case Kind::ray:
                return "ray(" + std::to_string(u_[0]) + "," + std::to_string(u_[1]) + ")";
            case Kind::principal: return "(" + h_.to_string() + ")";
        }
        return "?";
    }

  private:
    Kind kind_ = Kind::p1_infinite;
    FieldPtr field_;
    UniPoly p_;                        // p1_finite
    std::array<long long, 2> u_{}, ms_{}, mpi_{};  // ray
    BiPoly h_;                         // principal
    std::optional<CurveParam> param_;  // principal

    static long long gcd_ll(long long a, long long b) {
        while (b) { long long t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
    static std::pair<long long, long long> bezout(long long a, long long b) {
        // returns (x, y) with a*x + b*y = 1 for coprime a, b
        long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
        while (b) {
            long long q = a / b;
            long long r = a - q * b;
            a = b; b = r;
            long long nx = x0 - q * x1, ny = y0 - q * y1;
            x0 = x1; y0 = y1; x1 = nx; y1 = ny;
        }
        if (a == -1) { x0 = -x0; y0 = -y0; }
        return {x0, y0};
    }

    long long pair_u(long long a, long long b) const { return u_[0] * a + u_[1] * b; }
    long long pair_ms(long long a, long long b) const {
        // the coordinate of (a, b) - w*m_pi in the basis element ms
        long long w = pair_u(a, b);
        long long ra = a - w * mpi_[0], rb = b - w * mpi_[1];
        if (ms_[0] != 0) {
            if (ra % ms_[0] != 0 || rb != (ra / ms_[0]) * ms_[1])
                throw std::logic_error("ray: lattice decomposition failed");
            return ra / ms_[0];
        }
        if (rb % ms_[1] != 0 || ra != 0) throw std::logic_error("ray: lattice decomposition failed");
        return rb / ms_[1];
    }
    long long min_level(const BiPoly& f) const {
        bool first = true;
        long long m = 0;
        for (auto& [k, v] : f.terms()) {
            long long l = pair_u(k.first, k.second);
            if (first || l < m) { m = l; first = false; }
        }
        return m;
    }
    /// Image of the monomial X^a Y^b divided by pi^<u,(a,b)> on the residue curve.
    Fact1 monomial_image(long long a, long long b) const {
        Fact1 s = Fact1::variable(field_, 's');
        return s.pow(pair_ms(a, b));
    }
    /// Image of a base polynomial: lowest-level part mapped to the s-line.
    Fact1 base_image(const BiPoly& f) const {
        long long w = min_level(f);
        long long jmin = 0;
        bool first = true;
        std::vector<std::pair<long long, FieldElem>> img;
        for (auto& [k, v] : f.terms()) {
            if (pair_u(k.first, k.second) != w) continue;
            long long j = pair_ms(k.first, k.second);
            img.emplace_back(j, v);
            if (first || j < jmin) { jmin = j; first = false; }
        }
        long long jmax = jmin;
        for (auto& [j, v] : img) jmax = std::max(jmax, j);
        std::vector<FieldElem> coeffs(jmax - jmin + 1, FieldElem::zero(field_));
        for (auto& [j, v] : img) coeffs[j - jmin] = coeffs[j - jmin] + v;
        UniPoly poly(field_, std::move(coeffs));
        Fact1 r = Fact1::from_poly(poly, 's');
        return r * Fact1::variable(field_, 's').pow(jmin);
    }

    long long mult_in(const UniPoly& base) const {
        if (base == p_) return 1;
        if (field_->is_finite()) return 0;  // distinct irreducible factors
        UniPoly g = poly_gcd(base, p_);
        if (g.degree() > 0)
            throw std::domain_error("place: factored form over Q required (base shares a factor with the place)");
        return 0;
    }
    /// Reduce a base polynomial coprime to p into kappa(p).
    FieldElem reduce(const UniPoly& base) const {
        UniPoly r = base % p_;
        if (p_.degree() == 1) return r.coeff(0);
        FieldPtr K = residue_field();
        std::vector<long long> c;
        for (int i = 0; i <= r.degree(); ++i) c.push_back(r.coeff(i).prime_value());
        return FieldElem(K, std::move(c));
    }
    FieldElem embed(const FieldElem& c) const {
        if (kind_ == Kind::p1_infinite || p_.degree() == 1) return c;
        FieldPtr K = residue_field();
        return FieldElem(K, std::vector<long long>{c.is_zero() ? 0 : c.prime_value()});
    }
    void check_coprime(const BiPoly& base) const {
        if (base == h_) return;
        const FieldPtr& F = field_;
        bool axis = (h_ == BiPoly::X(F)) || (h_ == BiPoly::Y(F));
        if (axis) return;  // bases carry no monomial factors
        int hy = h_.deg_y(), by = base.deg_y();
        if (hy == 0 && by == 0) {
            // both univariate in X
            auto hx = h_.coeffs_in_y()[0], bx = base.coeffs_in_y()[0];
            if (poly_gcd(hx, bx).degree() > 0)
                throw std::domain_error("place: declared primes are not pairwise coprime");
            return;
        }
        if (hy == 0 || by == 0) return;  // an irreducible with positive Y-degree has trivial content
        if (resultant_y(h_, base).is_zero())
            throw std::domain_error("place: declared primes are not pairwise coprime");
    }
};

}  // namespace tame
