#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tame/funcfield.hpp"

namespace tame {

/// A complete smooth fan in Z^2: primitive rays in strict counterclockwise
/// order, maximal cones spanned by adjacent ray pairs with determinant 1.
struct Fan2D {
    std::vector<std::array<long long, 2>> rays;

    Fan2D() = default;
    explicit Fan2D(std::vector<std::array<long long, 2>> r) : rays(std::move(r)) { validate(); }

    int num_rays() const { return static_cast<int>(rays.size()); }
    int num_cones() const { return static_cast<int>(rays.size()); }
    /// Cone i is spanned by rays i and i+1 (cyclically).
    std::pair<int, int> cone_rays(int cone) const {
        return {cone, (cone + 1) % num_rays()};
    }
    bool ray_in_cone(int ray, int cone) const {
        auto [a, b] = cone_rays(cone);
        return ray == a || ray == b;
    }
    /// The two maximal cones adjacent to a ray: (previous, next) in the
    /// cyclic order; the residue coordinate s of the invariant curve
    /// vanishes at the fixed point of the next cone.
    std::pair<int, int> cones_of_ray(int ray) const {
        int prev = (ray + num_rays() - 1) % num_rays();
        return {prev, ray};
    }

    void validate() const {
        int n = num_rays();
        if (n < 3) throw std::invalid_argument("fan: a complete fan needs at least 3 rays");
        auto det = [&](int i, int j) {
            return rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0];
        };
        for (int i = 0; i < n; ++i) {
            auto [a, b] = std::pair<int, int>{i, (i + 1) % n};
            long long d = det(a, b);
            if (d != 1)
                throw std::invalid_argument("fan: cone (" + std::to_string(a) + "," +
                                            std::to_string(b) +
                                            ") is not smooth and positively oriented (det != 1)");
            long long g = [](long long x, long long y) {
                x = x < 0 ? -x : x; y = y < 0 ? -y : y;
                while (y) { long long t = x % y; x = y; y = t; }
                return x;
            }(rays[i][0], rays[i][1]);
            if (g != 1) throw std::invalid_argument("fan: ray is not primitive");
        }
    }
};

/// The Hirzebruch surface F_n: rays (1,0), (0,1), (-1,n), (0,-1).
inline Fan2D hirzebruch(long long n) {
    if (n < 0) throw std::invalid_argument("hirzebruch: n must be nonnegative (apply a lattice automorphism)");
    return Fan2D({{1, 0}, {0, 1}, {-1, n}, {0, -1}});
}
/// The projective plane: rays (1,0), (0,1), (-1,-1).
inline Fan2D projective_plane() { return Fan2D({{1, 0}, {0, 1}, {-1, -1}}); }

/// Identifier of a height-1 point: an index into the surface's curve table.
struct CurveId {
    int index = -1;
    friend bool operator==(CurveId a, CurveId b) { return a.index == b.index; }
    friend bool operator!=(CurveId a, CurveId b) { return !(a == b); }
    friend bool operator<(CurveId a, CurveId b) { return a.index < b.index; }
};

/// A closed point of the surface. Torus-fixed points are indexed by cones;
/// points with rational coordinates merge across curves; other points are
/// identified by (curve, place of the curve's function field).
struct ClosedPt {
    enum class Kind { fixed, rational, on_curve };
    Kind kind = Kind::fixed;
    int cone = -1;            // fixed
    FieldElem cx, cy;         // rational
    int curve = -1;           // on_curve
    bool place_inf = false;   // on_curve
    UniPoly place_poly;       // on_curve (monic irreducible over the curve coordinate)

    static ClosedPt fixed(int cone) {
        ClosedPt p; p.kind = Kind::fixed; p.cone = cone; return p;
    }
    static ClosedPt rational(FieldElem x, FieldElem y) {
        ClosedPt p; p.kind = Kind::rational; p.cx = std::move(x); p.cy = std::move(y); return p;
    }
    static ClosedPt on_curve(int curve, const Place& pl) {
        ClosedPt p; p.kind = Kind::on_curve; p.curve = curve;
        if (pl.kind() == Place::Kind::p1_infinite) p.place_inf = true;
        else p.place_poly = pl.p1_modulus();
        return p;
    }

    std::string key() const {
        switch (kind) {
            case Kind::fixed: return "x" + std::to_string(cone);
            case Kind::rational: return "(" + cx.to_string() + "," + cy.to_string() + ")";
            case Kind::on_curve:
                return "c" + std::to_string(curve) + ":" +
                       (place_inf ? "inf" : place_poly.to_string());
        }
        return "?";
    }
    friend bool operator==(const ClosedPt& a, const ClosedPt& b) { return a.key() == b.key(); }
    friend bool operator<(const ClosedPt& a, const ClosedPt& b) { return a.key() < b.key(); }
};

/// A place of a curve's function field together with its image point on the
/// surface (if any; places mapping off the surface are reported without one).
struct CurvePoint {
    Place place;                      // place of kappa(y) = k(t)
    std::optional<ClosedPt> point;    // the scheme point below
    long long residue_degree = 1;     // [kappa(place) : kappa(point)]
};

/// The ambient surface: the affine plane or a smooth complete toric surface.
/// Curves are registered in a table (invariant ray curves for toric surfaces,
/// parametrized principal primes for the plane), giving every height-1 point
/// a stable index.
class Surface {
  public:
    enum class Kind { affine_plane, toric };

    static Surface affine_plane(FieldPtr F) {
        Surface s;
        s.kind_ = Kind::affine_plane;
        s.field_ = std::move(F);
        // coordinate axes are always available
        s.register_curve(BiPoly::X(s.field_),
                         CurveParam{{UniPoly::zero(s.field_), one_poly(s.field_)},
                                    {UniPoly::variable(s.field_), one_poly(s.field_)}});
        s.register_curve(BiPoly::Y(s.field_),
                         CurveParam{{UniPoly::variable(s.field_), one_poly(s.field_)},
                                    {UniPoly::zero(s.field_), one_poly(s.field_)}});
        return s;
    }

    static Surface toric(Fan2D fan, FieldPtr F) {
        Surface s;
        s.kind_ = Kind::toric;
        s.field_ = std::move(F);
        s.fan_ = std::move(fan);
        for (int i = 0; i < s.fan_.num_rays(); ++i) {
            CurveRec rec;
            rec.is_ray = true;
            rec.ray = i;
            rec.place = s.make_ray_place(i);
            s.curves_.push_back(std::move(rec));
        }
        return s;
    }

    Kind kind() const { return kind_; }
    const FieldPtr& constants() const { return field_; }
    const Fan2D& fan() const { return fan_; }
    int num_curves() const { return static_cast<int>(curves_.size()); }
    bool is_ray_curve(CurveId y) const { return rec(y).is_ray; }
    int ray_of(CurveId y) const { return rec(y).ray; }
    CurveId ray_curve(int ray) const {
        if (kind_ != Kind::toric) throw std::invalid_argument("ray_curve: not a toric surface");
        return CurveId{ray};
    }

    /// Register a principal prime curve h(X,Y) with a parametrization;
    /// irreducibility of h is caller-asserted. Returns the curve id.
    CurveId register_curve(const BiPoly& h, std::optional<CurveParam> param) {
        if (kind_ == Kind::toric)
            throw std::invalid_argument("register_curve: only invariant curves are supported on toric surfaces");
        Place pl = Place::principal(h, std::move(param));
        for (int i = 0; i < num_curves(); ++i)
            if (curves_[i].place == pl) return CurveId{i};
        CurveRec rec;
        rec.is_ray = false;
        rec.place = pl;
        curves_.push_back(std::move(rec));
        return CurveId{num_curves() - 1};
    }

    /// Curve of a plane prime, auto-parametrizing lines a*X + b*Y + c.
    CurveId curve_of_prime(const BiPoly& h) {
        if (h == BiPoly::X(field_)) return CurveId{0};
        if (h == BiPoly::Y(field_)) return CurveId{1};
        for (int i = 0; i < num_curves(); ++i)
            if (!curves_[i].is_ray && curves_[i].place.prime() == normalize(h)) return CurveId{i};
        if (auto p = linear_param(h)) return register_curve(h, *p);
        throw std::domain_error("curve_of_prime: no parametrization available for " + h.to_string() +
                                "; register the curve with an explicit parametrization");
    }

    /// The divisorial valuation on the ambient function field.
    const Place& curve_place(CurveId y) const { return rec(y).place; }

    /// The coordinate variable of kappa(y).
    char curve_var(CurveId y) const { return rec(y).is_ray ? 's' : 't'; }

    /// Restriction of a v_y-unit to the curve (the residue map).
    FnElem restrict_to_curve(const FnElem& g, CurveId y) const {
        return rec(y).place.residue(g);
    }

    /// Candidate height-1 points where a symbol over the ambient field can
    /// ramify: every ray for toric surfaces, and the curves of all factored
    /// bases and coordinate axes for the plane.
    std::vector<CurveId> candidate_curves(const MilnorSymbol& s) {
        std::vector<CurveId> out;
        auto add = [&out](CurveId y) {
            for (auto& z : out)
                if (z == y) return;
            out.push_back(y);
        };
        if (kind_ == Kind::toric) {
            for (auto& t : s.terms())
                for (auto& e : t.entries)
                    if (e.is_bi() && !e.bi().bases().empty())
                        throw std::domain_error("toric boundary: only monomial entries are supported "
                                                "(non-invariant curves are out of scope)");
            for (int i = 0; i < fan_.num_rays(); ++i) add(CurveId{i});
            return out;
        }
        for (auto& t : s.terms())
            for (auto& e : t.entries) {
                if (e.is_scalar()) continue;
                const Fact2 g = e.as_bi();
                if (g.ex() != 0) add(CurveId{0});
                if (g.ey() != 0) add(CurveId{1});
                for (auto& [base, ex] : g.bases()) add(curve_of_prime(base));
            }
        return out;
    }

    /// The scheme point of the surface under a place of kappa(y), together
    /// with the residue degree over it. Places whose center escapes the
    /// surface (the affine plane is not complete) carry no point.
    CurvePoint point_under(CurveId y, const Place& pl) const {
        const CurveRec& r = rec(y);
        CurvePoint cp{pl, std::nullopt, 1};
        if (r.is_ray) {
            auto [prev, next] = fan_.cones_of_ray(r.ray);
            if (pl.kind() == Place::Kind::p1_infinite) {
                cp.point = ClosedPt::fixed(prev);
            } else if (pl.p1_modulus().degree() == 1 && pl.p1_modulus().coeff(0).is_zero()) {
                cp.point = ClosedPt::fixed(next);
            } else {
                cp.point = ClosedPt::on_curve(y.index, pl);
                cp.residue_degree = 1;  // kappa(point) is defined as kappa(place)
            }
            return cp;
        }
        const CurveParam& pm = r.place.param();
        if (pl.kind() == Place::Kind::p1_infinite) {
            auto px = eval_at_infinity(pm.x), py = eval_at_infinity(pm.y);
            if (px && py) cp.point = ClosedPt::rational(*px, *py);
            return cp;
        }
        const UniPoly& p = pl.p1_modulus();
        if (p.degree() == 1) {
            FieldElem c = -p.coeff(0);
            FieldElem xd = pm.x.second.eval(c), yd = pm.y.second.eval(c);
            if (xd.is_zero() || yd.is_zero()) return cp;  // center escapes the plane
            cp.point = ClosedPt::rational(pm.x.first.eval(c) / xd, pm.y.first.eval(c) / yd);
            return cp;
        }
        cp.point = ClosedPt::on_curve(y.index, pl);
        return cp;
    }

    /// The places of kappa(y) lying over a given closed point (the branches
    /// y'_i), with residue degrees.
    std::vector<CurvePoint> curve_places_over_point(CurveId y, const ClosedPt& x) const {
        const CurveRec& r = rec(y);
        std::vector<CurvePoint> out;
        if (r.is_ray) {
            auto [prev, next] = fan_.cones_of_ray(r.ray);
            if (x.kind == ClosedPt::Kind::fixed) {
                if (x.cone == next)
                    out.push_back({Place::p1_finite(UniPoly::variable(field_)), x, 1});
                else if (x.cone == prev)
                    out.push_back({Place::p1_infinite(field_), x, 1});
            } else if (x.kind == ClosedPt::Kind::on_curve && x.curve == y.index) {
                out.push_back({x.place_inf ? Place::p1_infinite(field_)
                                           : Place::p1_finite(x.place_poly),
                               x, 1});
            }
            return out;
        }
        if (x.kind == ClosedPt::Kind::on_curve) {
            if (x.curve == y.index)
                out.push_back({x.place_inf ? Place::p1_infinite(field_)
                                           : Place::p1_finite(x.place_poly),
                               x, 1});
            return out;
        }
        if (x.kind != ClosedPt::Kind::rational) return out;
        // preimages of (a, b): common roots of x(t) - a and y(t) - b
        const CurveParam& pm = r.place.param();
        UniPoly nx = pm.x.first - UniPoly::constant(x.cx) * pm.x.second;
        UniPoly ny = pm.y.first - UniPoly::constant(x.cy) * pm.y.second;
        UniPoly g = poly_gcd(nx, ny);
        if (g.degree() < 1) {
            if (nx.is_zero()) g = ny.monic();
            else if (ny.is_zero()) g = nx.monic();
            else return out;
        }
        std::vector<UniPoly> primes;
        if (field_->is_finite()) {
            for (auto& [f, m] : factor_finite(g)) primes.push_back(f);
        } else {
            // over Q a linear parametrization meets a rational point in a
            // single rational parameter value; deeper points need finite k
            if (g.degree() == 1) primes.push_back(g.monic());
            else throw std::domain_error("curve_places_over_point: cannot factor the fiber over Q");
        }
        for (auto& p : primes) {
            // discard spurious factors coming from denominator zeros
            FieldElem junk = resultant(p, pm.x.second * pm.y.second);
            if (junk.is_zero()) continue;
            Place pl = Place::p1_finite(p);
            out.push_back({pl, x, pl.residue_degree()});
        }
        return out;
    }

    /// [kappa(x) : k] of a closed point.
    long long point_degree(const ClosedPt& x) const {
        switch (x.kind) {
            case ClosedPt::Kind::fixed: return 1;
            case ClosedPt::Kind::rational: return 1;
            case ClosedPt::Kind::on_curve:
                return x.place_inf ? 1 : x.place_poly.degree();
        }
        return 1;
    }

    /// Residue field of a closed point.
    FieldPtr point_field(const ClosedPt& x) const {
        if (x.kind == ClosedPt::Kind::on_curve && !x.place_inf && x.place_poly.degree() > 1)
            return Place::p1_finite(x.place_poly).residue_field();
        return field_;
    }

    // --- cover membership (toric surfaces; opens are the maximal cones) ---

    int num_opens() const {
        if (kind_ != Kind::toric) throw std::invalid_argument("num_opens: not a toric surface");
        return fan_.num_cones();
    }
    bool generic_in_open(int) const { return true; }
    bool curve_in_open(CurveId y, int cone) const {
        const CurveRec& r = rec(y);
        if (!r.is_ray) return true;  // non-invariant curves meet the torus
        return fan_.ray_in_cone(r.ray, cone);
    }
    bool point_in_open(const ClosedPt& x, int cone) const {
        switch (x.kind) {
            case ClosedPt::Kind::fixed: return x.cone == cone;
            case ClosedPt::Kind::rational: return true;  // torus point
            case ClosedPt::Kind::on_curve: return curve_in_open(CurveId{x.curve}, cone);
        }
        return false;
    }
    int owner_of_generic() const { return 0; }
    int owner_of_curve(CurveId y) const {
        for (int a = 0; a < num_opens(); ++a)
            if (curve_in_open(y, a)) return a;
        throw std::logic_error("curve not covered");
    }
    int owner_of_point(const ClosedPt& x) const {
        for (int a = 0; a < num_opens(); ++a)
            if (point_in_open(x, a)) return a;
        throw std::logic_error("point not covered");
    }

  private:
    struct CurveRec {
        bool is_ray = false;
        int ray = -1;
        Place place = Place::p1_infinite(ConstField::rationals());
    };

    Kind kind_ = Kind::affine_plane;
    FieldPtr field_;
    Fan2D fan_;
    std::vector<CurveRec> curves_;

    const CurveRec& rec(CurveId y) const {
        if (y.index < 0 || y.index >= num_curves())
            throw std::invalid_argument("unknown curve id");
        return curves_[y.index];
    }

    static UniPoly one_poly(const FieldPtr& F) { return UniPoly::constant(FieldElem::one(F)); }

    static BiPoly normalize(const BiPoly& h) { return h.scale(h.lead_coeff().inverse()); }

    Place make_ray_place(int i) const {
        auto u = fan_.rays[i];
        auto [prev, next] = fan_.cones_of_ray(i);
        // orient ms so that s = 0 at the fixed point of the next cone:
        // <u_next_other_ray, ms> > 0
        auto [a, b] = fan_.cone_rays(next);
        int other = (a == i) ? b : a;
        std::array<long long, 2> ms{-u[1], u[0]};
        long long pairing = fan_.rays[other][0] * ms[0] + fan_.rays[other][1] * ms[1];
        if (pairing < 0) ms = {u[1], -u[0]};
        return Place::ray(field_, u, ms);
    }

    /// Value of a rational function at t = infinity, if finite.
    static std::optional<FieldElem> eval_at_infinity(const std::pair<UniPoly, UniPoly>& f) {
        int dn = f.first.degree(), dd = f.second.degree();
        if (dn > dd) return std::nullopt;
        if (dn < dd) return FieldElem::zero(f.first.field());
        return f.first.lead() / f.second.lead();
    }

    /// Rational parametrization of a line a*X + b*Y + c = 0.
    std::optional<CurveParam> linear_param(const BiPoly& h) const {
        if (h.deg_x() > 1 || h.deg_y() > 1) return std::nullopt;
        FieldElem a = FieldElem::zero(field_), b = a, c = a;
        for (auto& [k, v] : h.terms()) {
            if (k == BiPoly::Key{1, 0}) a = v;
            else if (k == BiPoly::Key{0, 1}) b = v;
            else if (k == BiPoly::Key{0, 0}) c = v;
            else return std::nullopt;  // the X*Y term: not a line
        }
        UniPoly one = one_poly(field_), t = UniPoly::variable(field_);
        if (!b.is_zero()) {
            // x = t, y = -(a t + c)/b
            UniPoly ynum = UniPoly(field_, {-(c / b), -(a / b)});
            return CurveParam{{t, one}, {ynum, one}};
        }
        if (!a.is_zero()) {
            UniPoly xnum = UniPoly::constant(-(c / a));
            return CurveParam{{xnum, one}, {t, one}};
        }
        return std::nullopt;
    }
};

}  // namespace tame
