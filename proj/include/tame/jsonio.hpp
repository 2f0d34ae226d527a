#pragma once

#include <algorithm>
#include <set>
#include <string>

#include "json.hpp"

#include "tame/curve1d.hpp"
#include "tame/parse.hpp"
#include "tame/toric.hpp"

namespace tame {

using Json = nlohmann::ordered_json;

/// Fan JSON: {"rays":[[1,0],[0,1],...],"cones":[[0,1],[1,2],...]}.
/// Rays must be listed in counterclockwise order; the cone list is validated
/// against the adjacent-pair convention.
inline Fan2D fan_from_json(const Json& j) {
    if (!j.contains("rays")) throw std::invalid_argument("fan json: missing \"rays\"");
    std::vector<std::array<long long, 2>> rays;
    for (auto& r : j.at("rays")) {
        if (!r.is_array() || r.size() != 2) throw std::invalid_argument("fan json: bad ray");
        rays.push_back({r[0].get<long long>(), r[1].get<long long>()});
    }
    Fan2D fan(rays);
    if (j.contains("cones")) {
        std::set<std::pair<int, int>> want, got;
        for (int c = 0; c < fan.num_cones(); ++c) {
            auto [a, b] = fan.cone_rays(c);
            want.insert(std::minmax(a, b));
        }
        for (auto& c : j.at("cones")) {
            if (!c.is_array() || c.size() != 2) throw std::invalid_argument("fan json: bad cone");
            got.insert(std::minmax(c[0].get<int>(), c[1].get<int>()));
        }
        if (want != got)
            throw std::invalid_argument("fan json: cone list does not match the adjacency of the rays");
    }
    return fan;
}

inline Json fan_to_json(const Fan2D& fan) {
    Json j;
    j["rays"] = Json::array();
    for (auto& r : fan.rays) j["rays"].push_back({r[0], r[1]});
    j["cones"] = Json::array();
    for (int c = 0; c < fan.num_cones(); ++c) {
        auto [a, b] = fan.cone_rays(c);
        j["cones"].push_back({a, b});
    }
    return j;
}

/// Divisor JSON: {"coeffs":{"1":1,"3":-2}} (ray index -> multiplicity).
inline ToricDivisor divisor_from_json(const Json& j, const Fan2D& fan) {
    ToricDivisor d;
    if (!j.contains("coeffs")) throw std::invalid_argument("divisor json: missing \"coeffs\"");
    for (auto& [key, val] : j.at("coeffs").items()) {
        int ray = std::stoi(key);
        if (ray < 0 || ray >= fan.num_rays())
            throw std::invalid_argument("divisor json: ray index out of range");
        long long n = val.get<long long>();
        if (n != 0) d.coeffs[ray] = n;
    }
    return d;
}

inline Json divisor_to_json(const ToricDivisor& d) {
    Json c = Json::object();
    for (auto& [i, n] : d.coeffs) c[std::to_string(i)] = n;
    return Json{{"coeffs", c}};
}

/// Curve spec: {"class":"ray","u":[1,0]} or
/// {"class":"principal","h":"X^2-Y^3","param":["t^3","t^2"]}.
inline CurveId curve_from_json(const Json& j, Surface& S) {
    std::string cls = j.at("class").get<std::string>();
    if (cls == "ray") {
        auto u = j.at("u");
        std::array<long long, 2> v{u[0].get<long long>(), u[1].get<long long>()};
        for (int r = 0; r < S.fan().num_rays(); ++r)
            if (S.fan().rays[r] == v) return S.ray_curve(r);
        throw std::invalid_argument("curve json: ray not in the fan");
    }
    if (cls == "principal") {
        BiPoly h = parse_plane_poly(j.at("h").get<std::string>(), S.constants());
        if (j.contains("param")) {
            auto& pr = j.at("param");
            Fact1 x = parse_ratfunc(pr[0].get<std::string>(), S.constants());
            Fact1 y = parse_ratfunc(pr[1].get<std::string>(), S.constants());
            return S.register_curve(h, CurveParam{x.expand(), y.expand()});
        }
        return S.curve_of_prime(h);
    }
    throw std::invalid_argument("curve json: unknown class '" + cls + "'");
}

/// Point spec: "eta" | {"cone":2} | {"xy":["0","1"]} |
/// {"curve":<curve-spec>,"place":"t^2+1"|"inf"}.
inline ClosedPt point_from_json(const Json& j, Surface& S) {
    if (j.contains("cone")) return ClosedPt::fixed(j.at("cone").get<int>());
    if (j.contains("xy")) {
        auto& xy = j.at("xy");
        auto parse_scalar = [&](const Json& v) {
            Fact1 f = parse_ratfunc(v.get<std::string>(), S.constants());
            auto [n, d] = f.expand();
            if (n.degree() > 0 || d.degree() > 0)
                throw std::invalid_argument("point json: coordinates must be constants");
            return n.coeff(0) / d.coeff(0);
        };
        return ClosedPt::rational(parse_scalar(xy[0]), parse_scalar(xy[1]));
    }
    if (j.contains("curve")) {
        CurveId y = curve_from_json(j.at("curve"), S);
        std::string pl = j.at("place").get<std::string>();
        char var = S.curve_var(y);
        Place place = (pl == "inf") ? Place::p1_infinite(S.constants())
                                    : Place::p1_finite(parse_poly(pl, S.constants(), var));
        return ClosedPt::on_curve(y.index, place);
    }
    throw std::invalid_argument("point json: expected \"cone\", \"xy\" or \"curve\"/\"place\"");
}

/// Cycle JSON: a list of {"point": <point-spec>|"eta", "symbol": <symbol-text>}.
inline Cycle cycle_from_json(const Json& j, Surface& S, int codim, int weight) {
    Cycle c(codim, weight);
    bool plane = true;
    for (auto& item : j) {
        std::string symtext = item.at("symbol").get<std::string>();
        const Json& pt = item.at("point");
        if (codim == 0) {
            if (!(pt.is_string() && pt.get<std::string>() == "eta"))
                throw std::invalid_argument("cycle json: codimension 0 needs point \"eta\"");
            c = Cycle::at_generic(weight, parse_symbol(symtext, S.constants(), plane));
        } else if (codim == 1) {
            CurveId y = curve_from_json(pt, S);
            c.set_curve(y, parse_symbol(symtext, S.constants(), false, S.curve_var(y)));
        } else {
            ClosedPt x = point_from_json(pt, S);
            c.add_point(x, parse_symbol(symtext, S.constants(), false));
        }
    }
    return c;
}

inline Json cycle_to_json(const Cycle& c, const Surface& S) {
    Json out = Json::array();
    if (c.codim() == 0) {
        out.push_back({{"point", "eta"}, {"symbol", c.generic_symbol().to_string()}});
        return out;
    }
    if (c.codim() == 1) {
        for (auto& [y, s] : c.curve_part()) {
            Json cj;
            if (S.is_ray_curve(y)) {
                auto u = S.fan().rays[S.ray_of(y)];
                cj = Json{{"class", "ray"}, {"u", {u[0], u[1]}}};
            } else {
                cj = Json{{"class", "principal"}, {"h", S.curve_place(y).prime().to_string()}};
            }
            out.push_back({{"point", cj}, {"symbol", s.to_string()}});
        }
        return out;
    }
    for (auto& [x, s] : c.point_part()) {
        Json pj;
        switch (x.kind) {
            case ClosedPt::Kind::fixed: pj = Json{{"cone", x.cone}}; break;
            case ClosedPt::Kind::rational:
                pj = Json{{"xy", {x.cx.to_string(), x.cy.to_string()}}};
                break;
            case ClosedPt::Kind::on_curve:
                pj = Json{{"curve", x.curve},
                          {"place", x.place_inf ? "inf" : x.place_poly.to_string()}};
                break;
        }
        out.push_back({{"point", pj}, {"symbol", s.to_string()}});
    }
    return out;
}

/// Surface idele JSON, the shape of the degree-1 components:
/// {"comp01":[{"curve":...,"symbol":...}], "comp02":[{"point":...,"symbol":...}],
///  "comp12":[{"point":...,"curve":...,"branch":0,"symbol":...}]}.
inline Idele1 idele1_from_json(const Json& j, Surface& S, int weight) {
    Idele1 a(weight);
    bool plane = true;
    if (j.contains("comp01"))
        for (auto& item : j.at("comp01")) {
            CurveId y = curve_from_json(item.at("curve"), S);
            a.c01[y] = parse_symbol(item.at("symbol").get<std::string>(), S.constants(), plane);
        }
    if (j.contains("comp02"))
        for (auto& item : j.at("comp02")) {
            ClosedPt x = point_from_json(item.at("point"), S);
            a.c02[x] = parse_symbol(item.at("symbol").get<std::string>(), S.constants(), plane);
        }
    if (j.contains("comp12"))
        for (auto& item : j.at("comp12")) {
            ClosedPt x = point_from_json(item.at("point"), S);
            CurveId y = curve_from_json(item.at("curve"), S);
            int br = item.contains("branch") ? item.at("branch").get<int>() : 0;
            a.c12[{x, y, br}] = parse_symbol(item.at("symbol").get<std::string>(), S.constants(), plane);
        }
    a.prune();
    return a;
}

/// Curve idele JSON for the projective line:
/// {"weight":2, "global":"{t,1-t}", "components":[{"place":"t","symbol":"{t,3}"}]}.
inline CurveIdele curve_idele_from_json(const Json& j, const FieldPtr& F) {
    int weight = j.at("weight").get<int>();
    CurveIdele a(weight, F);
    if (j.contains("global") && !j.at("global").is_null())
        a.set_global(parse_symbol(j.at("global").get<std::string>(), F, false));
    if (j.contains("components"))
        for (auto& item : j.at("components")) {
            std::string pl = item.at("place").get<std::string>();
            Place v = (pl == "inf") ? Place::p1_infinite(F)
                                    : Place::p1_finite(parse_poly(pl, F));
            a.set_local(v, parse_symbol(item.at("symbol").get<std::string>(), F, false));
        }
    return a;
}

}  // namespace tame
