#include "doctest.h"

#include "tame/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace tame;

namespace {

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) {
        path = std::string("cli_tmp_") + name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::pair<int, std::string> run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_main(std::move(args), out, err);
    return {code, out.str() + err.str()};
}

}  // namespace

TEST_CASE("expression parser on the documented syntax") {
    auto F5 = ConstField::prime(5);
    auto Q = ConstField::rationals();
    CHECK(parse_poly("t^2-4", F5).degree() == 2);
    CHECK(parse_ratfunc("3/2*t+1", Q).expand().first.degree() == 1);
    CHECK(parse_ratfunc("(t-1)*(t+1)", F5) == parse_ratfunc("t^2-1", F5));
    CHECK(parse_plane("X^2-Y^3", Q).bases().size() == 1);
    CHECK(parse_plane("X^-2*Y", Q).ex() == -2);
    CHECK_THROWS(parse_ratfunc("X+1", F5));
    CHECK_THROWS(parse_ratfunc("t+%", F5));
    CHECK_THROWS(parse_ratfunc("0", F5));

    CHECK(*parse_field("q") == *Q);
    CHECK(*parse_field("fp:7") == *ConstField::prime(7));
    CHECK(*parse_field("fq:3:t^2+1") == *ConstField::extension(3, {1, 0, 1}));
    CHECK_THROWS(parse_field("fp:6"));
    CHECK_THROWS(parse_field("banana"));

    MilnorSymbol s = parse_symbol("2*{t, t+1} - {t-2, t}", F5, false);
    CHECK(s.degree() == 2);
    CHECK(s.terms().size() == 2);
    CHECK(parse_symbol("3", F5, false).int_value() == 3);
    MilnorSymbol u = parse_symbol("{X, 1-X}", F5, true);
    CHECK(u.degree() == 2);
}

TEST_CASE("cycle and idele JSON round trips") {
    auto F5 = ConstField::prime(5);
    Surface a2 = Surface::affine_plane(F5);
    Json cj = Json::parse(R"([
        {"point": {"class":"principal","h":"Y^2-X^3","param":["t^2","t^3"]},
         "symbol": "{t}"}
    ])");
    Cycle c = cycle_from_json(cj, a2, 1, 2);
    CHECK(c.curve_part().size() == 1);
    Json back = cycle_to_json(c, a2);
    CHECK(back.size() == 1);

    auto Q = ConstField::rationals();
    Surface fn = Surface::toric(hirzebruch(2), Q);
    Json ij = Json::parse(R"({
        "comp01": [{"curve": {"class":"ray","u":[-1,2]}, "symbol": "{X}"}],
        "comp12": [{"point": {"cone":2}, "curve": {"class":"ray","u":[-1,2]},
                    "branch": 0, "symbol": "{X^2*Y}"}]
    })");
    Idele1 a = idele1_from_json(ij, fn, 1);
    CHECK(a.c01.size() == 1);
    CHECK(a.c12.size() == 1);
    CHECK(a.get12({ClosedPt::fixed(2), fn.ray_curve(2), 0}).k1_value() ==
          FnElem(Fact2::monomial(Q, 2, 1)));
}

TEST_CASE("cli: toric intersect matches the pinned self-intersection") {
    TempFile fan("fan.json", R"({"rays":[[1,0],[0,1],[-1,2],[0,-1]],
                                 "cones":[[0,1],[1,2],[2,3],[3,0]]})");
    TempFile divs("divs.json", R"([{"coeffs":{"1":1}}, {"coeffs":{"0":1}}])");
    auto [code, text] = run({"toric", "intersect", "--fan", fan.path, "--divisors", divs.path,
                             "--method", "all"});
    CHECK(code == 0);
    Json j = Json::parse(text);
    CHECK(j["schema"] == 1);
    CHECK(j["agree"] == true);
    CHECK(j["matrix"]["paper-cech"][0][0] == -2);
    CHECK(j["matrix"]["paper-ideles"][0][0] == -2);
    CHECK(j["matrix"]["classical"][0][1] == 1);

    // identical invocation gives byte-identical output
    auto [code2, text2] = run({"toric", "intersect", "--fan", fan.path, "--divisors", divs.path,
                               "--method", "all"});
    CHECK(code2 == 0);
    CHECK(text == text2);

    // the P^2 matrix of coordinate lines is all ones
    TempFile p2("p2.json", R"({"rays":[[1,0],[0,1],[-1,-1]]})");
    TempFile lines("lines.json",
                   R"([{"coeffs":{"0":1}},{"coeffs":{"1":1}},{"coeffs":{"2":1}}])");
    auto [codep, textp] = run({"toric", "intersect", "--fan", p2.path, "--divisors", lines.path});
    CHECK(codep == 0);
    Json jp = Json::parse(textp);
    for (auto& row : jp["matrix"]["paper-ideles"])
        for (auto& v : row) CHECK(v == 1);

    // non-smooth fan: input error, exit 2
    TempFile bad("bad_fan.json", R"({"rays":[[1,0],[-1,-2],[0,1]]})");
    auto [code3, text3] = run({"toric", "intersect", "--fan", bad.path, "--divisors", divs.path});
    CHECK(code3 == 2);
}

TEST_CASE("cli: check suites are deterministic under a fixed seed") {
    auto [c1, t1] = run({"check", "reciprocity", "--seed", "7", "--cases", "5", "--field", "fp:5"});
    auto [c2, t2] = run({"check", "reciprocity", "--seed", "7", "--cases", "5", "--field", "fp:5"});
    CHECK(c1 == 0);
    CHECK(t1 == t2);
    auto [c3, t3] = run({"check", "reciprocity", "--seed", "8", "--cases", "5", "--field", "fp:5"});
    CHECK(c3 == 0);
    CHECK(t1 != t3);  // the seed drives the stream
    auto [c4, t4] = run({"check", "nonsense"});
    CHECK(c4 == 2);
}

TEST_CASE("cli: reciprocity and p1 classes") {
    auto [code, text] = run({"reciprocity", "--f", "t", "--g", "1-t", "--field", "fp:5"});
    CHECK(code == 0);
    Json j = Json::parse(text);
    CHECK(j["holds"] == true);
    CHECK(j["places"].size() == 3);

    TempFile idele("idele.json", R"({"weight":1, "components":[
        {"place":"t^3+t+1", "symbol":"{t^3+t+1}"}]})");
    auto [c2, t2] = run({"p1", "pic", "--idele", idele.path, "--field", "fp:2"});
    CHECK(c2 == 0);
    CHECK(Json::parse(t2)["class"] == 3);

    TempFile k2("k2.json", R"({"weight":2, "global": "{t, 1-t}",
        "components":[{"place":"t", "symbol":"{t, 2}"}]})");
    auto [c3, t3] = run({"p1", "k2-class", "--idele", k2.path, "--field", "fp:5"});
    CHECK(c3 == 0);
    CHECK(Json::parse(t3)["class"] == "2");

    // weight mismatch: input error
    auto [c4, t4] = run({"p1", "pic", "--idele", k2.path, "--field", "fp:5"});
    CHECK(c4 == 2);
}

TEST_CASE("cli: table format is a flat view of the same data") {
    auto [code, text] = run({"reciprocity", "--f", "t", "--g", "t", "--field", "fp:7",
                             "--format", "table"});
    CHECK(code == 0);
    CHECK(text.find("holds\ttrue") != std::string::npos);
    CHECK(text.find("product\t1") != std::string::npos);
}
