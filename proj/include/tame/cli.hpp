#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tame/jsonio.hpp"
#include "tame/suites.hpp"

namespace tame {

namespace clidetail {

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline FieldPtr field_or_default(const std::string& opt, const char* fallback) {
    if (!opt.empty()) return parse_field(opt);
    if (const char* env = std::getenv("TAME_FIELD")) return parse_field(env);
    return parse_field(fallback);
}

inline void emit(std::ostream& out, const Json& j, const std::string& format) {
    if (format == "json") {
        out << j.dump(2) << "\n";
        return;
    }
    // table: a flat, line-oriented view of the same data
    std::function<void(const Json&, std::string)> walk = [&](const Json& node, std::string prefix) {
        if (node.is_object()) {
            for (auto& [k, v] : node.items()) walk(v, prefix.empty() ? k : prefix + "." + k);
        } else if (node.is_array()) {
            int i = 0;
            for (auto& v : node) walk(v, prefix + "[" + std::to_string(i++) + "]");
        } else {
            out << prefix << "\t" << (node.is_string() ? node.get<std::string>() : node.dump())
                << "\n";
        }
    };
    walk(j, "");
}

inline Json suite_to_json(const SuiteReport& rep) {
    Json cases = Json::array();
    for (auto& c : rep.cases)
        cases.push_back({{"case", c.index}, {"ok", c.ok}, {"detail", c.detail}});
    return Json{{"schema", 1},
                {"command", "check"},
                {"suite", rep.suite},
                {"cases", cases},
                {"passed", rep.all_ok()}};
}

inline int cmd_toric_intersect(const std::string& fan_path,
                               const std::vector<std::string>& divisor_paths,
                               const std::string& method, const std::string& field_opt,
                               const std::string& sign_opt, const std::string& beta_opt,
                               const std::string& format, std::ostream& out) {
    Fan2D fan = fan_from_json(load_json(fan_path));
    FieldPtr F = field_or_default(field_opt, "q");
    Surface S = Surface::toric(fan, F);
    SignConvention sc = sign_opt == "twisted" ? SignConvention::twisted : SignConvention::standard;
    BetaPolicy bp = beta_opt == "max" ? BetaPolicy::max_admissible : BetaPolicy::sigma_owner;

    std::vector<ToricDivisor> divisors;
    for (auto& path : divisor_paths) {
        Json j = load_json(path);
        if (j.is_array())
            for (auto& item : j) divisors.push_back(divisor_from_json(item, fan));
        else
            divisors.push_back(divisor_from_json(j, fan));
    }
    if (divisors.empty()) throw std::invalid_argument("no divisors supplied");

    std::vector<std::string> methods;
    if (method == "all") methods = {"paper-cech", "paper-ideles", "classical"};
    else if (method == "paper-cech" || method == "paper-ideles" || method == "classical")
        methods = {method};
    else throw std::invalid_argument("unknown method '" + method + "'");

    Json matrices = Json::object();
    for (auto& m : methods) {
        Json rows = Json::array();
        for (size_t i = 0; i < divisors.size(); ++i) {
            Json row = Json::array();
            for (size_t j = 0; j < divisors.size(); ++j) {
                long long v;
                if (m == "paper-cech") v = intersect_paper_cech(S, divisors[i], divisors[j], sc, bp);
                else if (m == "paper-ideles") v = intersect_paper_ideles(S, divisors[i], divisors[j], sc);
                else v = intersect_classical(fan, divisors[i], divisors[j]) *
                         (sc == SignConvention::twisted ? -1 : 1);
                row.push_back(v);
            }
            rows.push_back(row);
        }
        matrices[m] = rows;
    }
    bool agree = true;
    for (size_t a = 1; a < methods.size(); ++a)
        agree = agree && matrices[methods[a]] == matrices[methods[0]];

    Json result{{"schema", 1},
                {"command", "toric intersect"},
                {"field", F->to_string()},
                {"sign_convention", sc == SignConvention::twisted ? "twisted" : "standard"},
                {"divisors", Json::array()},
                {"matrix", matrices},
                {"agree", agree}};
    for (auto& d : divisors) result["divisors"].push_back(divisor_to_json(d));
    emit(out, result, format);
    return agree ? 0 : 1;
}

inline int cmd_check(const std::string& suite, unsigned long long seed, int cases,
                     const std::string& field_opt, const std::string& format, std::ostream& out) {
    SuiteReport rep;
    if (suite == "gersten-square-zero")
        rep = run_gersten_square_zero(seed, cases, field_or_default(field_opt, "fp:5"));
    else if (suite == "homotopy")
        rep = run_homotopy(seed, cases);
    else if (suite == "product-compat")
        rep = run_product_compat(seed, field_or_default(field_opt, "q"));
    else if (suite == "reciprocity")
        rep = run_reciprocity(seed, cases, field_or_default(field_opt, "fp:5"));
    else
        throw std::invalid_argument("unknown suite '" + suite + "'");
    Json j = suite_to_json(rep);
    j["seed"] = seed;
    emit(out, j, format);
    return rep.all_ok() ? 0 : 1;
}

inline int cmd_reciprocity(const std::string& ftext, const std::string& gtext,
                           const std::string& field_opt, const std::string& format,
                           std::ostream& out) {
    FieldPtr F = field_or_default(field_opt, "fp:5");
    Fact1 f = parse_ratfunc(ftext, F);
    Fact1 g = parse_ratfunc(gtext, F);
    ReciprocityReport rep = weil_reciprocity(f, g);
    Json entries = Json::array();
    for (auto& e : rep.entries)
        entries.push_back({{"place", e.place.to_string()},
                           {"symbol", e.symbol_value.to_string()},
                           {"norm", e.norm_value.to_string()}});
    Json j{{"schema", 1},
           {"command", "reciprocity"},
           {"field", F->to_string()},
           {"f", ftext},
           {"g", gtext},
           {"places", entries},
           {"product", rep.product.to_string()},
           {"holds", rep.holds}};
    emit(out, j, format);
    return rep.holds ? 0 : 1;
}

inline int cmd_p1(const std::string& which, const std::string& idele_path,
                  const std::string& field_opt, const std::string& format, std::ostream& out) {
    FieldPtr F = field_or_default(field_opt, "fp:5");
    Json j = load_json(idele_path);
    CurveIdele a = curve_idele_from_json(j, F);
    Json result{{"schema", 1}, {"command", "p1 " + which}, {"field", F->to_string()}};
    if (which == "pic") {
        if (a.weight() != 1) throw std::invalid_argument("p1 pic: idele weight must be 1");
        result["class"] = pic_class(a);
    } else {
        if (a.weight() != 2) throw std::invalid_argument("p1 k2-class: idele weight must be 2");
        result["class"] = k2_class(a).to_string();
    }
    emit(out, result, format);
    return 0;
}

}  // namespace clidetail

/// Entry point of the command-line interface. Exit codes: 0 success,
/// 1 assertion failure, 2 input error.
inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact tame-symbol, cycle-complex and idele computations on curves and surfaces"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string field_opt, format = "json";
    app.add_option("--field", field_opt, "field descriptor: q, fp:<p>, fq:<p>:<modulus>")
        ->envname("TAME_FIELD");
    app.add_option("--format", format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));

    // toric intersect
    auto* toric = app.add_subcommand("toric", "toric surface computations");
    auto* intersect = toric->add_subcommand("intersect", "intersection matrices of invariant divisors");
    std::string fan_path, method = "all", sign = "standard", beta = "sigma";
    std::vector<std::string> divisor_paths;
    intersect->add_option("--fan", fan_path, "fan JSON file")->required();
    intersect->add_option("--divisors", divisor_paths, "divisor JSON file(s)")->required();
    intersect->add_option("--method", method, "paper-cech | paper-ideles | classical | all");
    intersect->add_option("--sign-convention", sign, "standard | twisted")
        ->check(CLI::IsMember({"standard", "twisted"}));
    intersect->add_option("--beta-x", beta, "beta_x choice: sigma | max")
        ->check(CLI::IsMember({"sigma", "max"}));

    // check <suite>
    auto* check = app.add_subcommand("check", "randomized property suites");
    std::string suite;
    unsigned long long seed = 1;
    int cases = 20;
    check->add_option("suite", suite,
                      "gersten-square-zero | homotopy | product-compat | reciprocity")
        ->required();
    check->add_option("--seed", seed, "random seed (determines the whole stream)");
    check->add_option("--cases", cases, "number of cases");

    // reciprocity
    auto* recip = app.add_subcommand("reciprocity", "Weil reciprocity report for a pair f, g");
    std::string ftext, gtext;
    recip->add_option("--f", ftext, "first rational function in t")->required();
    recip->add_option("--g", gtext, "second rational function in t")->required();

    // p1 pic / k2-class
    auto* p1 = app.add_subcommand("p1", "idele class computations on the projective line");
    auto* pic = p1->add_subcommand("pic", "degree of the divisor class of a weight-1 idele");
    auto* k2c = p1->add_subcommand("k2-class", "K_2 idele class in k^x of a weight-2 idele");
    std::string idele_pic, idele_k2;
    pic->add_option("--idele", idele_pic, "curve idele JSON file")->required();
    k2c->add_option("--idele", idele_k2, "curve idele JSON file")->required();

    std::vector<const char*> argv;
    std::string prog = "tame";
    argv.push_back(prog.c_str());
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "input error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (intersect->parsed())
            return clidetail::cmd_toric_intersect(fan_path, divisor_paths, method, field_opt, sign,
                                                  beta, format, out);
        if (check->parsed()) return clidetail::cmd_check(suite, seed, cases, field_opt, format, out);
        if (recip->parsed()) return clidetail::cmd_reciprocity(ftext, gtext, field_opt, format, out);
        if (pic->parsed()) return clidetail::cmd_p1("pic", idele_pic, field_opt, format, out);
        if (k2c->parsed()) return clidetail::cmd_p1("k2-class", idele_k2, field_opt, format, out);
        err << "input error: missing subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace tame
