// mouldtool: normalize / verify / borel / invariants / linearize / selftest.
// Exit codes: 0 ok, 1 verification failure, 2 parse or precondition error, 3 numeric tolerance failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mould/acceptance.hpp"
#include "mould/borel.hpp"
#include "mould/invariants.hpp"
#include "mould/json_io.hpp"
#include "mould/linearization.hpp"
#include "mould/saddle_node.hpp"

using namespace mould;
using io::json;

namespace {

enum Exit { kOk = 0, kVerify = 1, kPrecondition = 2, kNumeric = 3 };

struct Options {
    std::string spec;
    std::string output;
    std::string format = "json";
    int order = 8;
    int ydeg = 4;
    int maxlen = 0;  // 0: command default
    double tol = 1e-10;
    std::uint64_t seed = 20251016;
    std::vector<std::string> only;
};

json read_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open spec file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw PreconditionError("spec file '" + path + "' is not valid JSON: " + e.what());
    }
}

// CSV rows are (label, index, column, value); rationals stay exact strings.
struct Csv {
    std::ostringstream out;
    Csv() { out << "table,index,term,value\n"; }
    void row(const std::string& table, const std::string& index, const std::string& term, const std::string& value) {
        out << table << ',' << index << ',' << term << ',' << value << '\n';
    }
};

std::string csv_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string word_key(const json& w) {
    std::string s = w.dump();
    for (auto& c : s)
        if (c == ',') c = ' ';
    return s;
}

void emit(const Options& opt, const json& report, const std::function<void(Csv&)>& to_csv) {
    std::string text;
    if (opt.format == "csv") {
        Csv csv;
        to_csv(csv);
        text = csv.out.str();
    } else {
        text = report.dump(2) + "\n";
    }
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.output);
        if (!f) throw PreconditionError("cannot write '" + opt.output + "'");
        f << text;
    }
}

void series_rows(Csv& csv, const std::string& table, const json& list) {
    for (std::size_t n = 0; n < list.size(); ++n) {
        const auto& cs = list[n]["coeffs"];
        for (std::size_t k = 0; k < cs.size(); ++k)
            csv.row(table, std::to_string(n), list[n]["var"].get<std::string>() + "^" + std::to_string(k), csv_value(cs[k]));
    }
}

int cmd_normalize(const Options& opt) {
    auto field = io::field_from(read_spec(opt.spec));
    const int order = opt.order, ydeg = opt.ydeg;
    const std::size_t maxlen = opt.maxlen > 0 ? static_cast<std::size_t>(opt.maxlen) : static_cast<std::size_t>(2 * order);
    // phi_n up to order + ydeg - 1 are needed to decide phi(x, psi(x, y)) = y mod y^{ydeg+1}
    auto ns = normalize(field, order, order + ydeg, maxlen);
    auto conj = verify_conjugacy(field, ns, order, ydeg);
    auto lag = lagrange_check(ns, order, std::min(ydeg, 3));
    NormalizingSeries<Rational> shown = ns;
    shown.phi.resize(ydeg + 1);
    shown.psi.resize(ydeg + 1);
    json report{{"command", "normalize"},
                {"order", order},
                {"ydeg", ydeg},
                {"maxlen", maxlen},
                {"series", io::normalizing(shown)},
                {"conjugacy", io::conjugacy(conj)},
                {"lagrange", io::lagrange(lag)}};
    emit(opt, report, [&](Csv& csv) {
        series_rows(csv, "phi", report["series"]["phi"]);
        series_rows(csv, "psi", report["series"]["psi"]);
        csv.row("check", "conjugacy", "ok", conj.ok ? "true" : "false");
        csv.row("check", "lagrange", "ok", lag.ok ? "true" : "false");
    });
    return conj.ok && lag.ok ? kOk : kVerify;
}

int cmd_verify(const Options& opt) {
    auto field = io::field_from(read_spec(opt.spec));
    const int order = opt.order;
    const std::size_t maxlen = opt.maxlen > 0 ? static_cast<std::size_t>(opt.maxlen) : 4;
    json checks = json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        json c{{"check", name}, {"ok", ok}};
        if (!ok) c["detail"] = detail;
        checks.push_back(c);
        all = all && ok;
    };
    using QS = TruncSeries<Rational>;
    auto v = compute_V(field, maxlen, order);
    auto sym = check_symmetral(v, maxlen);
    record("symmetral", sym.ok, sym.detail);
    auto one = unit_mould(v.window(), QS(order));
    auto vbar = compute_Vbar(v);
    record("inverse", moulds_equal(mould_mul(v, vbar), one) && moulds_equal(mould_mul(vbar, v), one), "V x Vbar != 1");
    auto eq = check_mould_equation(field, v);
    record("mould_equation", !eq, eq ? "fails at " + to_string(*eq) : "");
    std::string low;
    for (const auto& w : v.window().words()) {
        const auto& s = v.at(w);
        if (!s.is_zero() && s.valuation() < static_cast<int>((w.size() + 1) / 2) && low.empty()) low = to_string(w);
    }
    record("valuation", low.empty(), "below bound at " + low);
    const int ydeg = opt.ydeg;
    auto ns = normalize(field, order, order + ydeg, 2 * order);
    auto conj = verify_conjugacy(field, ns, order, ydeg);
    record("conjugacy", conj.ok, conj.identity + " at x^" + std::to_string(conj.x_power) + " y^" + std::to_string(conj.y_power));
    auto lag = lagrange_check(ns, order, std::min(ydeg, 3));
    record("lagrange", lag.ok, lag.detail);
    std::string differ;
    auto vb = compute_V(field, std::min<std::size_t>(maxlen, 3), order + 1);
    for (const auto& w : vb.window().words()) {
        if (w.empty()) continue;
        if (!(borel_transform(change_to_z(vb.at(w))) == hatV_recursion(field, w, order)) && differ.empty())
            differ = to_string(w);
    }
    record("borel_two_path", differ.empty(), "differs at " + differ);
    json report{{"command", "verify"}, {"order", order}, {"maxlen", maxlen}, {"ok", all}, {"checks", checks}};
    emit(opt, report, [&](Csv& csv) {
        for (const auto& c : checks) csv.row("check", c["check"].get<std::string>(), "ok", c["ok"].dump());
    });
    return all ? kOk : kVerify;
}

int cmd_borel(const Options& opt) {
    auto field = io::field_from(read_spec(opt.spec));
    const int order = opt.order;
    const std::size_t maxlen = opt.maxlen > 0 ? static_cast<std::size_t>(opt.maxlen) : 3;
    auto v = compute_V(field, maxlen, order + 1);
    json germs = json::array();
    bool all = true;
    for (const auto& w : v.window().words()) {
        if (w.empty()) continue;
        auto germ = hatV_recursion(field, w, order);
        bool agree = borel_transform(change_to_z(v.at(w))) == germ;
        all = all && agree;
        germs.push_back({{"word", io::word(w)}, {"germ", io::series(germ)}, {"two_path_agree", agree}});
    }
    json report{{"command", "borel"}, {"order", order}, {"maxlen", maxlen}, {"ok", all}, {"germs", germs}};
    emit(opt, report, [&](Csv& csv) {
        for (const auto& g : germs) {
            const auto& cs = g["germ"]["coeffs"];
            for (std::size_t k = 0; k < cs.size(); ++k)
                csv.row("germ", word_key(g["word"]), "zeta^" + std::to_string(k), csv_value(cs[k]));
        }
    });
    return all ? kOk : kVerify;
}

int cmd_invariants(const Options& opt) {
    json spec = read_spec(opt.spec);
    auto riccati = io::riccati_from(spec);
    BorelField bf;
    std::optional<SaddleNodeField<Rational>> field;
    if (riccati) {
        bf = canonical_riccati(riccati->first, riccati->second);
    } else {
        field = io::field_from(spec);
        bf = borel_field(*field);
    }
    HyperlogOptions hopt;
    hopt.tol = opt.tol;
    const std::size_t maxlen = opt.maxlen > 0 ? static_cast<std::size_t>(opt.maxlen) : 7;
    json cs = json::array();
    std::map<int, Complex> c;
    for (int m : {-3, -2, -1, 1}) {
        auto r = compute_Cm(bf, m, maxlen, hopt);
        c[m] = r.value;
        cs.push_back(io::cm_result(r));
    }
    auto xi = xi_from_C(c, 1);
    json report{{"command", "invariants"},
                {"maxlen", maxlen},
                {"tol", opt.tol},
                {"C", cs},
                {"xi", {{"-1", io::scalar(xi[-1])}, {"1", io::scalar(xi[1])}}}};
    bool ok = true;
    json oracles = json::object();
    if (riccati) {
        auto [cm, cp] = riccati_oracle(riccati->first, riccati->second);
        oracles["riccati_C_-1"] = io::oracle_delta(cm, c[-1]);
        oracles["riccati_C_1"] = io::oracle_delta(cp, c[1]);
    }
    if (field) {
        bool euler_like = true;
        for (int eta : bf.alphabet()) euler_like = euler_like && eta <= 0;
        if (euler_like) {
            auto e = euler_like_C(*field);
            json d = io::oracle_delta(e.value, c[-1]);
            if (e.exact_multiple) d["two_pi_i_multiple"] = io::scalar(*e.exact_multiple);
            oracles["euler_like_C_-1"] = d;
        }
    }
    for (auto& [name, d] : oracles.items()) {
        bool match = d["rel_err"].get<double>() <= 1e-3 || d["abs_err"].get<double>() <= 1e-12;
        d["match"] = match;
        ok = ok && match;
    }
    report["oracles"] = oracles;
    emit(opt, report, [&](Csv& csv) {
        for (const auto& r : cs) {
            csv.row("C", std::to_string(r["m"].get<int>()), "re", r["value"][0].dump());
            csv.row("C", std::to_string(r["m"].get<int>()), "im", r["value"][1].dump());
        }
        for (const auto& [name, d] : oracles.items()) csv.row("oracle", name, "rel_err", d["rel_err"].dump());
    });
    return ok ? kOk : kVerify;
}

int cmd_linearize(const Options& opt) {
    auto spec = io::linear_from(read_spec(opt.spec));
    const int deg = opt.order;
    std::vector<MultiPoly<Rational>> theta, direct;
    LinearizationStats stats;
    if (spec.kind == "vector_field") {
        theta = linearize_vf(spec.vf, deg, &stats);
        direct = solve_vf_direct(spec.vf, deg);
    } else {
        theta = linearize_map(spec.map, deg, &stats);
        direct = solve_map_direct(spec.map, deg);
    }
    json comps = json::array();
    bool ok = theta == direct;
    for (std::size_t i = 0; i < theta.size(); ++i) comps.push_back(io::multipoly(theta[i]));
    json report{{"command", "linearize"},
                {"kind", spec.kind},
                {"degree", deg},
                {"words", stats.words},
                {"theta", comps},
                {"direct_solver", {{"equal", ok}, {"max_abs_delta", max_coeff_delta(theta, direct)}}}};
    emit(opt, report, [&](Csv& csv) {
        for (std::size_t i = 0; i < comps.size(); ++i)
            for (const auto& t : comps[i]) csv.row("theta", std::to_string(i), word_key(t["exponent"]), csv_value(t["coeff"]));
    });
    return ok ? kOk : kVerify;
}

int cmd_selftest(const Options& opt) {
    AcceptanceOptions aopt;
    aopt.seed = opt.seed;
    aopt.only = opt.only;
    bool unexpected = false;
    json lines = json::array();
    auto results = run_acceptance(aopt, [&](const CriterionResult& r) {
        if (opt.format != "json") std::cerr << format_line(r) << "\n";
        if (!r.pass && !known_failure(r.id)) unexpected = true;
    });
    for (const auto& r : results)
        lines.push_back({{"id", r.id},
                         {"title", r.title},
                         {"pass", r.pass},
                         {"known_failure", !r.pass && known_failure(r.id)},
                         {"detail", r.detail},
                         {"seconds", r.seconds}});
    json report{{"command", "selftest"}, {"seed", opt.seed}, {"criteria", lines}};
    emit(opt, report, [&](Csv& csv) {
        for (const auto& r : results) csv.row("criterion", r.id, "pass", r.pass ? "true" : "false");
    });
    return unexpected ? kVerify : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mould calculus for saddle-node normalization, resurgence invariants and linearization"};
    app.require_subcommand(1);
    Options opt;
    auto common = [&](CLI::App* sub, bool needs_spec) {
        if (needs_spec) sub->add_option("spec", opt.spec, "JSON spec file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", opt.output, "write the report here instead of stdout");
        sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--order", opt.order, "x-order N (linearize: total degree)")->check(CLI::PositiveNumber);
        sub->add_option("--ydeg", opt.ydeg, "y-degree M")->check(CLI::PositiveNumber);
        sub->add_option("--maxlen", opt.maxlen, "maximal word length R")->check(CLI::PositiveNumber);
        sub->add_option("--tol", opt.tol, "quadrature tolerance per integral")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "seed for randomized suites");
    };
    std::map<std::string, std::function<int(const Options&)>> commands{
        {"normalize", cmd_normalize}, {"verify", cmd_verify},       {"borel", cmd_borel},
        {"invariants", cmd_invariants}, {"linearize", cmd_linearize}, {"selftest", cmd_selftest},
    };
    const std::map<std::string, std::string> help{
        {"normalize", "phi_n / psi_n tables with conjugacy and Lagrange verdicts"},
        {"verify", "property suite on V for a field"},
        {"borel", "Borel-plane germs of V^w and the two-path check"},
        {"invariants", "C_m, xi_m and oracle deltas"},
        {"linearize", "linearizing change of variables vs the direct solver"},
        {"selftest", "run the acceptance criteria"},
    };
    for (const auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        common(sub, name != "selftest");
        if (name == "selftest") sub->add_option("--only", opt.only, "criterion numbers to run");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kPrecondition;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return commands.at(name)(opt);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kPrecondition;
    }
}
