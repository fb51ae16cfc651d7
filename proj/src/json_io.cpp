#include "mould/json_io.hpp"

#include <algorithm>

namespace mould::io {

json scalar(const Rational& v) { return v.get_str(); }
json scalar(const GaussRational& v) { return json::array({v.re.get_str(), v.im.get_str()}); }
json scalar(const Complex& v) { return json::array({v.real(), v.imag()}); }

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw PreconditionError("expected a rational (\"p/q\" or integer), got " + j.dump());
}

Complex complex_from(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw PreconditionError("complex numbers are [re, im] pairs, got " + j.dump());
        auto part = [](const json& x) { return x.is_number() ? x.get<double>() : rational_from(x).get_d(); };
        return {part(j[0]), part(j[1])};
    }
    if (j.is_number()) return {j.get<double>(), 0.0};
    return {rational_from(j).get_d(), 0.0};
}

json word(const IntWord& w) {
    json out = json::array();
    for (int a : w) out.push_back(a);
    return out;
}

json word(const MIWord& w) {
    json out = json::array();
    for (const auto& m : w) out.push_back(m.v);
    return out;
}

IntWord int_word_from(const json& j) {
    if (!j.is_array()) throw PreconditionError("a word is an array of integers, got " + j.dump());
    IntWord w;
    for (const auto& a : j) {
        if (!a.is_number_integer()) throw PreconditionError("word letters must be integers, got " + a.dump());
        w = w.append(a.get<int>());
    }
    return w;
}

SaddleNodeField<Rational> field_from(const json& j) {
    if (!j.is_object()) throw PreconditionError("field spec must be a JSON object");
    SaddleNodeField<Rational> f;
    if (!j.contains("alphabet") || !j.contains("a") || !j.contains("x_order"))
        throw PreconditionError("field spec needs \"alphabet\", \"a\" and \"x_order\"");
    for (const auto& a : j.at("alphabet")) f.alphabet.push_back(a.get<int>());
    std::sort(f.alphabet.begin(), f.alphabet.end());
    f.x_order = j.at("x_order").get<int>();
    for (const auto& [key, cs] : j.at("a").items()) {
        int eta = 0;
        try {
            eta = std::stoi(key);
        } catch (const std::exception&) {
            throw PreconditionError("coefficient key '" + key + "' is not a letter");
        }
        std::vector<Rational> v;
        for (const auto& c : cs) v.push_back(rational_from(c));
        f.a[eta] = std::move(v);
    }
    f.validate();
    return f;
}

json field_to(const SaddleNodeField<Rational>& f) {
    json a = json::object();
    for (const auto& [eta, cs] : f.a) {
        json row = json::array();
        for (const auto& c : cs) row.push_back(scalar(c));
        a[std::to_string(eta)] = row;
    }
    return {{"alphabet", f.alphabet}, {"a", a}, {"x_order", f.x_order}};
}

std::optional<std::pair<Complex, Complex>> riccati_from(const json& j) {
    if (!j.is_object() || !j.contains("riccati")) return std::nullopt;
    const auto& r = j.at("riccati");
    if (!r.contains("b_minus") || !r.contains("b_plus"))
        throw PreconditionError("the riccati block needs \"b_minus\" and \"b_plus\"");
    return std::make_pair(complex_from(r.at("b_minus")), complex_from(r.at("b_plus")));
}

json normalizing(const NormalizingSeries<Rational>& ns) {
    json phi = json::array(), psi = json::array();
    for (const auto& s : ns.phi) phi.push_back(series(s));
    for (const auto& s : ns.psi) psi.push_back(series(s));
    return {{"order", ns.order}, {"terms", ns.terms}, {"phi", phi}, {"psi", psi}};
}

json conjugacy(const ConjugacyCheck& c) {
    json out{{"ok", c.ok}};
    if (!c.ok) out.update({{"identity", c.identity}, {"x_power", c.x_power}, {"y_power", c.y_power}, {"detail", c.detail}});
    return out;
}

json lagrange(const LagrangeCheck& c) {
    json out{{"ok", c.ok}};
    if (!c.ok) out.update({{"n", c.n}, {"detail", c.detail}});
    return out;
}

LinearSpec linear_from(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("spectrum"))
        throw PreconditionError("linearization spec needs \"kind\" and \"spectrum\"");
    LinearSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    if (spec.kind != "vector_field" && spec.kind != "map")
        throw PreconditionError("kind must be \"vector_field\" or \"map\", got '" + spec.kind + "'");
    std::vector<Rational> spectrum;
    for (const auto& v : j.at("spectrum")) spectrum.push_back(rational_from(v));
    const std::size_t n = spectrum.size();
    if (n == 0) throw PreconditionError("empty spectrum");
    std::vector<MultiPoly<Rational>> nonlinear(n);
    if (j.contains("terms"))
        for (const auto& t : j.at("terms")) {
            auto i = t.at("component").get<std::size_t>();
            auto e = t.at("exponent").get<std::vector<int>>();
            if (i >= n || e.size() != n) throw PreconditionError("term " + t.dump() + " does not match the dimension");
            nonlinear[i].add(MultiIndex(e), rational_from(t.at("coeff")));
        }
    if (spec.kind == "vector_field") {
        spec.vf = {spectrum, nonlinear};
        spec.vf.validate();
    } else {
        spec.map = {spectrum, nonlinear};
        spec.map.validate();
    }
    return spec;
}

json cm_result(const CmResult& c) {
    json out{{"m", c.m}, {"value", scalar(c.value)}, {"exact_zero", c.exact_zero}};
    if (c.exact_multiple) out["two_pi_i_multiple"] = scalar(*c.exact_multiple);
    if (!c.exact_zero) {
        json shells = json::array();
        for (std::size_t r = 1; r < c.shells.size(); ++r)
            shells.push_back({{"length", r}, {"sum", scalar(c.shells[r])}, {"abs", std::abs(c.shells[r])}});
        out.update({{"max_len", c.max_len},
                    {"words", c.words},
                    {"quadrature_error", c.quadrature_error},
                    {"truncation", c.truncation},
                    {"shells", shells}});
    }
    return out;
}

json oracle_delta(Complex expected, Complex computed) {
    double abs_err = std::abs(expected - computed);
    double rel_err = std::abs(expected) > 0 ? abs_err / std::abs(expected) : abs_err;
    return {{"expected", scalar(expected)}, {"computed", scalar(computed)}, {"abs_err", abs_err}, {"rel_err", rel_err}};
}

}  // namespace mould::io
