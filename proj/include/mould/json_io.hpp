#pragma once

// JSON encodings. Rationals are "p/q" strings, complex numbers [re, im], words integer arrays,
// multi-index words arrays of integer arrays, series {"var", "order", "coeffs"}, moulds lists of
// {"word", "value"}.

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "mould/invariants.hpp"
#include "mould/linearization.hpp"
#include "mould/mould.hpp"
#include "mould/saddle_node.hpp"

namespace mould::io {

using json = nlohmann::json;

json scalar(const Rational& v);
json scalar(const GaussRational& v);
json scalar(const Complex& v);

Rational rational_from(const json& j);  // "p/q" string or integer
Complex complex_from(const json& j);    // number, rational string or [re, im]

json word(const IntWord& w);
json word(const MIWord& w);
IntWord int_word_from(const json& j);

template <class F>
json series(const TruncSeries<F>& s) {
    json cs = json::array();
    for (int k = 0; k <= s.order(); ++k) cs.push_back(scalar(s[k]));
    return {{"var", var_name(s.var())}, {"order", s.order()}, {"coeffs", cs}};
}

inline json value(const Rational& v) { return scalar(v); }
inline json value(const GaussRational& v) { return scalar(v); }
inline json value(const Complex& v) { return scalar(v); }
template <class F>
json value(const TruncSeries<F>& s) {
    return series(s);
}

template <class L, class C>
json mould_entries(const Mould<L, C>& m) {
    json out = json::array();
    for (const auto& [w, v] : m.entries()) out.push_back({{"word", word(w)}, {"value", value(v)}});
    return out;
}

template <class F>
json multipoly(const MultiPoly<F>& p) {
    json out = json::array();
    for (const auto& [k, c] : p.terms) out.push_back({{"exponent", k.v}, {"coeff", scalar(c)}});
    return out;
}

// ---- saddle-node fields ----

// {"alphabet": [...], "a": {"-1": ["0", "1"], ...}, "x_order": N}
SaddleNodeField<Rational> field_from(const json& j);
json field_to(const SaddleNodeField<Rational>& f);
// optional {"riccati": {"b_minus": ..., "b_plus": ...}} block selecting the canonical Riccati field
std::optional<std::pair<Complex, Complex>> riccati_from(const json& j);

json normalizing(const NormalizingSeries<Rational>& ns);
json conjugacy(const ConjugacyCheck& c);
json lagrange(const LagrangeCheck& c);

// ---- linearization specs ----

// {"kind": "vector_field" | "map", "spectrum": [...],
//  "terms": [{"component": i, "exponent": [...], "coeff": "p/q"}]}
struct LinearSpec {
    std::string kind;
    PolyVectorField<Rational> vf;
    PolyMap<Rational> map;
};
LinearSpec linear_from(const json& j);

// ---- invariants ----

json cm_result(const CmResult& c);
json oracle_delta(Complex expected, Complex computed);  // {expected, computed, abs_err, rel_err}

}  // namespace mould::io
