#pragma once

// Linearization of non-resonant vector fields and maps in n variables through the
// moulds 1/<m, lambda> (fields) and 1/(ell^m - 1) (maps), with direct-solve oracles.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mould/errors.hpp"
#include "mould/mould.hpp"
#include "mould/words.hpp"

namespace mould {

using MIWord = Word<MultiIndex>;

// Sparse polynomial in y_1..y_n; exponent vectors always have full dimension.
template <class F>
struct MultiPoly {
    std::map<MultiIndex, F> terms;

    static MultiPoly variable(std::size_t n, std::size_t i) {
        MultiPoly p;
        p.terms[MultiIndex::unit(n, i)] = FieldOps<F>::one();
        return p;
    }
    static MultiPoly one(std::size_t n) {
        MultiPoly p;
        p.terms[MultiIndex(std::vector<int>(n, 0))] = FieldOps<F>::one();
        return p;
    }
    void add(const MultiIndex& k, const F& c) {
        auto [it, fresh] = terms.emplace(k, c);
        if (!fresh) it->second += c;
        if (FieldOps<F>::is_zero(it->second)) terms.erase(it);
    }
    F coeff(const MultiIndex& k) const {
        auto it = terms.find(k);
        return it == terms.end() ? FieldOps<F>::zero() : it->second;
    }
    bool is_zero() const { return terms.empty(); }
    int degree() const {
        int d = -1;
        for (const auto& [k, c] : terms) d = std::max(d, k.degree());
        return d;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [k, c] : o.terms) r.add(k, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [k, c] : o.terms) r.add(k, -c);
        return r;
    }
    MultiPoly scaled(const F& a) const {
        MultiPoly r;
        for (const auto& [k, c] : terms) r.add(k, c * a);
        return r;
    }
    // product with total degree capped at max_deg
    MultiPoly mul(const MultiPoly& o, int max_deg) const {
        MultiPoly r;
        for (const auto& [k1, c1] : terms)
            for (const auto& [k2, c2] : o.terms)
                if (k1.degree() + k2.degree() <= max_deg) r.add(k1 + k2, c1 * c2);
        return r;
    }
    MultiPoly truncated(int max_deg) const {
        MultiPoly r;
        for (const auto& [k, c] : terms)
            if (k.degree() <= max_deg) r.terms.emplace(k, c);
        return r;
    }
    MultiPoly homogeneous_part(int deg) const {
        MultiPoly r;
        for (const auto& [k, c] : terms)
            if (k.degree() == deg) r.terms.emplace(k, c);
        return r;
    }
    bool operator==(const MultiPoly& o) const {
        if (terms.size() != o.terms.size()) return false;
        for (const auto& [k, c] : terms)
            if (!FieldOps<F>::is_zero(c - o.coeff(k))) return false;
        return true;
    }
};

// y^k for an exponent vector k, degree capped (powers of the given polynomials, memoized by the caller)
template <class F>
MultiPoly<F> eval_monomial(const std::vector<MultiPoly<F>>& vals, const MultiIndex& k, int max_deg) {
    MultiPoly<F> r = MultiPoly<F>::one(vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j)
        for (int e = 0; e < k[j]; ++e) r = r.mul(vals[j], max_deg);
    return r;
}

// p(q_1, ..., q_n) truncated at total degree max_deg.
template <class F>
MultiPoly<F> substitute(const MultiPoly<F>& p, const std::vector<MultiPoly<F>>& q, int max_deg) {
    MultiPoly<F> r;
    for (const auto& [k, c] : p.terms) r = r + eval_monomial(q, k, max_deg).scaled(c);
    return r;
}

template <class F>
std::string to_string(const MultiPoly<F>& p) {
    if (p.terms.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : p.terms) {
        if (!out.empty()) out += " + ";
        out += "(" + FieldOps<F>::str(c) + ")";
        for (std::size_t j = 0; j < k.dim(); ++j)
            if (k[j] != 0) out += "*y" + std::to_string(j + 1) + (k[j] == 1 ? "" : "^" + std::to_string(k[j]));
    }
    return out;
}

namespace detail {
// Exact zero test for exact fields; relative tolerance for floating spectra.
template <class F>
bool small_divisor(const F& v) {
    return FieldOps<F>::is_zero(v);
}
template <>
inline bool small_divisor<Complex>(const Complex& v) {
    return std::abs(v) < 1e-12;
}

template <class F>
F power(const F& base, int e) {
    F r = FieldOps<F>::one();
    F b = e < 0 ? FieldOps<F>::inverse(base) : base;
    for (int i = 0; i < std::abs(e); ++i) r *= b;
    return r;
}

template <class F>
void validate_terms(std::size_t dim, const std::vector<MultiPoly<F>>& nonlinear) {
    if (dim == 0) throw PreconditionError("dimension must be positive");
    if (nonlinear.size() != dim) throw PreconditionError("need one nonlinear part per component");
    for (const auto& p : nonlinear)
        for (const auto& [k, c] : p.terms) {
            if (k.dim() != dim) throw PreconditionError("exponent " + letter_str(k) + " has the wrong dimension");
            for (std::size_t j = 0; j < dim; ++j)
                if (k[j] < 0) throw PreconditionError("negative exponent in " + letter_str(k));
            if (k.degree() < 2) throw PreconditionError("nonlinear term " + letter_str(k) + " has degree < 2");
        }
}
}  // namespace detail

// X = sum_i (lambda_i y_i + nonlinear_i(y)) d/dy_i
template <class F>
struct PolyVectorField {
    std::vector<F> lambda;
    std::vector<MultiPoly<F>> nonlinear;

    std::size_t dim() const { return lambda.size(); }
    void validate() const { detail::validate_terms(dim(), nonlinear); }
    F pairing(const MultiIndex& m) const {
        F s = FieldOps<F>::zero();
        for (std::size_t j = 0; j < dim(); ++j) s += FieldOps<F>::from_int(m[j]) * lambda[j];
        return s;
    }
};

// f_i(y) = ell_i y_i + nonlinear_i(y)
template <class F>
struct PolyMap {
    std::vector<F> ell;
    std::vector<MultiPoly<F>> nonlinear;

    std::size_t dim() const { return ell.size(); }
    void validate() const {
        detail::validate_terms(dim(), nonlinear);
        for (const auto& l : ell)
            if (detail::small_divisor(l)) throw PreconditionError("multiplier 0: the linear part is not invertible");
    }
    F power(const MultiIndex& m) const {
        F r = FieldOps<F>::one();
        for (std::size_t j = 0; j < dim(); ++j) r *= detail::power(ell[j], m[j]);
        return r;
    }
};

// prod_i 1/<m_i + ... + m_r, lambda>
template <class F>
F lin_mould_vf(const PolyVectorField<F>& field, const MIWord& w) {
    F r = FieldOps<F>::one();
    MultiIndex suffix;
    for (std::size_t i = w.size(); i-- > 0;) {
        suffix = suffix + w[i];
        F d = field.pairing(suffix);
        if (detail::small_divisor(d)) throw ResonanceError("resonance: <" + letter_str(suffix) + ", lambda> = 0");
        r *= FieldOps<F>::inverse(d);
    }
    return r;
}

// prod_i 1/(ell^{m_i + ... + m_r} - 1)
template <class F>
F lin_mould_map(const PolyMap<F>& map, const MIWord& w) {
    F r = FieldOps<F>::one();
    MultiIndex suffix;
    for (std::size_t i = w.size(); i-- > 0;) {
        suffix = suffix + w[i];
        F d = map.power(suffix) - FieldOps<F>::one();
        if (detail::small_divisor(d)) throw ResonanceError("resonance: ell^" + letter_str(suffix) + " = 1");
        r *= FieldOps<F>::inverse(d);
    }
    return r;
}

// Letters m with |m| in [1, max_deg - 1] and m + e_i >= 0 for some i: every degree a
// homogeneous component B_m can have inside the degree budget.
std::vector<MultiIndex> homogeneous_alphabet(std::size_t dim, int max_deg);

template <class F>
Mould<MultiIndex, F> lin_mould_vf_table(const PolyVectorField<F>& field, const Window<MultiIndex>& win) {
    return Mould<MultiIndex, F>::tabulate(win, FieldOps<F>::zero(), [&](const MIWord& w) { return lin_mould_vf(field, w); });
}

template <class F>
Mould<MultiIndex, F> lin_mould_map_table(const PolyMap<F>& map, const Window<MultiIndex>& win) {
    return Mould<MultiIndex, F>::tabulate(win, FieldOps<F>::zero(), [&](const MIWord& w) { return lin_mould_map(map, w); });
}

// B_m y^k = sum_i k_i a_{i, m+e_i} y^{k+m}
template <class F>
MultiPoly<F> apply_B_vf(const PolyVectorField<F>& field, const MultiIndex& m, const MultiPoly<F>& p) {
    MultiPoly<F> r;
    const std::size_t n = field.dim();
    for (const auto& [k, c] : p.terms)
        for (std::size_t i = 0; i < n; ++i) {
            if (k[i] == 0) continue;
            F a = field.nonlinear[i].coeff(m + MultiIndex::unit(n, i));
            if (FieldOps<F>::is_zero(a)) continue;
            r.add(k + m, c * a * FieldOps<F>::from_int(k[i]));
        }
    return r;
}

// Substitution by h = (f^lin)^{-1} o f, whose homogeneous components are the B_m of a map.
template <class F>
class MapComould {
public:
    MapComould(const PolyMap<F>& map, int max_deg) : max_deg_(max_deg) {
        map.validate();
        const std::size_t n = map.dim();
        for (std::size_t i = 0; i < n; ++i)
            h_.push_back(MultiPoly<F>::variable(n, i) + map.nonlinear[i].scaled(FieldOps<F>::inverse(map.ell[i])));
    }
    // Degrees m of the nonzero B_m within the budget. Unlike fields, entries below -1 occur:
    // (h_1 - y_1)^2 inside h_1^2 already shifts y_1^2 to a pure power of y_2.
    std::vector<MultiIndex> alphabet() {
        const std::size_t n = h_.size();
        std::set<MultiIndex> found;
        std::vector<int> k(n, 0);
        auto rec = [&](auto&& self, std::size_t j, int left) -> void {
            if (j == n) {
                MultiIndex kk(k);
                if (kk.degree() == 0) return;
                for (const auto& [e, c] : power_of_h(kk).terms)
                    if (!(e == kk)) found.insert(e - kk);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                k[j] = v;
                self(self, j + 1, left - v);
            }
            k[j] = 0;
        };
        rec(rec, 0, max_deg_ - 1);
        return {found.begin(), found.end()};
    }

    // B_m y^k = degree-(k+m) part of h^k - y^k
    MultiPoly<F> apply(const MultiIndex& m, const MultiPoly<F>& p) {
        MultiPoly<F> r;
        for (const auto& [k, c] : p.terms) {
            MultiIndex target = k + m;
            if (target.degree() > max_deg_) continue;
            bool nonneg = true;
            for (std::size_t j = 0; j < h_.size(); ++j) nonneg = nonneg && target[j] >= 0;
            if (!nonneg || target == k) continue;
            F v = power_of_h(k).coeff(target);
            if (!FieldOps<F>::is_zero(v)) r.add(target, c * v);
        }
        return r;
    }

private:
    const MultiPoly<F>& power_of_h(const MultiIndex& k) {
        auto it = cache_.find(k);
        if (it == cache_.end()) it = cache_.emplace(k, eval_monomial(h_, k, max_deg_)).first;
        return it->second;
    }
    int max_deg_;
    std::vector<MultiPoly<F>> h_;
    std::map<MultiIndex, MultiPoly<F>> cache_;
};

struct LinearizationStats {
    std::size_t words = 0;  // words with nonzero B_w y_i
};

namespace detail {
// theta_i = sum_w M^w B_w y_i over words whose B_w y_i stays within total degree max_deg.
// Words grow by appending: the new letter's operator is applied last.
template <class F, class Apply, class Coef>
std::vector<MultiPoly<F>> contract(std::size_t n, int max_deg, const std::vector<MultiIndex>& alphabet, Apply&& apply,
                                   Coef&& coef, LinearizationStats* stats) {
    std::vector<MultiPoly<F>> theta;
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly<F> acc = MultiPoly<F>::variable(n, i);
        auto dfs = [&](auto&& self, const MIWord& w, const MultiPoly<F>& p, int deg) -> void {
            for (const auto& m : alphabet) {
                int d = deg + m.degree();
                if (d > max_deg) continue;
                MultiPoly<F> q = apply(m, p);
                if (q.is_zero()) continue;
                MIWord w2 = w.append(m);
                acc = acc + q.scaled(coef(w2));
                if (stats) ++stats->words;
                self(self, w2, q, d);
            }
        };
        dfs(dfs, MIWord{}, MultiPoly<F>::variable(n, i), 1);
        theta.push_back(std::move(acc));
    }
    return theta;
}
}  // namespace detail

// theta with theta(x) conjugating X to its linear part: sum_j lambda_j y_j d_j theta_i = a_i(theta).
template <class F>
std::vector<MultiPoly<F>> linearize_vf(const PolyVectorField<F>& field, int max_deg, LinearizationStats* stats = nullptr) {
    field.validate();
    if (max_deg < 1) throw PreconditionError("degree bound must be positive");
    auto alphabet = homogeneous_alphabet(field.dim(), max_deg);
    return detail::contract<F>(
        field.dim(), max_deg, alphabet, [&](const MultiIndex& m, const MultiPoly<F>& p) { return apply_B_vf(field, m, p); },
        [&](const MIWord& w) { return lin_mould_vf(field, w); }, stats);
}

// theta with theta(ell y) = f(theta(y)).
template <class F>
std::vector<MultiPoly<F>> linearize_map(const PolyMap<F>& map, int max_deg, LinearizationStats* stats = nullptr) {
    map.validate();
    if (max_deg < 1) throw PreconditionError("degree bound must be positive");
    MapComould<F> comould(map, max_deg);
    auto alphabet = comould.alphabet();
    return detail::contract<F>(
        map.dim(), max_deg, alphabet, [&](const MultiIndex& m, const MultiPoly<F>& p) { return comould.apply(m, p); },
        [&](const MIWord& w) { return lin_mould_map(map, w); }, stats);
}

// ---- direct solvers, degree by degree ----

// (<k, lambda> - lambda_i) theta_{i,k} = [y^k] nonlinear_i(theta)
template <class F>
std::vector<MultiPoly<F>> solve_vf_direct(const PolyVectorField<F>& field, int max_deg) {
    field.validate();
    const std::size_t n = field.dim();
    std::vector<MultiPoly<F>> theta;
    for (std::size_t i = 0; i < n; ++i) theta.push_back(MultiPoly<F>::variable(n, i));
    for (int d = 2; d <= max_deg; ++d) {
        std::vector<MultiPoly<F>> next = theta;
        for (std::size_t i = 0; i < n; ++i) {
            auto rhs = substitute(field.nonlinear[i], theta, d).homogeneous_part(d);
            for (const auto& [k, c] : rhs.terms) {
                F div = field.pairing(k) - field.lambda[i];
                if (detail::small_divisor(div)) throw ResonanceError("resonance at y^" + letter_str(k));
                next[i].add(k, c * FieldOps<F>::inverse(div));
            }
        }
        theta = std::move(next);
    }
    return theta;
}

// (ell^k - ell_i) theta_{i,k} = [y^k] nonlinear_i(theta)
template <class F>
std::vector<MultiPoly<F>> solve_map_direct(const PolyMap<F>& map, int max_deg) {
    map.validate();
    const std::size_t n = map.dim();
    std::vector<MultiPoly<F>> theta;
    for (std::size_t i = 0; i < n; ++i) theta.push_back(MultiPoly<F>::variable(n, i));
    for (int d = 2; d <= max_deg; ++d) {
        std::vector<MultiPoly<F>> next = theta;
        for (std::size_t i = 0; i < n; ++i) {
            auto rhs = substitute(map.nonlinear[i], theta, d).homogeneous_part(d);
            for (const auto& [k, c] : rhs.terms) {
                F div = map.power(k) - map.ell[i];
                if (detail::small_divisor(div)) throw ResonanceError("resonance at y^" + letter_str(k));
                next[i].add(k, c * FieldOps<F>::inverse(div));
            }
        }
        theta = std::move(next);
    }
    return theta;
}

// Largest coefficient difference between two truncated maps (0 when equal).
template <class F>
double max_coeff_delta(const std::vector<MultiPoly<F>>& a, const std::vector<MultiPoly<F>>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        auto diff = a[i] - b[i];
        for (const auto& [k, c] : diff.terms) worst = std::max(worst, std::abs(FieldOps<F>::to_complex(c)));
    }
    return worst;
}

}  // namespace mould
