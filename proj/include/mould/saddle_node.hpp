#pragma once

// Saddle-node normalization: X = x^2 d/dx + A(x,y) d/dy, A = y + sum_eta a_eta(x) y^{eta+1}.
// The a_eta are exact polynomials in x (coefficients beyond x_order are zero).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mould/errors.hpp"
#include "mould/mould.hpp"
#include "mould/series.hpp"
#include "mould/words.hpp"

namespace mould {

template <class F>
struct SaddleNodeField {
    using Series = TruncSeries<F>;

    std::vector<int> alphabet;             // letters eta >= -1, sorted
    std::map<int, std::vector<F>> a;       // eta -> x^0..x^d coefficients
    int x_order = 0;

    // Admissibility: letters >= -1, v(a_eta) >= 1, v(a_0) >= 2, degree <= x_order.
    void validate() const {
        if (x_order < 1) throw PreconditionError("x_order must be positive");
        for (std::size_t i = 1; i < alphabet.size(); ++i)
            if (alphabet[i] <= alphabet[i - 1]) throw PreconditionError("alphabet must be sorted without repeats");
        for (int eta : alphabet)
            if (eta < -1) throw PreconditionError("letter " + std::to_string(eta) + " < -1 is not admissible");
        for (const auto& [eta, cs] : a) {
            if (!std::binary_search(alphabet.begin(), alphabet.end(), eta))
                throw PreconditionError("a_" + std::to_string(eta) + " given for a letter outside the alphabet");
            int need = eta == 0 ? 2 : 1;
            for (int k = 0; k < std::min<int>(need, static_cast<int>(cs.size())); ++k)
                if (!FieldOps<F>::is_zero(cs[k]))
                    throw PreconditionError("a_" + std::to_string(eta) + " must have valuation >= " + std::to_string(need));
            for (std::size_t k = x_order + 1; k < cs.size(); ++k)
                if (!FieldOps<F>::is_zero(cs[k]))
                    throw PreconditionError("a_" + std::to_string(eta) + " has degree above x_order");
        }
    }

    // a_eta mod x^{order+1}
    Series coeff(int eta, int order) const {
        Series s(order, Var::x);
        auto it = a.find(eta);
        if (it == a.end()) return s;
        for (int k = 0; k <= order && k < static_cast<int>(it->second.size()); ++k) s[k] = it->second[k];
        return s;
    }
    int y_degree() const { return alphabet.empty() ? 1 : alphabet.back() + 1; }
    int max_letter() const { return alphabet.empty() ? -1 : alphabet.back(); }
};

// ---- V^w ----

// V^{eta.w} from V^w: (x^2 d/dx + mu) V = a_eta V^w with mu = eta + ||w||.
template <class F>
TruncSeries<F> extend_left(const SaddleNodeField<F>& field, int eta, const TruncSeries<F>& v_tail, int mu, int order) {
    TruncSeries<F> rhs = sharp_mul(field.coeff(eta, order + 1), v_tail);
    if (rhs.order() < order + 1)
        throw PreconditionError("a_" + std::to_string(eta) + " must vanish at x = 0");
    rhs = rhs.truncated(order + 1);
    if (mu != 0) return resolvent(FieldOps<F>::from_int(mu), rhs).truncated(order);
    if (rhs.valuation() < 2)
        throw PreconditionError("zero-sum word needs a right-hand side of valuation >= 2; is v(a_0) >= 2?");
    return antiderivative(rhs);
}

// V on every word of length <= max_len over the field's alphabet, mod x^{order+1}.
template <class F>
Mould<int, TruncSeries<F>> compute_V(const SaddleNodeField<F>& field, std::size_t max_len, int order) {
    field.validate();
    using S = TruncSeries<F>;
    Mould<int, S> v(Window<int>(field.alphabet, max_len), S(order));
    for (const auto& w : v.window().words()) {
        if (w.empty()) {
            v.set(w, S::constant(FieldOps<F>::one(), order));
            continue;
        }
        v.set(w, extend_left(field, w[0], v.at(w.tail()), word_sum(w), order));
    }
    v.declared = Symmetry::symmetral;
    return v;
}

template <class F>
Mould<int, TruncSeries<F>> compute_Vbar(const Mould<int, TruncSeries<F>>& v) {
    auto r = involution_S(v);
    r.declared = v.declared;
    return r;
}

// The mould J_a: a_eta on one-letter words.
template <class F>
Mould<int, TruncSeries<F>> field_mould(const SaddleNodeField<F>& field, std::size_t max_len, int order) {
    Mould<int, TruncSeries<F>> j(Window<int>(field.alphabet, max_len), TruncSeries<F>(order));
    if (max_len >= 1)
        for (int eta : field.alphabet) j.set(IntWord{eta}, field.coeff(eta, order));
    return j;
}

// (D + nabla) V = J_a x V entrywise, D = x^2 d/dx on coefficients; returns the first failing word.
template <class F>
std::optional<IntWord> check_mould_equation(const SaddleNodeField<F>& field, const Mould<int, TruncSeries<F>>& v) {
    auto rhs = mould_mul(field_mould(field, v.window().max_len, v.at(IntWord{}).order()), v);
    for (const auto& w : v.window().words()) {
        const auto& vw = v.at(w);
        auto lhs = euler_derivation(vw) + vw.scaled(FieldOps<F>::from_int(word_sum(w)));
        if (!lhs.agrees_with(rhs.at(w))) return w;
    }
    return std::nullopt;
}

// ---- beta and the comould ----

// beta_w = (w^1 + 1)...(w^{r-1} + 1) with forward partial sums; beta of the empty word is 1.
Rational beta(const IntWord& w);
// beta_{w,n0} = n0 (n0 + w^1) ... (n0 + w^{r-1})
Rational beta_general(const IntWord& w, long n0);

// Polynomial in y with x-series coefficients, truncated at y-degree ydeg().
template <class F>
struct YPoly {
    std::vector<TruncSeries<F>> c;

    YPoly(int ydeg, int xorder) : c(ydeg + 1, TruncSeries<F>(xorder)) {}
    int ydeg() const { return static_cast<int>(c.size()) - 1; }
    int xorder() const {
        int n = c.front().order();
        for (const auto& s : c) n = std::min(n, s.order());
        return n;
    }
    static YPoly monomial(int k, int ydeg, int xorder) {
        YPoly p(ydeg, xorder);
        if (k <= ydeg) p.c[k] = TruncSeries<F>::constant(FieldOps<F>::one(), xorder);
        return p;
    }
    YPoly operator+(const YPoly& o) const {
        YPoly r(std::min(ydeg(), o.ydeg()), 0);
        for (int k = 0; k <= r.ydeg(); ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    YPoly operator-(const YPoly& o) const {
        YPoly r(std::min(ydeg(), o.ydeg()), 0);
        for (int k = 0; k <= r.ydeg(); ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    YPoly operator*(const YPoly& o) const {
        int d = std::min(ydeg(), o.ydeg());
        YPoly r(d, std::min(xorder(), o.xorder()));
        for (int i = 0; i <= d; ++i) {
            if (c[i].is_zero()) continue;
            for (int j = 0; i + j <= d; ++j) r.c[i + j] += c[i] * o.c[j];
        }
        return r;
    }
    YPoly times_series(const TruncSeries<F>& s) const {
        YPoly r = *this;
        for (auto& v : r.c) v = v * s;
        return r;
    }
    bool operator==(const YPoly&) const = default;
};

// B_w p with B_eta = y^{eta+1} d/dy, applied as B_{w_r} ... B_{w_1}: first letter first.
template <class F>
YPoly<F> comould_apply(const IntWord& w, const YPoly<F>& p) {
    YPoly<F> cur = p;
    for (int eta : w) {
        YPoly<F> next(cur.ydeg(), cur.xorder());
        for (int n = 0; n <= cur.ydeg(); ++n) {
            if (n == 0 || cur.c[n].is_zero()) continue;
            int target = n + eta;
            if (target < 0) throw PreconditionError("comould produced a negative power of y");
            if (target <= cur.ydeg()) next.c[target] += cur.c[n].scaled(FieldOps<F>::from_int(n));
        }
        cur = std::move(next);
    }
    return cur;
}

// ---- normalizing series ----

// phi(x,y) = y + sum_n phi[n] y^n, psi likewise; entries exact mod x^{order+1}.
template <class F>
struct NormalizingSeries {
    std::vector<TruncSeries<F>> phi, psi;
    int order = 0;
    std::size_t terms = 0;  // aggregated states or explicit words visited
};

// How phi_n / psi_n sum over words.
//  aggregated: V^{eta.w} is linear in V^w and depends on w only through ||w||, and beta_w
//    factors over suffixes, so words sharing (suffix sum, length) are summed together.
//  words: explicit depth-first enumeration of every contributing word (cross-check).
enum class SumMethod { aggregated, words };

template <class F>
class PhiPsiEngine {
public:
    using S = TruncSeries<F>;

    PhiPsiEngine(const SaddleNodeField<F>& field, std::size_t max_len, int order, SumMethod method = SumMethod::aggregated)
        : field_(field), max_len_(max_len), order_(order), method_(method) {
        field_.validate();
        if (max_len < 2 * static_cast<std::size_t>(order))
            throw PreconditionError("word length bound R must be at least 2N for exactness mod x^{N+1}");
    }

    // sum over ||w|| = n-1, beta_w != 0, r(w) <= R of beta_w V^w
    S phi(int n) {
        S acc(order_);
        if (method_ == SumMethod::words) {
            dfs_left(IntWord{}, S::constant(FieldOps<F>::one(), order_), 0, n - 1, acc);
            return acc;
        }
        // beta_w = prod over proper nonempty suffixes u of (n - ||u||); suffix sums above n-1 give beta = 0
        const int target = n - 1;
        auto factor = [n](int suffix_sum) { return n - suffix_sum; };
        auto layers = aggregate(target, factor, [target](int s) { return s <= target; });
        for (const auto& layer : layers) {
            auto it = layer.find(target);
            if (it != layer.end()) acc += it->second;
        }
        return acc;
    }

    // sum of beta_w Vbar^w = sum of beta_w (-1)^r V^{reversed w}
    S psi(int n) {
        S acc(order_);
        if (method_ == SumMethod::words) {
            dfs_right(IntWord{}, IntWord{}, S::constant(FieldOps<F>::one(), order_), 0, n - 1, acc);
            return acc;
        }
        if (!psi_layers_) {
            // with u = reversed w, beta_w = prod over proper nonempty suffixes v of u of (||v|| + 1).
            // Prefix sums of w may exceed ||w||, so only the length bound caps the sums; one table serves every n.
            int top = static_cast<int>(max_len_) * std::max(field_.max_letter(), 0);
            psi_layers_ = aggregate(top, [](int s) { return s + 1; }, [](int s) { return s >= -1; }, true);
        }
        for (const auto& layer : *psi_layers_) {
            auto it = layer.find(n - 1);
            if (it != layer.end()) acc += it->second;
        }
        return acc;
    }

    std::size_t terms() const { return terms_; }

private:
    using Layer = std::map<int, S>;  // suffix sum -> weighted sum of V

    // layers[len-1][s] = sum over words u of length len, ||u|| = s, of weight(u) V^u, where
    // weight multiplies factor(||v||) over proper nonempty suffixes v (and (-1)^len if signed).
    // Sums are bounded above by `top`; `keep` says which suffix sums may be extended.
    template <class Factor, class Keep>
    std::vector<Layer> aggregate(int top, Factor factor, Keep keep, bool signed_len = false) {
        std::vector<Layer> layers;
        Layer prev;
        for (std::size_t len = 1; len <= max_len_; ++len) {
            Layer cur;
            auto extend = [&](int eta, int prev_sum, const S& v_prev, const F& weight) {
                int s = prev_sum + eta;
                if (s > top) return;
                S v = extend_left(field_, eta, v_prev, s, order_);
                if (v.is_zero()) return;
                v = v.scaled(weight);
                auto it = cur.find(s);
                if (it == cur.end()) cur.emplace(s, std::move(v));
                else it->second += v;
            };
            const F sign = FieldOps<F>::from_int(signed_len ? -1 : 1);
            if (len == 1) {
                S one = S::constant(FieldOps<F>::one(), order_);
                for (int eta : field_.alphabet) extend(eta, 0, one, sign);
            } else {
                for (const auto& [sum, v] : prev) {
                    if (!keep(sum)) continue;
                    long f = factor(sum);
                    if (f == 0) continue;
                    for (int eta : field_.alphabet) extend(eta, sum, v, sign * FieldOps<F>::from_int(f));
                }
            }
            terms_ += cur.size();
            if (cur.empty()) break;  // every longer word vanishes mod x^{N+1}
            layers.push_back(cur);
            prev = std::move(cur);
        }
        return layers;
    }

    bool reachable(int sum, std::size_t len, int target) const {
        long room = static_cast<long>(max_len_ - len);
        return sum + room * std::max(field_.max_letter(), 0) >= target;
    }

    void dfs_left(const IntWord& w, const S& vw, int sum, int target, S& acc) {
        if (!w.empty() && sum == target) {
            acc += vw.scaled(FieldOps<F>::from_rational(beta(w)));
            ++terms_;
        }
        if (w.size() == max_len_) return;
        for (int eta : field_.alphabet) {
            int s = sum + eta;
            // letters are >= -1, so a suffix sum above n-1 forces a forward partial sum of -1
            if (s > target) continue;
            if (!reachable(s, w.size() + 1, target) && s != target) continue;
            S v = extend_left(field_, eta, vw, s, order_);
            if (v.is_zero()) continue;  // v(V) never decreases when letters are prepended
            dfs_left(w.prepend(eta), v, s, target, acc);
        }
    }

    // w grows to the right; u = reversed w grows to the left, carrying V^u.
    void dfs_right(const IntWord& w, const IntWord& u, const S& vu, int sum, int target, S& acc) {
        if (!w.empty() && sum == target) {
            S term = vu.scaled(FieldOps<F>::from_rational(beta(w)));
            acc += (w.size() % 2) ? -term : term;
            ++terms_;
        }
        if (w.size() == max_len_) return;
        if (!w.empty() && sum < 0) return;  // a proper prefix needs a nonnegative sum
        for (int eta : field_.alphabet) {
            int s = sum + eta;
            if (!reachable(s, w.size() + 1, target) && s != target) continue;
            S v = extend_left(field_, eta, vu, s, order_);
            if (v.is_zero()) continue;
            dfs_right(w.append(eta), u.prepend(eta), v, s, target, acc);
        }
    }

    const SaddleNodeField<F>& field_;
    std::size_t max_len_;
    int order_;
    SumMethod method_;
    std::size_t terms_ = 0;
    std::optional<std::vector<Layer>> psi_layers_;
};

template <class F>
std::pair<TruncSeries<F>, TruncSeries<F>> phi_psi(const SaddleNodeField<F>& field, int n, std::size_t max_len, int order,
                                                  SumMethod method = SumMethod::aggregated) {
    PhiPsiEngine<F> eng(field, max_len, order, method);
    return {eng.phi(n), eng.psi(n)};
}

// phi_n, psi_n for 0 <= n <= max_n.
template <class F>
NormalizingSeries<F> normalize(const SaddleNodeField<F>& field, int order, int max_n, std::size_t max_len,
                               SumMethod method = SumMethod::aggregated) {
    PhiPsiEngine<F> eng(field, max_len, order, method);
    NormalizingSeries<F> out;
    out.order = order;
    for (int n = 0; n <= max_n; ++n) {
        out.phi.push_back(eng.phi(n));
        out.psi.push_back(eng.psi(n));
    }
    out.terms = eng.terms();
    return out;
}

// y + sum_n coeffs[n] y^n as a YPoly truncated at y-degree ydeg.
template <class F>
YPoly<F> assemble(const std::vector<TruncSeries<F>>& coeffs, int ydeg, int order) {
    YPoly<F> p = YPoly<F>::monomial(1, ydeg, order);
    for (int n = 0; n < static_cast<int>(coeffs.size()) && n <= ydeg; ++n) p.c[n] += coeffs[n].truncated(order);
    return p;
}

// A(x, p) = p + sum_eta a_eta p^{eta+1}
template <class F>
YPoly<F> apply_field(const SaddleNodeField<F>& field, const YPoly<F>& p) {
    YPoly<F> out = p;
    int order = p.xorder();
    for (int eta : field.alphabet) {
        YPoly<F> power = YPoly<F>::monomial(0, p.ydeg(), order);
        for (int k = 0; k < eta + 1; ++k) power = power * p;
        out = out + power.times_series(field.coeff(eta, order));
    }
    return out;
}

struct ConjugacyCheck {
    bool ok = true;
    std::string identity;  // which identity failed
    int x_power = -1, y_power = -1;
    std::string detail;
    explicit operator bool() const { return ok; }
};

template <class F>
ConjugacyCheck first_mismatch(const YPoly<F>& lhs, const YPoly<F>& rhs, int order, int ydeg, const char* identity) {
    ConjugacyCheck res;
    for (int j = 0; j <= ydeg; ++j)
        for (int i = 0; i <= order; ++i)
            if (!FieldOps<F>::is_zero(lhs.c[j][i] - rhs.c[j][i])) {
                res.ok = false;
                res.identity = identity;
                res.x_power = i;
                res.y_power = j;
                res.detail = std::string(identity) + " fails at x^" + std::to_string(i) + " y^" + std::to_string(j);
                return res;
            }
    return res;
}

// x^2 d_x phi + y d_y phi = A(x, phi) and phi(x, psi(x,y)) = y, mod (x^{N+1}, y^{M+1}).
// The composition check needs phi_n up to n = N + M - 1 when psi_0 != 0.
template <class F>
ConjugacyCheck verify_conjugacy(const SaddleNodeField<F>& field, const NormalizingSeries<F>& ns, int order, int ydeg) {
    YPoly<F> phi = assemble(ns.phi, ydeg, order);
    YPoly<F> lhs(ydeg, order);
    for (int n = 0; n <= ydeg; ++n) lhs.c[n] = euler_derivation(phi.c[n]) + phi.c[n].scaled(FieldOps<F>::from_int(n));
    auto res = first_mismatch(lhs, apply_field(field, phi), order, ydeg, "conjugacy equation");
    if (!res.ok) return res;

    if (static_cast<int>(ns.phi.size()) < order + ydeg)
        throw PreconditionError("composition check needs phi_n for n < N + M");
    YPoly<F> psi = assemble(ns.psi, ydeg, order);
    YPoly<F> comp = psi;
    YPoly<F> power = YPoly<F>::monomial(0, ydeg, order);
    for (std::size_t n = 0; n < ns.phi.size(); ++n) {
        if (n > 0) power = power * psi;
        comp = comp + power.times_series(ns.phi[n].truncated(order));
    }
    return first_mismatch(comp, YPoly<F>::monomial(1, ydeg, order), order, ydeg, "phi(x, psi(x,y)) = y");
}

struct LagrangeCheck {
    bool ok = true;
    int n = -1;
    std::string detail;
    explicit operator bool() const { return ok; }
};

// phi_n = sum_s (-1)^s/s binom(n+s-1, s-1) [y^{n+s-1}] P^s with P(y) = sum_k psi_k y^k;
// terms with s > N vanish mod x^{N+1} because every psi_k has positive valuation.
template <class F>
LagrangeCheck lagrange_check(const NormalizingSeries<F>& ns, int order, int max_n) {
    LagrangeCheck res;
    int needed = max_n + order;  // psi_k for k <= n + N - 1
    if (static_cast<int>(ns.psi.size()) < needed) throw PreconditionError("lagrange_check: not enough psi_k");
    int ydeg = needed - 1;
    YPoly<F> p(ydeg, order);
    for (int k = 0; k <= ydeg; ++k) p.c[k] = ns.psi[k].truncated(order);
    for (int n = 0; n <= max_n; ++n) {
        TruncSeries<F> rhs(order);
        YPoly<F> power = YPoly<F>::monomial(0, ydeg, order);
        for (int s = 1; s <= order; ++s) {
            power = power * p;
            if (n + s - 1 > ydeg) break;
            Rational w = binomial(n + s - 1, s - 1) * ratio(s % 2 ? -1 : 1, s);
            rhs += power.c[n + s - 1].scaled(FieldOps<F>::from_rational(w));
        }
        if (!rhs.agrees_with(ns.phi[n])) {
            res.ok = false;
            res.n = n;
            res.detail = "inversion identity fails for n = " + std::to_string(n);
            return res;
        }
    }
    return res;
}

}  // namespace mould
