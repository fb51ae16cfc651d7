#pragma once

// Truncated power series c_0 + c_1 t + ... + c_N t^N (mod t^{N+1}).
// Products follow the min-order rule; sharp_mul is the precision-exact variant
// used when one factor has positive valuation.

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "mould/errors.hpp"
#include "mould/scalar.hpp"

namespace mould {

enum class Var { x, z_inv, zeta, y, u };

std::string var_name(Var v);

inline constexpr int kInfiniteValuation = INT_MAX;

template <class F>
class TruncSeries {
public:
    using field_type = F;
    using Ops = FieldOps<F>;

    TruncSeries() : TruncSeries(0) {}
    explicit TruncSeries(int order, Var var = Var::x) : c_(check_order(order) + 1, Ops::zero()), var_(var) {}
    // Coefficients c_0..c_{size-1}; the order is size-1.
    TruncSeries(std::vector<F> coeffs, Var var = Var::x) : c_(std::move(coeffs)), var_(var) {
        if (c_.empty()) throw PreconditionError("series needs at least one coefficient");
    }
    // c_0..c_{k} given, zero-filled up to `order`: for data that is an exact polynomial.
    static TruncSeries polynomial(const std::vector<F>& coeffs, int order, Var var = Var::x) {
        TruncSeries s(order, var);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (static_cast<int>(k) > order) {
                if (!Ops::is_zero(coeffs[k])) throw PreconditionError("polynomial degree exceeds requested order");
                continue;
            }
            s.c_[k] = coeffs[k];
        }
        return s;
    }
    static TruncSeries constant(F v, int order, Var var = Var::x) {
        TruncSeries s(order, var);
        s.c_[0] = std::move(v);
        return s;
    }
    static TruncSeries monomial(int k, F v, int order, Var var = Var::x) {
        TruncSeries s(order, var);
        if (k <= order) s.c_[k] = std::move(v);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Var var() const { return var_; }
    const F& operator[](int k) const { return c_.at(k); }
    F& operator[](int k) { return c_.at(k); }
    // zero beyond the order is *not* implied; callers must stay within order()
    const std::vector<F>& coeffs() const { return c_; }

    int valuation() const {
        for (int k = 0; k <= order(); ++k)
            if (!Ops::is_zero(c_[k])) return k;
        return kInfiniteValuation;
    }
    bool is_zero() const { return valuation() == kInfiniteValuation; }

    TruncSeries truncated(int n) const {
        if (n > order()) throw PreconditionError("cannot raise the order of a truncated series");
        return TruncSeries(std::vector<F>(c_.begin(), c_.begin() + n + 1), var_);
    }

    TruncSeries operator+(const TruncSeries& o) const {
        int n = std::min(order(), o.order());
        TruncSeries r(n, var_);
        for (int k = 0; k <= n; ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }
    TruncSeries operator-(const TruncSeries& o) const {
        int n = std::min(order(), o.order());
        TruncSeries r(n, var_);
        for (int k = 0; k <= n; ++k) r.c_[k] = c_[k] - o.c_[k];
        return r;
    }
    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    TruncSeries operator*(const TruncSeries& o) const { return product(o, std::min(order(), o.order())); }
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries scaled(const F& a) const {
        TruncSeries r = *this;
        for (auto& v : r.c_) v *= a;
        return r;
    }

    // Cauchy product computed up to `n`; the caller vouches that n is justified.
    TruncSeries product(const TruncSeries& o, int n) const {
        TruncSeries r(n, var_);
        int va = valuation(), vb = o.valuation();
        if (va == kInfiniteValuation || vb == kInfiniteValuation) return r;
        for (int i = va; i <= std::min(order(), n); ++i) {
            if (Ops::is_zero(c_[i])) continue;
            for (int j = vb; j <= std::min(o.order(), n - i); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }

    // Exact equality on the common window.
    bool agrees_with(const TruncSeries& o) const {
        int n = std::min(order(), o.order());
        for (int k = 0; k <= n; ++k)
            if (!Ops::is_zero(c_[k] - o.c_[k])) return false;
        return true;
    }
    bool operator==(const TruncSeries& o) const { return order() == o.order() && agrees_with(o); }

private:
    static int check_order(int n) {
        if (n < 0) throw PreconditionError("negative truncation order");
        return n;
    }
    std::vector<F> c_;
    Var var_ = Var::x;
};

template <class F>
TruncSeries<F> operator*(const F& a, const TruncSeries<F>& s) {
    return s.scaled(a);
}

template <class F>
TruncSeries<F> scalar_mul(const F& a, const TruncSeries<F>& s) {
    return s.scaled(a);
}

// Product carrying its true precision: an error in s at t^{N_s+1} is multiplied by t^{v(t)}.
template <class F>
TruncSeries<F> sharp_mul(const TruncSeries<F>& s, const TruncSeries<F>& t) {
    // a window of zeros only certifies valuation >= order + 1
    int vs = std::min(s.valuation(), s.order() + 1), vt = std::min(t.valuation(), t.order() + 1);
    int n = std::min(s.order() + vt, t.order() + vs);
    return s.product(t, static_cast<int>(n));
}

// x^2 d/dx, truncated at the input order.
template <class F>
TruncSeries<F> euler_derivation(const TruncSeries<F>& s) {
    TruncSeries<F> r(s.order(), s.var());
    for (int k = 2; k <= s.order(); ++k) r[k] = FieldOps<F>::from_int(k - 1) * s[k - 1];
    return r;
}

// d/dt
template <class F>
TruncSeries<F> derivative(const TruncSeries<F>& s) {
    if (s.order() == 0) return TruncSeries<F>(0, s.var());
    TruncSeries<F> r(s.order() - 1, s.var());
    for (int k = 1; k <= s.order(); ++k) r[k - 1] = FieldOps<F>::from_int(k) * s[k];
    return r;
}

// Unique f with v(f) >= 1 and (x^2 d/dx + mu) f = g:  (k-1) f_{k-1} + mu f_k = g_k.
template <class F>
TruncSeries<F> resolvent(const F& mu, const TruncSeries<F>& g) {
    using Ops = FieldOps<F>;
    if (Ops::is_zero(mu)) throw PreconditionError("resolvent: mu = 0, use antiderivative");
    if (!Ops::is_zero(g[0])) throw PreconditionError("resolvent: right-hand side must vanish at 0");
    F inv = Ops::inverse(mu);
    TruncSeries<F> f(g.order(), g.var());
    for (int k = 1; k <= g.order(); ++k) f[k] = (g[k] - Ops::from_int(k - 1) * f[k - 1]) * inv;
    return f;
}

// f(x) = int_0^x t^{-2} g(t) dt for v(g) >= 2; one order of precision is spent.
template <class F>
TruncSeries<F> antiderivative(const TruncSeries<F>& g) {
    using Ops = FieldOps<F>;
    if (g.valuation() < 2) throw PreconditionError("antiderivative: right-hand side needs valuation >= 2");
    if (g.order() < 1) throw PreconditionError("antiderivative: order too small");
    TruncSeries<F> f(g.order() - 1, g.var());
    for (int k = 2; k <= g.order(); ++k) f[k - 1] = g[k] * Ops::inverse(Ops::from_int(k - 1));
    return f;
}

// x = -1/z: coefficient of x^n becomes (-1)^n times the coefficient of z^{-n}.
template <class F>
TruncSeries<F> change_to_z(const TruncSeries<F>& s) {
    TruncSeries<F> r(s.order(), Var::z_inv);
    for (int k = 0; k <= s.order(); ++k) r[k] = (k % 2) ? F(-s[k]) : s[k];
    return r;
}

// 1/s for s[0] != 0.
template <class F>
TruncSeries<F> series_inverse(const TruncSeries<F>& s) {
    using Ops = FieldOps<F>;
    if (Ops::is_zero(s[0])) throw PreconditionError("series_inverse: constant term is zero");
    F inv0 = Ops::inverse(s[0]);
    TruncSeries<F> r(s.order(), s.var());
    r[0] = inv0;
    for (int k = 1; k <= s.order(); ++k) {
        F acc = Ops::zero();
        for (int j = 1; j <= k; ++j) acc += s[j] * r[k - j];
        r[k] = -acc * inv0;
    }
    return r;
}

// exp(s) for s[0] == 0, via f' = s' f.
template <class F>
TruncSeries<F> series_exp(const TruncSeries<F>& s) {
    using Ops = FieldOps<F>;
    if (!Ops::is_zero(s[0])) throw PreconditionError("series_exp: constant term must vanish");
    TruncSeries<F> r(s.order(), s.var());
    r[0] = Ops::one();
    for (int k = 1; k <= s.order(); ++k) {
        F acc = Ops::zero();
        for (int j = 1; j <= k; ++j) acc += Ops::from_int(j) * s[j] * r[k - j];
        r[k] = acc * Ops::inverse(Ops::from_int(k));
    }
    return r;
}

template <class F>
std::string to_string(const TruncSeries<F>& s) {
    std::string out;
    const std::string v = var_name(s.var());
    for (int k = 0; k <= s.order(); ++k) {
        if (FieldOps<F>::is_zero(s[k])) continue;
        if (!out.empty()) out += " + ";
        out += "(" + FieldOps<F>::str(s[k]) + ")";
        if (k > 0) out += "*" + v + "^" + std::to_string(k);
    }
    if (out.empty()) out = "0";
    return out + " + O(" + v + "^" + std::to_string(s.order() + 1) + ")";
}

}  // namespace mould
