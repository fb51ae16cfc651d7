#pragma once

// Formal Borel transform c_n z^{-n-1} -> c_n zeta^n / n!, convolution, the Borel-plane
// recursion for hat V^w, and evaluation of entire germs with a tail bound.

#include <cmath>
#include <complex>
#include <vector>

#include "mould/errors.hpp"
#include "mould/saddle_node.hpp"
#include "mould/series.hpp"

namespace mould {

// Germs at zeta = 0 are TruncSeries tagged Var::zeta.
template <class F>
using BorelGerm = TruncSeries<F>;

// Series in z^{-1} with zero constant term; the germ loses one order.
template <class F>
BorelGerm<F> borel_transform(const TruncSeries<F>& s) {
    if (!FieldOps<F>::is_zero(s[0]))
        throw PreconditionError("borel_transform: constant term must be zero (carry it as the delta component)");
    if (s.order() < 1) throw PreconditionError("borel_transform: series has no z^{-1} coefficient");
    BorelGerm<F> g(s.order() - 1, Var::zeta);
    for (int n = 0; n < s.order(); ++n) g[n] = s[n + 1] * FieldOps<F>::inverse(FieldOps<F>::from_rational(factorial(n)));
    return g;
}

template <class F>
TruncSeries<F> inverse_borel(const BorelGerm<F>& g) {
    TruncSeries<F> s(g.order() + 1, Var::z_inv);
    for (int n = 0; n <= g.order(); ++n) s[n + 1] = g[n] * FieldOps<F>::from_rational(factorial(n));
    return s;
}

// d/dz on a series in z^{-1}: z^{-n} -> -n z^{-n-1}
template <class F>
TruncSeries<F> z_derivative(const TruncSeries<F>& s) {
    TruncSeries<F> r(s.order(), Var::z_inv);
    for (int n = 1; n < s.order(); ++n) r[n + 1] = FieldOps<F>::from_int(-n) * s[n];
    return r;
}

// (f * g)(zeta) = int_0^zeta f(zeta - t) g(t) dt, coefficientwise; one order is gained.
template <class F>
BorelGerm<F> convolve(const BorelGerm<F>& f, const BorelGerm<F>& g) {
    int n = std::min(f.order(), g.order()) + 1;
    BorelGerm<F> r(n, Var::zeta);
    for (int a = 0; a <= f.order() && a < n; ++a) {
        if (FieldOps<F>::is_zero(f[a])) continue;
        for (int b = 0; b <= g.order() && a + b + 1 <= n; ++b) {
            if (FieldOps<F>::is_zero(g[b])) continue;
            // a! b! / (a+b+1)! = 1 / ((a+b+1) binom(a+b, a))
            Rational w = 1 / (Rational(a + b + 1) * binomial(a + b, a));
            r[a + b + 1] += f[a] * g[b] * FieldOps<F>::from_rational(w);
        }
    }
    return r;
}

// f / (zeta - m). For m = 0 the division by zeta must be exact and costs one order.
template <class F>
BorelGerm<F> divide_by_shift(const BorelGerm<F>& f, int m) {
    using Ops = FieldOps<F>;
    if (m == 0) {
        if (!Ops::is_zero(f[0])) throw PreconditionError("division by zeta: numerator does not vanish at 0");
        if (f.order() < 1) throw PreconditionError("division by zeta: order too small");
        BorelGerm<F> r(f.order() - 1, Var::zeta);
        for (int k = 0; k < f.order(); ++k) r[k] = f[k + 1];
        return r;
    }
    // 1/(zeta - m) = -sum_k zeta^k / m^{k+1}
    BorelGerm<F> inv(f.order(), Var::zeta);
    F q = Ops::inverse(Ops::from_int(m));
    F p = -q;
    for (int k = 0; k <= f.order(); ++k) {
        inv[k] = p;
        p *= q;
    }
    return f * inv;
}

// hat a_eta = B(a_eta(-1/z)) to zeta-order `order`.
template <class F>
BorelGerm<F> borel_coefficient(const SaddleNodeField<F>& field, int eta, int order) {
    return borel_transform(change_to_z(field.coeff(eta, order + 1)));
}

// hat V^w = -(hat a_{w_1} * hat V^{w'}) / (zeta - ||w||), hat V^{empty} = delta.
template <class F>
BorelGerm<F> hatV_recursion(const SaddleNodeField<F>& field, const IntWord& w, int order) {
    field.validate();
    if (w.empty()) throw PreconditionError("hatV_recursion: the empty word is the delta component");
    const int work = order + 1;  // each division by zeta costs one order, each convolution gains one
    BorelGerm<F> v(work, Var::zeta);
    int sum = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
        sum += w[i];
        BorelGerm<F> a = borel_coefficient(field, w[i], work);
        BorelGerm<F> num = (i + 1 == w.size()) ? a : convolve(a, v);
        v = -divide_by_shift(num, sum);
    }
    return v.truncated(order);
}

struct EntireValue {
    Complex value;
    double tail_bound = 0;
    double growth = 0;  // estimated R in |c_n| <= K R^n / n!
};

// Sum of c_n z0^n with a tail bound from the majorant |c_n| <= K R^n / n!, K and R read off the
// coefficient window (R from the upper half of the window).
template <class F>
EntireValue entire_eval(const std::vector<F>& coeffs, Complex z0, double tol) {
    if (coeffs.empty()) throw PreconditionError("entire_eval: no coefficients");
    const int n_max = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> scaled(coeffs.size());  // |c_n| n!
    double fact = 1;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) fact *= n;
        scaled[n] = std::abs(FieldOps<F>::to_complex(coeffs[n])) * fact;
    }
    double growth = 0;
    for (int n = std::max(1, n_max / 2); n <= n_max; ++n)
        if (scaled[n] > 0) growth = std::max(growth, std::pow(scaled[n], 1.0 / n));
    EntireValue out;
    out.growth = growth;
    Complex acc = 0, p = 1;
    for (int n = 0; n <= n_max; ++n) {
        acc += FieldOps<F>::to_complex(coeffs[n]) * p;
        p *= z0;
    }
    out.value = acc;
    if (growth == 0) return out;  // a polynomial window: no tail is predicted
    double k = 0;
    for (int n = 0; n <= n_max; ++n) k = std::max(k, scaled[n] / std::pow(growth, n));
    double x = growth * std::abs(z0);
    if (x >= n_max + 2) throw NumericError("entire_eval: window too short for |z0| = " + std::to_string(std::abs(z0)));
    // K x^{N+1}/(N+1)! * 1/(1 - x/(N+2))
    double term = k;
    for (int n = 1; n <= n_max + 1; ++n) term *= x / n;
    out.tail_bound = term / (1 - x / (n_max + 2));
    if (!(out.tail_bound <= tol))
        throw NumericError("entire_eval: tail bound " + std::to_string(out.tail_bound) + " exceeds tolerance");
    return out;
}

}  // namespace mould
