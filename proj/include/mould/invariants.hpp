#pragma once

// Ecalle invariants C_m (|m| = 1 by quadrature, m <= -2 exactly zero), the Euler-like and
// canonical Riccati closed forms, and the Martinet-Ramis invariants xi_m.

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mould/borel.hpp"
#include "mould/errors.hpp"
#include "mould/saddle_node.hpp"

namespace mould {

// value = exact_multiple * 2 pi i whenever the multiple is known exactly
struct TwoPiIValue {
    Complex value;
    std::optional<Rational> exact_multiple;
    double error = 0;
};

Complex two_pi_i();

// The polynomials hat a_eta(zeta) of a saddle-node field with polynomial a_eta.
struct BorelField {
    std::map<int, std::vector<Complex>> hat_a;
    std::optional<std::map<int, std::vector<Rational>>> exact;  // present for rational fields

    std::vector<int> alphabet() const;  // letters with hat a_eta != 0
    Complex eval(int eta, Complex zeta) const;
    const std::vector<Complex>& poly(int eta) const;
    void validate() const;  // letters >= -1, hat a_0(0) = 0
};

BorelField borel_field(const SaddleNodeField<Rational>& field);
// y + B_- x/(2 pi i) + B_+ x y^2/(2 pi i): hat a_{-1} = -B_-/(2 pi i), hat a_1 = -B_+/(2 pi i)
BorelField canonical_riccati(Complex b_minus, Complex b_plus);

// V^{(w1)}(m) = -2 pi i hat a_m(m) if w1 = m, else 0.
TwoPiIValue residue_order1(const BorelField& field, int m);

struct HyperlogOptions {
    double tol = 1e-10;
    int nodes = 16;       // Gauss nodes per panel
    int panels = 40;      // geometric panels toward the far endpoint
    int max_refinements = 4;
};

struct HyperlogResult {
    Complex value;
    double error = 0;
    int nodes = 0, panels = 0;
};

// V^w(m) = -2 pi i (hat a_{w_r} * g_{r-1})(m), g_1 = hat a_{w_1}/(zeta - w^1),
// g_k = (hat a_{w_k} * g_{k-1})/(zeta - w^k), on the segment [0, m], |m| = 1, ||w|| = m.
HyperlogResult hyperlog_V(const BorelField& field, const IntWord& w, int m, const HyperlogOptions& opt = {});

struct CmResult {
    int m = 0;
    Complex value;
    bool exact_zero = false;
    std::optional<Rational> exact_multiple;  // value / (2 pi i) when every term is exact
    std::size_t max_len = 0;
    std::size_t words = 0;
    double quadrature_error = 0;  // sum of |beta| times the per-word error estimates
    double truncation = 0;        // magnitude of the last nonzero shell
    std::vector<Complex> shells;  // shells[r]: sum over words of length r
};

// C_m = sum over ||w|| = m, beta_w != 0, r(w) <= R of beta_w V^w(m).
// m <= -2 gives exactly 0; m = 0 and m >= 2 are rejected.
CmResult compute_Cm(const BorelField& field, int m, std::size_t max_len, const HyperlogOptions& opt = {});

// C_{-1} = -2 pi i hat beta(-1), beta~ = a~_{-1} e^{-alpha~}, d alpha~/dz = a~_0; letters in {-1, 0} only.
TwoPiIValue euler_like_C(const SaddleNodeField<Rational>& field, double tol = 1e-12);

// (C_{-1}, C_1) = (B_- sigma(B_- B_+), -B_+ sigma(B_- B_+)), sigma(b) = 2 b^{-1/2} sin(b^{1/2}/2)
std::pair<Complex, Complex> riccati_oracle(Complex b_minus, Complex b_plus);
Complex riccati_sigma(Complex b);

// L^w = -V^w(||w||) for |‖w‖| = 1, 0 for other nonempty zero-sum words, 1 for the empty word.
Complex L_value(const BorelField& field, const IntWord& w, const HyperlogOptions& opt = {});

// ---- Martinet-Ramis invariants ----

// xi_{-1} = -C_{-1}; xi_m = sum over compositions m_1+..+m_r = m of (-1)^r/r! beta C_{m_1}..C_{m_r}.
template <class F>
std::map<int, F> xi_from_C(const std::map<int, F>& c, int max_m) {
    auto get = [&](int m) {
        auto it = c.find(m);
        return it == c.end() ? FieldOps<F>::zero() : it->second;
    };
    std::map<int, F> xi;
    xi[-1] = -get(-1);
    for (int m = 1; m <= max_m; ++m) {
        F acc = FieldOps<F>::zero();
        IntWord parts;
        std::function<void(int)> rec = [&](int left) {
            if (left == 0) {
                F term = FieldOps<F>::from_rational(beta(parts) * ratio(parts.size() % 2 ? -1 : 1, 1) /
                                                    factorial(static_cast<int>(parts.size())));
                for (int p : parts) term *= get(p);
                acc += term;
                return;
            }
            for (int p = 1; p <= left; ++p) {
                parts = parts.append(p);
                rec(left - p);
                parts = parts.sub(0, parts.size() - 1);
            }
        };
        rec(m);
        xi[m] = acc;
    }
    return xi;
}

template <class F>
struct FlowCheck {
    bool ok = true;
    std::vector<F> flow;  // flow[m] = coefficient of u^{m+1} of the time-1 map, m = 1..M
    std::vector<F> xi;    // xi[m] from xi_from_C
    int first_mismatch = -1;
};

namespace detail {
// Polynomials in (u, t): p[d][j] is the coefficient of u^d t^j.
template <class F>
using UTPoly = std::vector<std::vector<F>>;

template <class F>
UTPoly<F> ut_mul(const UTPoly<F>& a, const UTPoly<F>& b, int max_u) {
    UTPoly<F> r(max_u + 1);
    for (int d1 = 0; d1 < static_cast<int>(a.size()); ++d1)
        for (int d2 = 0; d2 < static_cast<int>(b.size()) && d1 + d2 <= max_u; ++d2) {
            if (a[d1].empty() || b[d2].empty()) continue;
            auto& out = r[d1 + d2];
            if (out.size() < a[d1].size() + b[d2].size() - 1) out.resize(a[d1].size() + b[d2].size() - 1, FieldOps<F>::zero());
            for (std::size_t i = 0; i < a[d1].size(); ++i)
                for (std::size_t j = 0; j < b[d2].size(); ++j) out[i + j] += a[d1][i] * b[d2][j];
        }
    return r;
}
}  // namespace detail

// Integrates du/dt = -sum_{0<m<=M} C_m u^{m+1} from t = 0 to 1 as an exact series in the initial
// value (Picard iteration on polynomials in t) and compares with u + sum xi_m u^{m+1} mod u^{M+2}.
template <class F>
FlowCheck<F> flow_check(const std::map<int, F>& c, int max_m, double tol = 0) {
    using namespace detail;
    const int max_u = max_m + 1;
    UTPoly<F> u(max_u + 1);
    u[1] = {FieldOps<F>::one()};
    for (int iter = 0; iter <= max_m; ++iter) {
        UTPoly<F> rhs(max_u + 1);
        UTPoly<F> power = u;  // u^{m+1}, built incrementally
        for (int m = 1; m <= max_m; ++m) {
            power = ut_mul(power, u, max_u);
            auto it = c.find(m);
            if (it == c.end() || FieldOps<F>::is_zero(it->second)) continue;
            for (int d = 0; d <= max_u; ++d) {
                if (power[d].size() > rhs[d].size()) rhs[d].resize(power[d].size(), FieldOps<F>::zero());
                for (std::size_t j = 0; j < power[d].size(); ++j) rhs[d][j] -= it->second * power[d][j];
            }
        }
        UTPoly<F> next(max_u + 1);
        next[1] = {FieldOps<F>::one()};
        for (int d = 0; d <= max_u; ++d) {
            if (rhs[d].empty()) continue;
            if (next[d].size() < rhs[d].size() + 1) next[d].resize(rhs[d].size() + 1, FieldOps<F>::zero());
            for (std::size_t j = 0; j < rhs[d].size(); ++j)
                next[d][j + 1] += rhs[d][j] * FieldOps<F>::inverse(FieldOps<F>::from_int(static_cast<long>(j + 1)));
        }
        u = std::move(next);
    }
    FlowCheck<F> out;
    auto xi = xi_from_C(c, max_m);
    out.flow.assign(max_m + 1, FieldOps<F>::zero());
    out.xi.assign(max_m + 1, FieldOps<F>::zero());
    for (int m = 1; m <= max_m; ++m) {
        for (const auto& v : u[m + 1]) out.flow[m] += v;
        out.xi[m] = xi[m];
        F diff = out.flow[m] - out.xi[m];
        bool same = tol > 0 ? std::abs(FieldOps<F>::to_complex(diff)) <= tol : FieldOps<F>::is_zero(diff);
        if (!same && out.ok) {
            out.ok = false;
            out.first_mismatch = m;
        }
    }
    return out;
}

}  // namespace mould
