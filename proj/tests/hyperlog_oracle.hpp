#pragma once

// Independent evaluation of V^w(m) for words of length 2 and 3 by nested tanh-sinh quadrature
// written straight from the convolution integrals:
//   r = 2: V = -2 pi i int_0^m A2(m - z) A1(z)/(z - w^1) dz
//   r = 3: V = -2 pi i int_0^m A3(m - z) [int_0^z A2(z - u) A1(u)/(u - w^1) du] / (z - w^2) dz
// Inner integrals use u = z v so that a zero partial sum cancels analytically.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

struct TSNode {
    double x, one_minus_x, w;  // node on (0, 1), its distance to 1, weight
};

inline std::vector<TSNode> tanh_sinh(int level) {
    const double h = std::ldexp(1.0, -level);
    std::vector<TSNode> out;
    for (int k = -static_cast<int>(6.5 / h); k <= static_cast<int>(6.5 / h); ++k) {
        double t = k * h;
        double u = std::numbers::pi / 2 * std::sinh(t);
        double e = std::exp(-2 * std::abs(u));
        // (1 + tanh u)/2 and (1 - tanh u)/2 in cancellation-free form
        double small = e / (1 + e);
        double big = 1 / (1 + e);
        double x = u >= 0 ? big : small;
        double omx = u >= 0 ? small : big;
        double w = h * std::numbers::pi / 2 * std::cosh(t) / (std::cosh(u) * std::cosh(u)) / 2;
        if (x <= 0 || omx <= 0 || w < 1e-300) continue;
        out.push_back({x, omx, w});
    }
    return out;
}

using Poly = std::function<cd(cd)>;

// z - c for z = m x, exact near the endpoints c = 0 and c = m
inline cd shift(int m, int c, const TSNode& n) {
    if (c == m) return cd(-m * n.one_minus_x);
    if (c == 0) return cd(m * n.x);
    return cd(m * n.x - c);
}

inline cd V2(const Poly& a1, const Poly& a2, int w1, int m, int level = 7) {
    auto nodes = tanh_sinh(level);
    cd acc = 0;
    for (const auto& n : nodes) {
        cd z = cd(m * n.x);
        acc += n.w * a2(cd(m * n.one_minus_x)) * a1(z) / shift(m, w1, n);
    }
    return -cd(0, 2 * std::numbers::pi) * acc * double(m);
}

inline cd V3(const Poly& a1, const Poly& a2, const Poly& a3, int w1, int w12, int m, int level = 6) {
    auto nodes = tanh_sinh(level);
    cd acc = 0;
    for (const auto& outer : nodes) {
        double zx = outer.x;  // z = m zx
        cd inner = 0;
        for (const auto& in : nodes) {
            // u = z v, u - w^1 and z - u in terms of zx and v
            double v = in.x;
            cd u = cd(m * zx * v);
            cd den;
            if (w1 == 0) den = u;
            else if (w1 == m) den = cd(-m * (outer.one_minus_x + zx * in.one_minus_x));
            else den = u - double(w1);
            if (den == cd(0)) continue;  // underflow at the corner, where the weight vanishes too
            inner += in.w * a2(cd(m * zx * in.one_minus_x)) * a1(u) / den;
        }
        inner *= m * zx;
        acc += outer.w * a3(cd(m * outer.one_minus_x)) * inner / shift(m, w12, outer);
    }
    return -cd(0, 2 * std::numbers::pi) * acc * double(m);
}

}  // namespace oracle
