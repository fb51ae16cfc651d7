#pragma once

// Independent solver for x^2 d_x phi + y d_y phi = A(x, phi), phi = y + sum_n phi_n y^n,
// working on plain coefficient tables. Shares nothing with the mould machinery.

#include <map>
#include <vector>

#include "mould/scalar.hpp"

namespace oracle {

using mould::Rational;
using Table = std::vector<std::vector<Rational>>;  // [y-degree][x-degree]

inline Table table_mul(const Table& p, const Table& q, int ydeg, int xord) {
    Table r(ydeg + 1, std::vector<Rational>(xord + 1, Rational(0)));
    for (int i = 0; i <= ydeg; ++i)
        for (int j = 0; i + j <= ydeg; ++j)
            for (int a = 0; a <= xord; ++a) {
                if (p[i][a] == 0) continue;
                for (int b = 0; a + b <= xord; ++b) r[i + j][a + b] += p[i][a] * q[j][b];
            }
    return r;
}

// coefficients: eta -> polynomial in x. Returns phi_n for n <= ydeg, exact to x^{xord}.
inline Table solve_conjugacy(const std::map<int, std::vector<Rational>>& coeffs, int ydeg, int xord) {
    const int work = xord + 1;  // phi_{1,k} is fixed by the x^{k+1} equation
    Table phi(ydeg + 1, std::vector<Rational>(work + 1, Rational(0)));
    for (int iter = 0; iter < 4 * (work + 2); ++iter) {
        Table ypp = phi;
        ypp[1][0] += 1;  // y + Phi
        Table g(ydeg + 1, std::vector<Rational>(work + 1, Rational(0)));
        for (const auto& [eta, poly] : coeffs) {
            Table pw(ydeg + 1, std::vector<Rational>(work + 1, Rational(0)));
            pw[0][0] = 1;
            for (int e = 0; e < eta + 1; ++e) pw = table_mul(pw, ypp, ydeg, work);
            Table a(ydeg + 1, std::vector<Rational>(work + 1, Rational(0)));
            for (int k = 0; k < static_cast<int>(poly.size()) && k <= work; ++k) a[0][k] = poly[k];
            pw = table_mul(a, pw, ydeg, work);
            for (int n = 0; n <= ydeg; ++n)
                for (int k = 0; k <= work; ++k) g[n][k] += pw[n][k];
        }
        // (k-1) phi_{n,k-1} + (n-1) phi_{n,k} = g_{n,k}
        Table next(ydeg + 1, std::vector<Rational>(work + 1, Rational(0)));
        for (int n = 0; n <= ydeg; ++n)
            for (int k = 1; k <= work; ++k) {
                if (n == 1) {
                    if (k + 1 <= work) next[1][k] = g[1][k + 1] / Rational(k);
                } else {
                    next[n][k] = (g[n][k] - Rational(k - 1) * next[n][k - 1]) / Rational(n - 1);
                }
            }
        if (next == phi) break;
        phi = std::move(next);
    }
    for (auto& row : phi) row.resize(xord + 1);
    return phi;
}

}  // namespace oracle
