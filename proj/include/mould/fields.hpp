#pragma once

// Reference saddle-node fields used by the tests, the acceptance run and the CLI.

#include "mould/saddle_node.hpp"

namespace mould {

// A = x + y
inline SaddleNodeField<Rational> euler_field(int x_order = 12) {
    SaddleNodeField<Rational> f;
    f.alphabet = {-1};
    f.a[-1] = {Rational(0), Rational(1)};
    f.x_order = x_order;
    return f;
}

// A = y + x + x y^2
inline SaddleNodeField<Rational> riccati_type_field(int x_order = 8) {
    SaddleNodeField<Rational> f;
    f.alphabet = {-1, 1};
    f.a[-1] = {Rational(0), Rational(1)};
    f.a[1] = {Rational(0), Rational(1)};
    f.x_order = x_order;
    return f;
}

// A = y + x + x^2 y; its only invariant is C_{-1}.
inline SaddleNodeField<Rational> euler_like_field(int x_order = 8) {
    SaddleNodeField<Rational> f;
    f.alphabet = {-1, 0};
    f.a[-1] = {Rational(0), Rational(1)};
    f.a[0] = {Rational(0), Rational(0), Rational(1)};
    f.x_order = x_order;
    return f;
}

// Every letter of {-1,0,1,2} present, every admissible x-degree up to 6 filled.
inline SaddleNodeField<Rational> dense_field() {
    SaddleNodeField<Rational> f;
    f.alphabet = {-1, 0, 1, 2};
    f.x_order = 6;
    const long table[4][7] = {
        {0, 1, -2, 1, 3, -1, 2},
        {0, 0, 1, -1, 2, 1, -3},
        {0, -1, 1, 2, -2, 3, 1},
        {0, 2, -1, 1, 1, -2, 1},
    };
    for (int i = 0; i < 4; ++i) {
        std::vector<Rational> cs;
        for (int k = 0; k <= 6; ++k) cs.push_back(ratio(table[i][k], k + i % 2 + 1));
        f.a[i - 1] = cs;
    }
    return f;
}

}  // namespace mould
