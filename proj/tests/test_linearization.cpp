#include "doctest.h"

#include "mould/linearization.hpp"

using namespace mould;
using QPoly = MultiPoly<Rational>;

namespace {

QPoly poly(std::initializer_list<std::pair<MultiIndex, Rational>> terms) {
    QPoly p;
    for (const auto& [k, c] : terms) p.add(k, c);
    return p;
}

PolyVectorField<Rational> field_2d() {
    PolyVectorField<Rational> f;
    f.lambda = {Rational(1), ratio(5, 13)};
    f.nonlinear = {poly({{{1, 1}, Rational(2)}, {{0, 3}, ratio(1, 2)}}), poly({{{2, 0}, Rational(-1)}, {{1, 2}, Rational(3)}})};
    return f;
}

PolyMap<Rational> map_2d() {
    PolyMap<Rational> f;
    f.ell = {Rational(2), ratio(1, 3)};
    f.nonlinear = {poly({{{0, 2}, Rational(1)}, {{1, 1}, ratio(-1, 2)}}), poly({{{2, 0}, Rational(3)}, {{1, 2}, Rational(1)}})};
    return f;
}

}  // namespace

TEST_CASE("alphabet of homogeneous degrees") {
    auto a1 = homogeneous_alphabet(1, 4);
    CHECK(a1 == std::vector<MultiIndex>{{1}, {2}, {3}});
    auto a2 = homogeneous_alphabet(2, 3);
    CHECK(a2.size() == 9);
    for (const auto& m : a2) {
        CHECK(m.degree() >= 1);
        CHECK(m.degree() <= 2);
        CHECK(std::min(m[0], m[1]) >= -1);
    }
}

TEST_CASE("linearizing moulds") {
    PolyVectorField<Rational> f;
    f.lambda = {Rational(1)};
    f.nonlinear = {QPoly{}};
    CHECK(lin_mould_vf(f, MIWord{}) == 1);
    CHECK(lin_mould_vf(f, MIWord{MultiIndex{1}}) == 1);
    CHECK(lin_mould_vf(f, MIWord{MultiIndex{1}, MultiIndex{1}}) == ratio(1, 2));
    PolyMap<Rational> g;
    g.ell = {Rational(2)};
    g.nonlinear = {QPoly{}};
    CHECK(lin_mould_map(g, MIWord{MultiIndex{1}}) == 1);
    CHECK(lin_mould_map(g, MIWord{MultiIndex{1}, MultiIndex{1}}) == ratio(1, 3));

    PolyVectorField<Rational> res;
    res.lambda = {Rational(1), Rational(-1)};
    res.nonlinear = {QPoly{}, QPoly{}};
    try {
        lin_mould_vf(res, MIWord{MultiIndex{2, 1}, MultiIndex{-1, 0}});
        FAIL("expected a resonance");
    } catch (const ResonanceError& e) {
        CHECK(std::string(e.what()).find(letter_str(MultiIndex{1, 1})) != std::string::npos);
    }
}

TEST_CASE("linear systems are already linear") {
    PolyVectorField<Rational> f;
    f.lambda = {Rational(1), ratio(1, 3)};
    f.nonlinear = {QPoly{}, QPoly{}};
    auto theta = linearize_vf(f, 4);
    CHECK(theta[0] == QPoly::variable(2, 0));
    CHECK(theta[1] == QPoly::variable(2, 1));
    PolyMap<Rational> g;
    g.ell = {Rational(2), Rational(5)};
    g.nonlinear = {QPoly{}, QPoly{}};
    CHECK(linearize_map(g, 4)[1] == QPoly::variable(2, 1));
}

TEST_CASE("one-dimensional closed forms") {
    // y' = y + y^2 is linearized by y/(1-y)
    PolyVectorField<Rational> f;
    f.lambda = {Rational(1)};
    f.nonlinear = {poly({{{2}, Rational(1)}})};
    auto theta = linearize_vf(f, 4);
    CHECK(theta[0] == poly({{{1}, Rational(1)}, {{2}, Rational(1)}, {{3}, Rational(1)}, {{4}, Rational(1)}}));
    CHECK(theta == solve_vf_direct(f, 4));
    // y -> 2y + y^2 is linearized by e^y - 1
    PolyMap<Rational> g;
    g.ell = {Rational(2)};
    g.nonlinear = {poly({{{2}, Rational(1)}})};
    auto t2 = linearize_map(g, 5);
    CHECK(t2[0] == poly({{{1}, Rational(1)}, {{2}, ratio(1, 2)}, {{3}, ratio(1, 6)}, {{4}, ratio(1, 24)}, {{5}, ratio(1, 120)}}));
    CHECK(t2 == solve_map_direct(g, 5));
}

TEST_CASE("two-dimensional fields and maps against the direct solver") {
    for (int d = 2; d <= 5; ++d) {
        CHECK(linearize_vf(field_2d(), d) == solve_vf_direct(field_2d(), d));
        CHECK(linearize_map(map_2d(), d) == solve_map_direct(map_2d(), d));
    }
    // a single quadratic term
    PolyVectorField<Rational> f;
    f.lambda = {Rational(1), Rational(-3)};
    f.nonlinear = {poly({{{0, 2}, Rational(1)}}), QPoly{}};
    CHECK(linearize_vf(f, 3) == solve_vf_direct(f, 3));
}

TEST_CASE("conjugacy equations hold for the mould solution") {
    const int deg = 4;
    auto f = field_2d();
    auto theta = linearize_vf(f, deg);
    for (std::size_t i = 0; i < 2; ++i) {
        // sum_j lambda_j y_j d_j theta_i = lambda_i theta_i + nonlinear_i(theta)
        QPoly lhs;
        for (const auto& [k, c] : theta[i].terms) lhs.add(k, c * f.pairing(k));
        QPoly rhs = theta[i].scaled(f.lambda[i]) + substitute(f.nonlinear[i], theta, deg);
        CHECK(lhs == rhs.truncated(deg));
    }
    auto g = map_2d();
    auto t2 = linearize_map(g, deg);
    std::vector<QPoly> scaled_args{QPoly::variable(2, 0).scaled(g.ell[0]), QPoly::variable(2, 1).scaled(g.ell[1])};
    for (std::size_t i = 0; i < 2; ++i) {
        QPoly lhs = substitute(t2[i], scaled_args, deg);
        QPoly rhs = t2[i].scaled(g.ell[i]) + substitute(g.nonlinear[i], t2, deg);
        CHECK(lhs == rhs.truncated(deg));
    }
}

TEST_CASE("symmetry of the linearizing moulds") {
    auto f = field_2d();
    Window<MultiIndex> win(homogeneous_alphabet(2, 3), 4);
    auto m = lin_mould_vf_table(f, win);
    CHECK(check_symmetral(m, 4).ok);
    // D_phi M = I x M with phi(m) = <m, lambda>
    auto lhs = derive_Dphi(m, [&](const MultiIndex& a) { return f.pairing(a); });
    CHECK(moulds_equal(lhs, mould_mul(identity_mould(win, Rational(0)), m)));

    auto g = map_2d();
    const std::vector<MultiIndex> pair_letters{{1, 0}, {0, 1}, {2, -1}};
    std::vector<MultiIndex> sums;
    for (const auto& w : all_words(pair_letters, 3))
        if (!w.empty()) sums.push_back(word_sum(w));
    auto mm = lin_mould_map_table(g, Window<MultiIndex>(sums, 3));
    CHECK(check_symmetrel(mm, 3, &pair_letters).ok);
    // the map mould is not symmetral, the field mould is not symmetrel
    CHECK_FALSE(check_symmetral(mm, 3).ok);
}

TEST_CASE("resonances and bad input") {
    PolyVectorField<Rational> f;
    f.lambda = {Rational(1), Rational(2)};
    f.nonlinear = {QPoly{}, poly({{{2, 0}, Rational(1)}})};
    CHECK_THROWS_AS(linearize_vf(f, 3), ResonanceError);
    CHECK_THROWS_AS(solve_vf_direct(f, 3), ResonanceError);
    PolyMap<Rational> g;
    g.ell = {Rational(2), Rational(4)};
    g.nonlinear = {QPoly{}, poly({{{2, 0}, Rational(1)}})};
    CHECK_THROWS_AS(linearize_map(g, 3), ResonanceError);
    PolyVectorField<Rational> bad;
    bad.lambda = {Rational(1)};
    bad.nonlinear = {poly({{{1}, Rational(1)}})};
    CHECK_THROWS_AS(linearize_vf(bad, 3), PreconditionError);
    g.ell = {Rational(0), Rational(1)};
    CHECK_THROWS_AS(linearize_map(g, 3), PreconditionError);
}

TEST_CASE("complex spectrum") {
    PolyVectorField<Complex> f;
    f.lambda = {Complex(1, 0.5), Complex(-0.25, std::sqrt(2.0))};
    MultiPoly<Complex> p0, p1;
    p0.add(MultiIndex{1, 1}, Complex(1, 0));
    p1.add(MultiIndex{2, 0}, Complex(0, 1));
    p1.add(MultiIndex{0, 3}, Complex(0.5, 0));
    f.nonlinear = {p0, p1};
    CHECK(max_coeff_delta(linearize_vf(f, 4), solve_vf_direct(f, 4)) < 1e-12);
    PolyMap<Complex> g;
    g.ell = {Complex(2, 0), Complex(0, 0.5)};
    g.nonlinear = {p1, p0};
    CHECK(max_coeff_delta(linearize_map(g, 4), solve_map_direct(g, 4)) < 1e-12);
}
