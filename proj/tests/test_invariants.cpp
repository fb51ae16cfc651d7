#include "doctest.h"

#include <numbers>
#include <random>

#include "hyperlog_oracle.hpp"
#include "mould/fields.hpp"
#include "mould/invariants.hpp"

using namespace mould;

namespace {

const Complex kTwoPiI(0, 2 * std::numbers::pi);
// J_0(2) = sum (-1)^n / (n!)^2
constexpr double kBesselJ0At2 = 0.22389077914123566805;

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

int word_sum(const IntWord& w) {
    int s = 0;
    for (int a : w) s += a;
    return s;
}

bool endpoint_singular(const IntWord& w, int m) {
    int partial = 0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        partial += w[k];
        if (partial == m && w[k + 1] == 0) return true;
    }
    return false;
}

oracle::Poly as_poly(const BorelField& f, int eta) {
    return [&f, eta](Complex z) { return f.eval(eta, z); };
}

// every shuffle of a and b, with multiplicity
void shuffles(const IntWord& a, const IntWord& b, IntWord prefix, std::vector<IntWord>& out) {
    if (a.empty() && b.empty()) {
        out.push_back(prefix);
        return;
    }
    if (!a.empty()) shuffles(a.tail(), b, prefix.append(a[0]), out);
    if (!b.empty()) shuffles(a, b.tail(), prefix.append(b[0]), out);
}

// a field with non-constant hat a on the letters -1, 1, 2
BorelField polynomial_field() {
    BorelField f;
    f.hat_a[-1] = {Complex(0.3, -0.1), Complex(0.5, 0), Complex(-0.2, 0.1)};
    f.hat_a[1] = {Complex(-0.4, 0.2), Complex(0.1, 0.3)};
    f.hat_a[2] = {Complex(0.25, 0), Complex(0, -0.15), Complex(0.05, 0.05)};
    return f;
}

}  // namespace

TEST_CASE("order-one values are exact residues") {
    auto euler = borel_field(euler_field());
    auto r = residue_order1(euler, -1);
    REQUIRE(r.exact_multiple);
    CHECK(*r.exact_multiple == 1);
    CHECK(close(r.value, kTwoPiI, 1e-15));
    CHECK(*residue_order1(euler, 1).exact_multiple == 0);
}

TEST_CASE("frozen second- and third-order Riccati values") {
    const Complex bm(0.7, 0.2), bp(-0.4, 0.3);
    auto f = canonical_riccati(bm, bp);
    CHECK(close(hyperlog_V(f, IntWord{1, -1, 1}, 1).value, bp * bp * bm / 24.0, 1e-12));
    CHECK(close(hyperlog_V(f, IntWord{1, 1, -1}, 1).value, -bp * bp * bm / 48.0, 1e-12));
    CHECK(close(hyperlog_V(f, IntWord{1, -1, -1}, -1).value, -bm * bm * bp / 48.0, 1e-12));
    // hat a = 1 turns V^{(1,-1,1)}(1) into 2 pi i Li_2(1)
    auto unit = canonical_riccati(-kTwoPiI, -kTwoPiI);
    CHECK(close(hyperlog_V(unit, IntWord{1, -1, 1}, 1).value, kTwoPiI * std::numbers::pi * std::numbers::pi / 6.0,
                1e-11));
    // and V^{(1,1,-1)}(1) into -2 pi i Li_2(1)/2
    CHECK(close(hyperlog_V(unit, IntWord{1, 1, -1}, 1).value,
                -kTwoPiI * std::numbers::pi * std::numbers::pi / 12.0, 1e-11));
}

TEST_CASE("quadrature agrees with nested tanh-sinh on a polynomial field") {
    auto f = borel_field(dense_field());
    auto letters = f.alphabet();
    int compared = 0;
    for (std::size_t len = 2; len <= 3; ++len)
        for (const auto& w : words_of_length(letters, len)) {
            int m = word_sum(w);
            if (std::abs(m) != 1) continue;
            if (endpoint_singular(w, m)) {
                CHECK_THROWS_AS(hyperlog_V(f, w, m), PreconditionError);
                continue;
            }
            auto got = hyperlog_V(f, w, m);
            Complex want = len == 2 ? oracle::V2(as_poly(f, w[0]), as_poly(f, w[1]), w[0], m)
                                    : oracle::V3(as_poly(f, w[0]), as_poly(f, w[1]), as_poly(f, w[2]), w[0],
                                                 w[0] + w[1], m);
            INFO("word ", to_string(w));
            CHECK(close(got.value, want, 1e-9 * std::max(1.0, std::abs(want))));
            ++compared;
        }
    CHECK(compared == 16);
}

TEST_CASE("L is shuffle-multiplicative on first-order words") {
    // L(a) L(b) = sum over shuffles; with ||b|| = 0 the left side is 0
    auto f = polynomial_field();
    std::mt19937 rng(11);
    const std::vector<int> letters{-1, 1, 2};
    std::uniform_int_distribution<int> pick(0, 2);
    int tested = 0;
    while (tested < 12) {
        IntWord a, b;
        std::size_t la = 1 + rng() % 2, lb = 2;
        for (std::size_t i = 0; i < la; ++i) a = a.append(letters[pick(rng)]);
        for (std::size_t i = 0; i < lb; ++i) b = b.append(letters[pick(rng)]);
        if (std::abs(word_sum(a)) != 1 || word_sum(b) != 0) continue;
        std::vector<IntWord> sh;
        shuffles(a, b, IntWord{}, sh);
        Complex total = 0, scale = 0;
        for (const auto& w : sh) {
            Complex l = L_value(f, w);
            total += l;
            scale += std::abs(l);
        }
        INFO(to_string(a), " x ", to_string(b));
        CHECK(std::abs(total) <= 1e-10 * std::max(1.0, std::abs(scale)));
        ++tested;
    }
    auto ric = canonical_riccati(Complex(0.5, 0), Complex(0.8, -0.1));
    CHECK(close(2.0 * L_value(ric, IntWord{1, 1, -1}) + L_value(ric, IntWord{1, -1, 1}), 0, 1e-13));
    CHECK(L_value(ric, IntWord{}) == Complex(1));
    CHECK(L_value(ric, IntWord{1, -1}) == Complex(0));
    CHECK_THROWS_AS(L_value(ric, IntWord{1, 1}), PreconditionError);
}

TEST_CASE("Euler field: C_{-1} = 2 pi i exactly") {
    auto c = compute_Cm(borel_field(euler_field()), -1, 6);
    REQUIRE(c.exact_multiple);
    CHECK(*c.exact_multiple == 1);
    CHECK(c.words == 1);
    auto e = euler_like_C(euler_field());
    REQUIRE(e.exact_multiple);
    CHECK(*e.exact_multiple == 1);
    CHECK(close(compute_Cm(borel_field(euler_field()), 1, 6).value, 0, 0));
}

TEST_CASE("Euler-like field: C_{-1} = 2 pi i J_0(2)") {
    auto field = euler_like_field();
    auto closed = euler_like_C(field);
    CHECK_FALSE(closed.exact_multiple);
    CHECK(close(closed.value, kTwoPiI * kBesselJ0At2, 1e-12));
    auto c = compute_Cm(borel_field(field), -1, 12);
    CHECK(c.words == 12);  // 0^k (-1), k = 0..11
    CHECK(close(c.value, kTwoPiI * kBesselJ0At2, 1e-9));
    CHECK(c.truncation < 1e-12);
    CHECK_THROWS_AS(euler_like_C(riccati_type_field()), PreconditionError);
}

TEST_CASE("canonical Riccati invariants") {
    const Complex bm(0.6, -0.2), bp(-0.5, 0.4);
    auto f = canonical_riccati(bm, bp);
    auto [cm_want, cp_claimed] = riccati_oracle(bm, bp);
    auto cm = compute_Cm(f, -1, 9);
    CHECK(close(cm.value, cm_want, 1e-9));
    // the series definition gives +B_+ sigma(B_- B_+) for C_1
    auto cp = compute_Cm(f, 1, 9);
    CHECK(close(cp.value, bp * riccati_sigma(bm * bp), 1e-9));
    CHECK(close(cp.value, -cp_claimed, 1e-9));
    CHECK(cp.shells[2] == Complex(0));
    CHECK(std::abs(cp.shells[3]) < std::abs(cp.shells[1]));
    CHECK(close(riccati_sigma(Complex(1e-8, 0)), riccati_sigma(Complex(2e-6, 0)), 1e-6));
    CHECK(close(riccati_sigma(Complex(4 * std::numbers::pi * std::numbers::pi, 0)), 0, 1e-12));
}

TEST_CASE("C_m outside first order") {
    auto f = canonical_riccati(Complex(1, 0), Complex(1, 0));
    for (int m : {-2, -3, -7}) {
        auto c = compute_Cm(f, m, 5);
        CHECK(c.exact_zero);
        CHECK(c.value == Complex(0));
    }
    CHECK_THROWS_AS(compute_Cm(f, 0, 5), PreconditionError);
    CHECK_THROWS_AS(compute_Cm(f, 2, 5), PreconditionError);
    // growing shells abort instead of returning a truncated sum
    CHECK_THROWS_AS(compute_Cm(canonical_riccati(Complex(60, 0), Complex(60, 0)), 1, 5), NumericError);
}

TEST_CASE("Martinet-Ramis invariants from C_m") {
    std::map<int, Rational> c{{-1, ratio(2, 3)}, {1, ratio(-1, 2)}};
    auto xi = xi_from_C(c, 5);
    CHECK(xi[-1] == ratio(-2, 3));
    // only C_1: xi_+(u) = u / (1 + C_1 u)
    for (int m = 1; m <= 5; ++m) {
        Rational want = 1;
        for (int k = 0; k < m; ++k) want *= ratio(1, 2);
        CHECK(xi[m] == want);
    }
    c[2] = ratio(3, 7);
    c[3] = ratio(-5, 4);
    xi = xi_from_C(c, 3);
    // xi_2 = -C_2 + C_1^2
    CHECK(xi[2] == -ratio(3, 7) + ratio(1, 4));
    auto fc = flow_check(c, 3);
    CHECK(fc.ok);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        std::map<int, Rational> r;
        for (int m = 1; m <= 5; ++m) r[m] = ratio(static_cast<long>(rng() % 11) - 5, 1 + rng() % 6);
        CHECK(flow_check(r, 5).ok);
    }
    std::map<int, Complex> cz{{1, Complex(0.2, 0.1)}, {2, Complex(-0.3, 0)}};
    CHECK(flow_check(cz, 4, 1e-14).ok);
}
