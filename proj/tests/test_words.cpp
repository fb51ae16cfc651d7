#include "doctest.h"

#include "mould/words.hpp"

using namespace mould;

namespace {

std::uint64_t binom(unsigned n, unsigned k) {
    std::uint64_t b = 1;
    for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

TEST_CASE("concatenation and sums") {
    CHECK(concat(IntWord{1, 2}, IntWord{3}) == IntWord{1, 2, 3});
    CHECK(concat(IntWord{}, IntWord{5}) == IntWord{5});
    CHECK(concat(IntWord{-1}, IntWord{}) == IntWord{-1});
    CHECK(word_sum(IntWord{1, -1, 1}) == 1);
    CHECK(word_sum(IntWord{}) == 0);
    CHECK(word_sum(IntWord{-1, -1}) == -2);
    CHECK(IntWord{1, 2, 3}.reversed() == IntWord{3, 2, 1});
    CHECK(IntWord{4, 5, 6}.tail() == IntWord{5, 6});
}

TEST_CASE("partial sums") {
    auto p = partial_sums(IntWord{1, -1, 1});
    CHECK(p.forward == std::vector<int>{1, 0, 1});
    CHECK(p.backward == std::vector<int>{1, 0, 1});
    p = partial_sums(IntWord{-1, 1, 1});
    CHECK(p.forward == std::vector<int>{-1, 0, 1});
    CHECK(p.backward == std::vector<int>{1, 2, 1});
    p = partial_sums(IntWord{2});
    CHECK(p.forward == std::vector<int>{2});
    CHECK(p.backward == std::vector<int>{2});
    CHECK_THROWS_AS(partial_sums(IntWord{}), PreconditionError);
}

TEST_CASE("letters outside the supported range are rejected") {
    CHECK_THROWS_AS(IntWord({kMaxLetter + 1}), PreconditionError);
}

TEST_CASE("shuffle coefficients") {
    IntWord a{1}, b{2, 3};
    CHECK(shuffle_coeff(a, b, IntWord{1, 2, 3}) == 1);
    CHECK(shuffle_coeff(a, b, IntWord{2, 1, 3}) == 1);
    CHECK(shuffle_coeff(a, b, IntWord{2, 3, 1}) == 1);
    CHECK(shuffle_coeff(a, b, IntWord{3, 2, 1}) == 0);
    CHECK(shuffle_coeff(a, b, IntWord{1, 3, 2}) == 0);
    CHECK(shuffle_coeff(IntWord{1}, IntWord{1}, IntWord{1, 1}) == 2);
    CHECK(shuffle_coeff(IntWord{1}, IntWord{2}, IntWord{3}) == 0);
    CHECK(shuffle_coeff(IntWord{}, IntWord{5, 6}, IntWord{5, 6}) == 1);
    CHECK(shuffle_coeff(IntWord{}, IntWord{5, 6}, IntWord{6, 5}) == 0);
}

TEST_CASE("shuffle expansion") {
    auto e = shuffle_expand(IntWord{1}, IntWord{2});
    CHECK(e == WordCounts<int>{{IntWord{1, 2}, 1}, {IntWord{2, 1}, 1}});
    e = shuffle_expand(IntWord{}, IntWord{5, 6});
    CHECK(e == WordCounts<int>{{IntWord{5, 6}, 1}});
    e = shuffle_expand(IntWord{1}, IntWord{2, 3});
    CHECK(e == WordCounts<int>{{IntWord{1, 2, 3}, 1}, {IntWord{2, 1, 3}, 1}, {IntWord{2, 3, 1}, 1}});
}

TEST_CASE("shuffle symmetry and total multiplicity up to length 5") {
    auto words = all_words(std::vector<int>{0, 1}, 5);
    for (const auto& a : words)
        for (const auto& b : words) {
            auto e = shuffle_expand(a, b);
            std::uint64_t total = 0;
            for (const auto& [w, c] : e) {
                total += c;
                CHECK(c == shuffle_coeff(a, b, w));
                CHECK(c == shuffle_coeff(b, a, w));
            }
            CHECK(total == binom(a.size() + b.size(), a.size()));
        }
}

TEST_CASE("shuffle splitting identity, exhaustive to length 3") {
    auto words = all_words(std::vector<int>{1, 2}, 3);
    for (const auto& a : words)
        for (const auto& b : words) {
            std::size_t n = a.size() + b.size();
            for (const auto& g : all_words(std::vector<int>{1, 2}, n)) {
                if (g.size() != n) continue;
                for (std::size_t cut = 0; cut <= n; ++cut) {
                    IntWord g1 = g.sub(0, cut), g2 = g.sub(cut, n - cut);
                    std::uint64_t rhs = 0;
                    for (std::size_t i = 0; i <= a.size(); ++i)
                        for (std::size_t j = 0; j <= b.size(); ++j)
                            rhs += shuffle_coeff(a.sub(0, i), b.sub(0, j), g1) *
                                   shuffle_coeff(a.sub(i, a.size() - i), b.sub(j, b.size() - j), g2);
                    CHECK(shuffle_coeff(a, b, concat(g1, g2)) == rhs);
                }
            }
        }
}

TEST_CASE("stuffle counts") {
    CHECK(stuffle_coeff(IntWord{1}, IntWord{1}, IntWord{1, 1}) == 2);
    CHECK(stuffle_coeff(IntWord{1}, IntWord{1}, IntWord{2}) == 1);
    CHECK(stuffle_coeff(IntWord{1}, IntWord{2, 3}, IntWord{3, 3}) == 1);
    CHECK(stuffle_coeff(IntWord{1}, IntWord{2, 3}, IntWord{2, 4}) == 1);
    auto e = stuffle_expand(IntWord{1}, IntWord{2, 3});
    std::uint64_t total = 0;
    for (const auto& [w, c] : e) total += c;
    CHECK(total == 5);  // 3 shuffles + 2 contractions
    // symmetric in its two arguments
    for (const auto& a : all_words(std::vector<int>{1, 2}, 3))
        for (const auto& b : all_words(std::vector<int>{1, 2}, 2)) CHECK(stuffle_expand(a, b) == stuffle_expand(b, a));
}

TEST_CASE("multi-index letters") {
    using MW = Word<MultiIndex>;
    MultiIndex m{1, 0}, n{0, 2};
    CHECK((m + n) == MultiIndex{1, 2});
    CHECK(word_sum(MW{m, n, m}) == MultiIndex{2, 2});
    CHECK(word_sum(MW{}).is_zero());
    CHECK(stuffle_coeff(MW{m}, MW{n}, MW{MultiIndex{1, 2}}) == 1);
    auto p = partial_sums(MW{m, n});
    CHECK(p.backward[0] == MultiIndex{1, 2});
    CHECK(p.backward[1] == n);
}
