#pragma once

// Seeded generators of rational moulds for the property suites.

#include <random>

#include "mould/mould.hpp"

namespace mould {

class RandomMoulds {
public:
    using QMould = Mould<int, Rational>;

    explicit RandomMoulds(std::uint64_t seed) : rng_(seed) {}

    Rational rational(long max_num = 5, long max_den = 4) {
        std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
        return ratio(num(rng_), den(rng_));
    }
    Rational nonzero_rational(long max_num = 5, long max_den = 4) {
        for (;;) {
            Rational q = rational(max_num, max_den);
            if (sgn(q) != 0) return q;
        }
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    // Dense random entries, empty word included.
    QMould any(const Window<int>& w) {
        return QMould::tabulate(w, Rational(0), [&](const IntWord&) { return rational(); });
    }
    // Same, with a prescribed empty-word value.
    QMould with_empty(const Window<int>& w, const Rational& empty) {
        QMould m = any(w);
        m.set(IntWord{}, empty);
        return m;
    }
    // Supported on one-letter words: alternal.
    QMould length_one(const Window<int>& w) {
        QMould m(w, Rational(0));
        for (int a : w.letters) m.set(IntWord{a}, rational());
        return m;
    }
    // Random combination of iterated brackets of length-one moulds.
    QMould alternal(const Window<int>& w) {
        QMould acc = length_one(w);
        for (std::size_t depth = 2; depth <= w.max_len; ++depth) {
            QMould b = length_one(w);
            for (std::size_t k = 1; k < depth; ++k) b = bracket(length_one(w), b);
            acc = acc + scale(b, rational());
        }
        return acc;
    }
    QMould symmetral(const Window<int>& w) { return exp_E(alternal(w), Rational(1)); }

    // Licit alternal mould with invertible one-letter entries: an alternal mould with its
    // zero-sum words removed (all shuffles of a pair share the same sum).
    QMould licit_alternal(const Window<int>& w) {
        QMould a = alternal(w);
        for (int l : w.letters) a.set(IntWord{l}, nonzero_rational());
        return pointwise(a, [](const IntWord& word, const Rational& v) {
            return word_sum(word) == 0 ? Rational(0) : v;
        });
    }
    QMould licit(const Window<int>& w) {
        QMould m = QMould::tabulate(w, Rational(0), [&](const IntWord& word) {
            if (word.empty() || word_sum(word) == 0) return Rational(0);
            return word.size() == 1 ? nonzero_rational() : rational();
        });
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace mould
