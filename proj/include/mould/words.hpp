#pragma once

// Words over an additive alphabet: integers for the saddle-node problem,
// integer tuples for linearization. Shuffle and stuffle (quasi-shuffle) counts.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mould/errors.hpp"

namespace mould {

// Letters are bounded so that sums of a few thousand of them never overflow.
inline constexpr int kMaxLetter = 1 << 20;

// Integer tuple letter. The empty tuple acts as the additive zero of any dimension.
struct MultiIndex {
    std::vector<int> v;

    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> xs) : v(xs) {}
    explicit MultiIndex(std::vector<int> xs) : v(std::move(xs)) {}

    std::size_t dim() const { return v.size(); }
    int operator[](std::size_t i) const { return i < v.size() ? v[i] : 0; }
    int degree() const { return std::accumulate(v.begin(), v.end(), 0); }  // |m|

    MultiIndex operator+(const MultiIndex& o) const {
        if (v.empty()) return o;
        if (o.v.empty()) return *this;
        if (v.size() != o.v.size()) throw PreconditionError("multi-index dimension mismatch");
        MultiIndex r = *this;
        for (std::size_t i = 0; i < v.size(); ++i) r.v[i] += o.v[i];
        return r;
    }
    MultiIndex& operator+=(const MultiIndex& o) { return *this = *this + o; }
    MultiIndex operator-(const MultiIndex& o) const {
        MultiIndex neg = o;
        for (int& x : neg.v) x = -x;
        return *this + neg;
    }
    bool is_zero() const {
        return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    }
    static MultiIndex unit(std::size_t n, std::size_t i) {
        MultiIndex e(std::vector<int>(n, 0));
        e.v[i] = 1;
        return e;
    }
    // Zero-padded comparison so that the empty tuple equals (0,...,0).
    bool operator==(const MultiIndex& o) const {
        std::size_t n = std::max(v.size(), o.v.size());
        for (std::size_t i = 0; i < n; ++i)
            if ((*this)[i] != o[i]) return false;
        return true;
    }
    std::strong_ordering operator<=>(const MultiIndex& o) const {
        std::size_t n = std::max(v.size(), o.v.size());
        for (std::size_t i = 0; i < n; ++i)
            if (auto c = (*this)[i] <=> o[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
};

inline bool letter_is_zero(int a) { return a == 0; }
inline bool letter_is_zero(const MultiIndex& a) { return a.is_zero(); }

inline void check_letter(int a) {
    if (a > kMaxLetter || a < -kMaxLetter) throw PreconditionError("letter outside the supported range");
}
inline void check_letter(const MultiIndex& m) {
    for (int x : m.v) check_letter(x);
}

std::string letter_str(int a);
std::string letter_str(const MultiIndex& m);

template <class L>
class Word {
public:
    using letter_type = L;

    Word() = default;
    Word(std::initializer_list<L> ls) : ls_(ls) { validate(); }
    explicit Word(std::vector<L> ls) : ls_(std::move(ls)) { validate(); }

    std::size_t size() const { return ls_.size(); }
    bool empty() const { return ls_.empty(); }
    const L& operator[](std::size_t i) const { return ls_[i]; }  // 0-based
    const std::vector<L>& letters() const { return ls_; }
    auto begin() const { return ls_.begin(); }
    auto end() const { return ls_.end(); }

    Word sub(std::size_t from, std::size_t len) const {
        return Word(std::vector<L>(ls_.begin() + from, ls_.begin() + from + len));
    }
    // `omega: the word with its first letter removed
    Word tail() const { return sub(1, size() - 1); }
    Word reversed() const { return Word(std::vector<L>(ls_.rbegin(), ls_.rend())); }
    Word prepend(const L& a) const {
        std::vector<L> v;
        v.reserve(size() + 1);
        v.push_back(a);
        v.insert(v.end(), ls_.begin(), ls_.end());
        return Word(std::move(v));
    }
    Word append(const L& a) const {
        Word w = *this;
        check_letter(a);
        w.ls_.push_back(a);
        return w;
    }

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;

private:
    void validate() const {
        for (const L& a : ls_) check_letter(a);
    }
    std::vector<L> ls_;
};

using IntWord = Word<int>;

template <class L>
Word<L> concat(const Word<L>& a, const Word<L>& b) {
    std::vector<L> v(a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    return Word<L>(std::move(v));
}

// ||w||, with ||empty|| = 0
template <class L>
L word_sum(const Word<L>& w) {
    L s{};
    for (const L& a : w) s = s + a;
    return s;
}

template <class L>
struct PartialSums {
    std::vector<L> forward;   // w_1 + ... + w_i
    std::vector<L> backward;  // w_i + ... + w_r
};

template <class L>
PartialSums<L> partial_sums(const Word<L>& w) {
    if (w.empty()) throw PreconditionError("partial sums of the empty word");
    std::size_t r = w.size();
    PartialSums<L> p{std::vector<L>(r), std::vector<L>(r)};
    L acc{};
    for (std::size_t i = 0; i < r; ++i) p.forward[i] = acc = acc + w[i];
    acc = L{};
    for (std::size_t i = r; i-- > 0;) p.backward[i] = acc = acc + w[i];
    return p;
}

template <class L>
std::ostream& operator<<(std::ostream& os, const Word<L>& w) {
    os << '(';
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << letter_str(w[i]);
    return os << ')';
}

template <class L>
std::string to_string(const Word<L>& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + letter_str(w[i]);
    return s + ")";
}

template <class L>
using WordCounts = std::map<Word<L>, std::uint64_t>;

// Number of interleavings of a and b that spell w. Dynamic programme over prefixes.
template <class L>
std::uint64_t shuffle_coeff(const Word<L>& a, const Word<L>& b, const Word<L>& w) {
    std::size_t p = a.size(), q = b.size();
    if (w.size() != p + q) return 0;
    std::vector<std::uint64_t> ways((p + 1) * (q + 1), 0);
    auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return ways[i * (q + 1) + j]; };
    at(0, 0) = 1;
    for (std::size_t i = 0; i <= p; ++i)
        for (std::size_t j = 0; j <= q; ++j) {
            if (i == 0 && j == 0) continue;
            std::uint64_t n = 0;
            if (i > 0 && a[i - 1] == w[i + j - 1]) n += at(i - 1, j);
            if (j > 0 && b[j - 1] == w[i + j - 1]) n += at(i, j - 1);
            at(i, j) = n;
        }
    return at(p, q);
}

// All shuffles of a and b with multiplicities, generated by interleaving masks.
template <class L>
WordCounts<L> shuffle_expand(const Word<L>& a, const Word<L>& b) {
    std::size_t p = a.size(), n = a.size() + b.size();
    if (n > 62) throw PreconditionError("shuffle_expand: words too long");
    WordCounts<L> out;
    std::vector<L> buf(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != p) continue;
        std::size_t i = 0, j = 0;
        for (std::size_t k = 0; k < n; ++k) buf[k] = (mask >> k & 1) ? a[i++] : b[j++];
        ++out[Word<L>(buf)];
    }
    return out;
}

// Quasi-shuffle: a*b = a1(a'*b) + b1(a*b') + (a1+b1)(a'*b').
template <class L>
WordCounts<L> stuffle_expand(const Word<L>& a, const Word<L>& b) {
    WordCounts<L> out;
    if (a.empty()) { out[b] = 1; return out; }
    if (b.empty()) { out[a] = 1; return out; }
    for (const auto& [w, c] : stuffle_expand(a.tail(), b)) out[w.prepend(a[0])] += c;
    for (const auto& [w, c] : stuffle_expand(a, b.tail())) out[w.prepend(b[0])] += c;
    for (const auto& [w, c] : stuffle_expand(a.tail(), b.tail())) out[w.prepend(a[0] + b[0])] += c;
    return out;
}

template <class L>
std::uint64_t stuffle_coeff(const Word<L>& a, const Word<L>& b, const Word<L>& w) {
    auto all = stuffle_expand(a, b);
    auto it = all.find(w);
    return it == all.end() ? 0 : it->second;
}

// Every word of length <= max_len over the given letters, by length then lexicographically.
template <class L>
std::vector<Word<L>> all_words(const std::vector<L>& letters, std::size_t max_len) {
    std::vector<Word<L>> out{Word<L>{}};
    std::size_t level_begin = 0;
    for (std::size_t r = 1; r <= max_len; ++r) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (const L& a : letters) out.push_back(out[i].append(a));
        level_begin = level_end;
    }
    return out;
}

template <class L>
std::vector<Word<L>> words_of_length(const std::vector<L>& letters, std::size_t len) {
    std::vector<Word<L>> out;
    for (auto& w : all_words(letters, len))
        if (w.size() == len) out.push_back(std::move(w));
    return out;
}

}  // namespace mould
