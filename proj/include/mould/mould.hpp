#pragma once

// Moulds: maps Word -> coefficient on a finite window (letters, max length).
// Coefficients are a commutative algebra: a field (Rational, GaussRational, Complex)
// or TruncSeries over one.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mould/errors.hpp"
#include "mould/scalar.hpp"
#include "mould/series.hpp"
#include "mould/words.hpp"

namespace mould {

// ---- coefficient algebra vocabulary ----

template <class C>
struct CoeffOps {
    using Scalar = C;
    static C zero_like(const C&) { return FieldOps<C>::zero(); }
    static C constant(const C&, const Scalar& a) { return a; }
    static bool is_zero(const C& c) { return FieldOps<C>::is_zero(c); }
    static C scale(const C& c, const Scalar& a) { return c * a; }
    static C inverse(const C& c) { return FieldOps<C>::inverse(c); }
    static Scalar scalar(long v) { return FieldOps<C>::from_int(v); }
    static Scalar scalar(const Rational& q) { return FieldOps<C>::from_rational(q); }
    static std::string str(const C& c) { return FieldOps<C>::str(c); }
};

template <class F>
struct CoeffOps<TruncSeries<F>> {
    using C = TruncSeries<F>;
    using Scalar = F;
    static C zero_like(const C& p) { return C(p.order(), p.var()); }
    static C constant(const C& p, const Scalar& a) { return C::constant(a, p.order(), p.var()); }
    static bool is_zero(const C& c) { return c.is_zero(); }
    static C scale(const C& c, const Scalar& a) { return c.scaled(a); }
    static C inverse(const C& c) { return series_inverse(c); }
    static Scalar scalar(long v) { return FieldOps<F>::from_int(v); }
    static Scalar scalar(const Rational& q) { return FieldOps<F>::from_rational(q); }
    static std::string str(const C& c) { return to_string(c); }
};

// ---- window ----

template <class L>
struct Window {
    std::vector<L> letters;  // sorted, without repetitions
    std::size_t max_len = 0;

    Window() = default;
    Window(std::vector<L> ls, std::size_t r) : letters(std::move(ls)), max_len(r) {
        std::sort(letters.begin(), letters.end());
        letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    }
    bool has_letter(const L& a) const { return std::binary_search(letters.begin(), letters.end(), a); }
    bool contains(const Word<L>& w) const {
        if (w.size() > max_len) return false;
        for (const L& a : w)
            if (!has_letter(a)) return false;
        return true;
    }
    std::vector<Word<L>> words() const { return all_words(letters, max_len); }
    bool operator==(const Window&) const = default;
};

enum class Symmetry { none, alternal, symmetral, symmetrel };

template <class L, class C>
class Mould {
public:
    using letter_type = L;
    using coeff_type = C;
    using Ops = CoeffOps<C>;

    Mould(Window<L> w, C zero) : win_(std::move(w)), zero_(Ops::zero_like(zero)) {}

    template <class Fn>
    static Mould tabulate(Window<L> w, C zero, Fn&& f) {
        Mould m(std::move(w), std::move(zero));
        for (const auto& word : m.win_.words()) m.set(word, f(word));
        return m;
    }

    const Window<L>& window() const { return win_; }
    const C& zero() const { return zero_; }
    bool in_window(const Word<L>& w) const { return win_.contains(w); }

    const C& at(const Word<L>& w) const {
        if (!win_.contains(w)) throw WindowError("mould evaluated outside its window at " + to_string(w));
        auto it = entries_.find(w);
        return it == entries_.end() ? zero_ : it->second;
    }
    void set(const Word<L>& w, C v) {
        if (!win_.contains(w)) throw WindowError("mould entry outside its window at " + to_string(w));
        if (Ops::is_zero(v))
            entries_.erase(w);
        else
            entries_.insert_or_assign(w, std::move(v));
    }
    const std::map<Word<L>, C>& entries() const { return entries_; }

    Symmetry declared = Symmetry::none;

private:
    Window<L> win_;
    C zero_;
    std::map<Word<L>, C> entries_;
};

template <class L, class C>
void require_same_window(const Mould<L, C>& a, const Mould<L, C>& b, const char* what) {
    if (!(a.window() == b.window())) throw WindowError(std::string(what) + ": window mismatch");
}

// ---- elementary moulds ----

template <class L, class C>
Mould<L, C> unit_mould(const Window<L>& w, const C& zero) {
    Mould<L, C> m(w, zero);
    m.set(Word<L>{}, CoeffOps<C>::constant(zero, CoeffOps<C>::scalar(1)));
    return m;
}

// I: 1 on one-letter words
template <class L, class C>
Mould<L, C> identity_mould(const Window<L>& w, const C& zero) {
    Mould<L, C> m(w, zero);
    if (w.max_len >= 1)
        for (const L& a : w.letters) m.set(Word<L>{a}, CoeffOps<C>::constant(zero, CoeffOps<C>::scalar(1)));
    return m;
}

// exp_t: t^r / r!
template <class L, class C>
Mould<L, C> exp_mould(const Window<L>& w, const C& zero, const typename CoeffOps<C>::Scalar& t) {
    using S = typename CoeffOps<C>::Scalar;
    return Mould<L, C>::tabulate(w, zero, [&](const Word<L>& word) {
        S v = CoeffOps<C>::scalar(1);
        for (std::size_t k = 1; k <= word.size(); ++k) v = v * t * CoeffOps<C>::scalar(ratio(1, static_cast<long>(k)));
        return CoeffOps<C>::constant(zero, v);
    });
}

// log: (-1)^{r-1} / r, and 0 on the empty word
template <class L, class C>
Mould<L, C> log_mould(const Window<L>& w, const C& zero) {
    return Mould<L, C>::tabulate(w, zero, [&](const Word<L>& word) {
        long r = static_cast<long>(word.size());
        if (r == 0) return CoeffOps<C>::zero_like(zero);
        return CoeffOps<C>::constant(zero, CoeffOps<C>::scalar(ratio(r % 2 ? 1 : -1, r)));
    });
}

// ---- linear structure ----

template <class L, class C>
Mould<L, C> operator+(const Mould<L, C>& a, const Mould<L, C>& b) {
    require_same_window(a, b, "mould sum");
    Mould<L, C> r = a;
    for (const auto& [w, v] : b.entries()) r.set(w, a.at(w) + v);
    r.declared = Symmetry::none;
    return r;
}

template <class L, class C>
Mould<L, C> operator-(const Mould<L, C>& a, const Mould<L, C>& b) {
    require_same_window(a, b, "mould difference");
    Mould<L, C> r = a;
    for (const auto& [w, v] : b.entries()) r.set(w, a.at(w) - v);
    r.declared = Symmetry::none;
    return r;
}

template <class L, class C>
Mould<L, C> scale(const Mould<L, C>& a, const typename CoeffOps<C>::Scalar& s) {
    Mould<L, C> r(a.window(), a.zero());
    for (const auto& [w, v] : a.entries()) r.set(w, CoeffOps<C>::scale(v, s));
    return r;
}

// Multiply each entry by an arbitrary coefficient depending on the word.
template <class L, class C, class Fn>
Mould<L, C> pointwise(const Mould<L, C>& a, Fn&& f) {
    Mould<L, C> r(a.window(), a.zero());
    for (const auto& [w, v] : a.entries()) r.set(w, f(w, v));
    return r;
}

// Same entries on a smaller window; every word of the new window must be in the old one.
template <class L, class C>
Mould<L, C> restrict_to(const Mould<L, C>& a, const Window<L>& w) {
    return Mould<L, C>::tabulate(w, a.zero(), [&](const Word<L>& word) { return a.at(word); });
}

// First word of the window where a and b differ, if any.
template <class L, class C>
std::optional<Word<L>> first_difference(const Mould<L, C>& a, const Mould<L, C>& b) {
    require_same_window(a, b, "mould comparison");
    for (const auto& w : a.window().words())
        if (!CoeffOps<C>::is_zero(a.at(w) - b.at(w))) return w;
    return std::nullopt;
}

template <class L, class C>
bool moulds_equal(const Mould<L, C>& a, const Mould<L, C>& b) {
    return !first_difference(a, b).has_value();
}

// ---- multiplication, powers, inverse ----

// P^w = sum over w = w1.w2 of M^{w1} N^{w2}
template <class L, class C>
Mould<L, C> mould_mul(const Mould<L, C>& m, const Mould<L, C>& n) {
    require_same_window(m, n, "mould_mul");
    Mould<L, C> p(m.window(), m.zero());
    for (const auto& w : m.window().words()) {
        C acc = CoeffOps<C>::zero_like(m.zero());
        for (std::size_t k = 0; k <= w.size(); ++k) {
            const C& a = m.at(w.sub(0, k));
            if (CoeffOps<C>::is_zero(a)) continue;
            const C& b = n.at(w.sub(k, w.size() - k));
            if (CoeffOps<C>::is_zero(b)) continue;
            acc = acc + a * b;
        }
        p.set(w, std::move(acc));
    }
    return p;
}

template <class L, class C>
Mould<L, C> mould_pow(const Mould<L, C>& m, unsigned s) {
    Mould<L, C> r = unit_mould(m.window(), m.zero());
    for (unsigned k = 0; k < s; ++k) r = mould_mul(r, m);
    return r;
}

template <class L, class C>
Mould<L, C> bracket(const Mould<L, C>& a, const Mould<L, C>& b) {
    return mould_mul(a, b) - mould_mul(b, a);
}

// Multiplicative inverse: G^0 = 1/mu, G^w = -(1/mu) sum_{w = a.b, a nonempty} M^a G^b.
template <class L, class C>
Mould<L, C> mould_inverse(const Mould<L, C>& m) {
    using Ops = CoeffOps<C>;
    const C& mu = m.at(Word<L>{});
    if (Ops::is_zero(mu)) throw PreconditionError("mould_inverse: empty-word coefficient is not invertible");
    C inv = Ops::inverse(mu);
    Mould<L, C> g(m.window(), m.zero());
    for (const auto& w : m.window().words()) {  // by increasing length
        if (w.empty()) {
            g.set(w, inv);
            continue;
        }
        C acc = Ops::zero_like(m.zero());
        for (std::size_t k = 1; k <= w.size(); ++k) {
            const C& a = m.at(w.sub(0, k));
            if (Ops::is_zero(a)) continue;
            acc = acc + a * g.at(w.sub(k, w.size() - k));
        }
        g.set(w, -(inv * acc));
    }
    return g;
}

// ---- composition ----

namespace detail {

// Calls f(block_sums, product of U over blocks) for every factorization of w into
// non-empty blocks accepted by keep(block).
template <class L, class C, class Keep, class Fn>
void for_each_factorization(const Word<L>& w, const Mould<L, C>& u, Keep&& keep, Fn&& f) {
    std::size_t r = w.size();
    if (r == 0) return;
    for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << (r - 1)); ++cuts) {
        std::vector<L> sums;
        C prod = CoeffOps<C>::constant(u.zero(), CoeffOps<C>::scalar(1));
        std::size_t start = 0;
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) {
            bool end = (i == r - 1) || (cuts >> i & 1);
            if (!end) continue;
            Word<L> block = w.sub(start, i + 1 - start);
            if (!keep(block)) { ok = false; break; }
            const C& ub = u.at(block);
            if (CoeffOps<C>::is_zero(ub)) { ok = false; break; }
            prod = prod * ub;
            sums.push_back(word_sum(block));
            start = i + 1;
        }
        if (ok) f(Word<L>(std::move(sums)), prod);
    }
}

template <class L, class C, class Keep>
Mould<L, C> compose_impl(const Mould<L, C>& m, const Mould<L, C>& u, Keep&& keep, const char* what) {
    Mould<L, C> c(u.window(), u.zero());
    for (const auto& w : u.window().words()) {
        if (w.empty()) {
            c.set(w, m.at(w));
            continue;
        }
        C acc = CoeffOps<C>::zero_like(u.zero());
        for_each_factorization(w, u, keep, [&](const Word<L>& sums, const C& prod) {
            if (!m.in_window(sums))
                throw WindowError(std::string(what) + ": block sums " + to_string(sums) + " of " + to_string(w) +
                                  " fall outside the outer mould's window");
            const C& mv = m.at(sums);
            if (!CoeffOps<C>::is_zero(mv)) acc = acc + mv * prod;
        });
        c.set(w, std::move(acc));
    }
    return c;
}

}  // namespace detail

// C^w = sum over factorizations w = w^1...w^s of M^{(||w^1||,...,||w^s||)} U^{w^1}...U^{w^s}
template <class L, class C>
Mould<L, C> mould_compose(const Mould<L, C>& m, const Mould<L, C>& u) {
    if (!CoeffOps<C>::is_zero(u.at(Word<L>{}))) throw PreconditionError("mould_compose: inner mould needs U^0 = 0");
    return detail::compose_impl(m, u, [](const Word<L>&) { return true; }, "mould_compose");
}

// ---- exponential and logarithm ----

// E_t(U) = sum_s t^s/s! U^{xs}, finite on the window since U^0 = 0.
template <class L, class C>
Mould<L, C> exp_E(const Mould<L, C>& u, const typename CoeffOps<C>::Scalar& t) {
    using Ops = CoeffOps<C>;
    if (!Ops::is_zero(u.at(Word<L>{}))) throw PreconditionError("exp_E: needs U^0 = 0");
    Mould<L, C> acc = unit_mould(u.window(), u.zero());
    Mould<L, C> power = acc;
    typename Ops::Scalar coef = Ops::scalar(1);
    for (std::size_t s = 1; s <= u.window().max_len; ++s) {
        power = mould_mul(power, u);
        coef = coef * t * Ops::scalar(ratio(1, static_cast<long>(s)));
        acc = acc + scale(power, coef);
    }
    return acc;
}

// Inverse of E_t: (1/t) sum_s (-1)^{s-1}/s (M - 1)^{xs}.
template <class L, class C>
Mould<L, C> log_E(const Mould<L, C>& m, const typename CoeffOps<C>::Scalar& t) {
    using Ops = CoeffOps<C>;
    if (!Ops::is_zero(m.at(Word<L>{}) - Ops::constant(m.zero(), Ops::scalar(1))))
        throw PreconditionError("log_E: needs M^0 = 1");
    Mould<L, C> n = m - unit_mould(m.window(), m.zero());
    Mould<L, C> acc(m.window(), m.zero());
    Mould<L, C> power = unit_mould(m.window(), m.zero());
    for (std::size_t s = 1; s <= m.window().max_len; ++s) {
        power = mould_mul(power, n);
        acc = acc + scale(power, Ops::scalar(ratio(s % 2 ? 1 : -1, static_cast<long>(s))));
    }
    return scale(acc, FieldOps<typename Ops::Scalar>::inverse(t));
}

// ---- involution and derivations ----

// (SM)^{w_1..w_r} = (-1)^r M^{w_r..w_1}
template <class L, class C>
Mould<L, C> involution_S(const Mould<L, C>& m) {
    Mould<L, C> r(m.window(), m.zero());
    for (const auto& [w, v] : m.entries()) r.set(w.reversed(), w.size() % 2 ? C(-v) : v);
    return r;
}

// D_phi: multiply M^w by phi(w_1) + ... + phi(w_r).
template <class L, class C, class Phi>
Mould<L, C> derive_Dphi(const Mould<L, C>& m, Phi&& phi) {
    return pointwise(m, [&](const Word<L>& w, const C& v) {
        C s = CoeffOps<C>::zero_like(m.zero());
        for (const L& a : w) s = s + phi(a);
        return C(s * v);
    });
}

// nabla M^w = ||w|| M^w for integer letters
template <class C>
Mould<int, C> derive_nabla(const Mould<int, C>& m) {
    return derive_Dphi(m, [&](int a) { return CoeffOps<C>::constant(m.zero(), CoeffOps<C>::scalar(long(a))); });
}

// Entrywise application of a derivation of the coefficient algebra.
template <class L, class C, class D>
Mould<L, C> derive_coeff(const Mould<L, C>& m, D&& d) {
    return pointwise(m, [&](const Word<L>&, const C& v) { return C(d(v)); });
}

// (nabla_U M)^w = sum over w = a.b.c, b nonempty, of U^b M^{a.(||b||).c}
template <class L, class C>
Mould<L, C> derive_nabla_U(const Mould<L, C>& m, const Mould<L, C>& u) {
    using Ops = CoeffOps<C>;
    if (!Ops::is_zero(u.at(Word<L>{}))) throw PreconditionError("derive_nabla_U: needs U^0 = 0");
    require_same_window(m, u, "derive_nabla_U");
    Mould<L, C> r(m.window(), m.zero());
    for (const auto& w : m.window().words()) {
        C acc = Ops::zero_like(m.zero());
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j <= w.size(); ++j) {
                Word<L> b = w.sub(i, j - i);
                const C& ub = u.at(b);
                if (Ops::is_zero(ub)) continue;
                Word<L> contracted = concat(w.sub(0, i), concat(Word<L>{word_sum(b)}, w.sub(j, w.size() - j)));
                if (!m.in_window(contracted))
                    throw WindowError("derive_nabla_U: block sum of " + to_string(w) + " leaves the letter domain");
                const C& mv = m.at(contracted);
                if (!Ops::is_zero(mv)) acc = acc + ub * mv;
            }
        r.set(w, std::move(acc));
    }
    return r;
}

// ---- symmetry checkers ----

template <class L>
struct SymmetryCheck {
    bool ok = true;
    Word<L> left, right;  // first violating pair
    std::string detail;
    explicit operator bool() const { return ok; }
};

namespace detail {

enum class Rule { shuffle, stuffle };

template <class L, class C>
SymmetryCheck<L> check_products(const Mould<L, C>& m, std::size_t max_total, Rule rule, bool multiplicative,
                                const std::vector<L>* pair_letters) {
    using Ops = CoeffOps<C>;
    SymmetryCheck<L> res;
    const C one = Ops::constant(m.zero(), Ops::scalar(1));
    const C& empty = m.at(Word<L>{});
    if (multiplicative ? !Ops::is_zero(empty - one) : !Ops::is_zero(empty)) {
        res.ok = false;
        res.detail = multiplicative ? "empty-word coefficient is not 1" : "empty-word coefficient is not 0";
        return res;
    }
    if (max_total > m.window().max_len) throw WindowError("symmetry check length exceeds the mould window");
    const std::vector<L>& letters = pair_letters ? *pair_letters : m.window().letters;
    auto words = all_words(letters, max_total);
    for (const auto& a : words) {
        if (a.empty()) continue;
        for (const auto& b : words) {
            if (b.empty() || a.size() + b.size() > max_total) continue;
            auto terms = rule == Rule::shuffle ? shuffle_expand(a, b) : stuffle_expand(a, b);
            C lhs = Ops::zero_like(m.zero());
            for (const auto& [w, mult] : terms) {
                const C& v = m.at(w);
                if (!Ops::is_zero(v)) lhs = lhs + Ops::scale(v, Ops::scalar(static_cast<long>(mult)));
            }
            C rhs = multiplicative ? C(m.at(a) * m.at(b)) : Ops::zero_like(m.zero());
            if (!Ops::is_zero(lhs - rhs)) {
                res.ok = false;
                res.left = a;
                res.right = b;
                res.detail = "relation fails on the pair " + to_string(a) + ", " + to_string(b);
                return res;
            }
        }
    }
    return res;
}

}  // namespace detail

// M^0 = 0 and sum_w sh(a,b;w) M^w = 0 for nonempty a, b with r(a) + r(b) <= max_total.
template <class L, class C>
SymmetryCheck<L> check_alternal(const Mould<L, C>& m, std::size_t max_total) {
    return detail::check_products(m, max_total, detail::Rule::shuffle, false, static_cast<const std::vector<L>*>(nullptr));
}

// M^0 = 1 and sum_w sh(a,b;w) M^w = M^a M^b.
template <class L, class C>
SymmetryCheck<L> check_symmetral(const Mould<L, C>& m, std::size_t max_total) {
    return detail::check_products(m, max_total, detail::Rule::shuffle, true, static_cast<const std::vector<L>*>(nullptr));
}

// As symmetral with quasi-shuffle counts. Pairs are drawn from pair_letters
// (default: the whole window); merged letters must still lie in the window.
template <class L, class C>
SymmetryCheck<L> check_symmetrel(const Mould<L, C>& m, std::size_t max_total,
                                 const std::vector<L>* pair_letters = nullptr) {
    return detail::check_products(m, max_total, detail::Rule::stuffle, true, pair_letters);
}

// ---- restricted and licit moulds (integer letters, 0 excluded) ----

template <class C>
void require_restricted(const Mould<int, C>& m, const char* what) {
    if (m.window().has_letter(0)) throw PreconditionError(std::string(what) + ": restricted moulds exclude the letter 0");
}

// U^w = 0 whenever ||w|| = 0 (in particular U^0 = 0).
template <class C>
bool is_licit(const Mould<int, C>& u) {
    if (u.window().has_letter(0)) return false;
    for (const auto& [w, v] : u.entries())
        if (word_sum(w) == 0) return false;
    return true;
}

template <class C>
Mould<int, C> restricted_identity(const Window<int>& w, const C& zero) {
    if (w.has_letter(0)) throw PreconditionError("restricted_identity: window contains 0");
    return identity_mould(w, zero);
}

// Composition keeping only blocks with nonzero sum.
template <class C>
Mould<int, C> licit_compose(const Mould<int, C>& m, const Mould<int, C>& u) {
    require_restricted(m, "licit_compose");
    require_restricted(u, "licit_compose");
    if (!is_licit(u)) throw PreconditionError("licit_compose: inner mould is not licit");
    return detail::compose_impl(m, u, [](const Word<int>& b) { return word_sum(b) != 0; }, "licit_compose");
}

// V with U o V = I_* on `target`: V^w = 0 on zero-sum words, otherwise
// V^w = (U^{(||w||)})^{-1} (I_*^w - terms with at least two blocks).
template <class C>
Mould<int, C> licit_inverse(const Mould<int, C>& u, const Window<int>& target) {
    using Ops = CoeffOps<C>;
    require_restricted(u, "licit_inverse");
    if (target.has_letter(0)) throw PreconditionError("licit_inverse: target window contains 0");
    if (!is_licit(u)) throw PreconditionError("licit_inverse: mould is not licit");
    for (int a : u.window().letters)
        if (Ops::is_zero(u.at(Word<int>{a})))
            throw PreconditionError("licit_inverse: U^(" + std::to_string(a) + ") is not invertible");
    const C one = Ops::constant(u.zero(), Ops::scalar(1));
    Mould<int, C> v(target, u.zero());
    for (const auto& w : target.words()) {
        if (w.empty() || word_sum(w) == 0) continue;
        C acc = w.size() == 1 ? one : Ops::zero_like(u.zero());
        detail::for_each_factorization(w, v, [](const Word<int>& b) { return word_sum(b) != 0; },
                                       [&](const Word<int>& sums, const C& prod) {
                                           if (sums.size() < 2) return;
                                           acc = acc - u.at(sums) * prod;
                                       });
        Word<int> total{word_sum(w)};
        if (!u.in_window(total)) throw WindowError("licit_inverse: letter " + to_string(total) + " outside U's window");
        v.set(w, Ops::inverse(u.at(total)) * acc);
    }
    return v;
}

}  // namespace mould
