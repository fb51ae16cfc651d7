#include "mould/invariants.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "mould/quadrature.hpp"

namespace mould {

Complex two_pi_i() { return {0.0, 2 * std::numbers::pi}; }

std::vector<int> BorelField::alphabet() const {
    std::vector<int> out;
    for (const auto& [eta, p] : hat_a)
        for (const auto& c : p)
            if (c != Complex(0)) {
                out.push_back(eta);
                break;
            }
    return out;
}

const std::vector<Complex>& BorelField::poly(int eta) const {
    static const std::vector<Complex> empty;
    auto it = hat_a.find(eta);
    return it == hat_a.end() ? empty : it->second;
}

Complex BorelField::eval(int eta, Complex zeta) const {
    const auto& p = poly(eta);
    Complex acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * zeta + p[k];
    return acc;
}

void BorelField::validate() const {
    for (const auto& [eta, p] : hat_a)
        if (eta < -1) throw PreconditionError("letter " + std::to_string(eta) + " < -1 is not admissible");
    if (!poly(0).empty() && poly(0)[0] != Complex(0))
        throw PreconditionError("hat a_0 must vanish at 0 (a_0 needs valuation >= 2)");
}

BorelField borel_field(const SaddleNodeField<Rational>& field) {
    field.validate();
    BorelField out;
    std::map<int, std::vector<Rational>> exact;
    for (int eta : field.alphabet) {
        auto germ = borel_coefficient(field, eta, field.x_order);
        std::vector<Rational> cs(germ.coeffs());
        while (!cs.empty() && cs.back() == 0) cs.pop_back();
        if (cs.empty()) continue;
        std::vector<Complex> cz;
        for (const auto& c : cs) cz.push_back(FieldOps<Rational>::to_complex(c));
        out.hat_a[eta] = std::move(cz);
        exact[eta] = std::move(cs);
    }
    out.exact = std::move(exact);
    return out;
}

BorelField canonical_riccati(Complex b_minus, Complex b_plus) {
    BorelField out;
    if (b_minus != Complex(0)) out.hat_a[-1] = {-b_minus / two_pi_i()};
    if (b_plus != Complex(0)) out.hat_a[1] = {-b_plus / two_pi_i()};
    return out;
}

TwoPiIValue residue_order1(const BorelField& field, int m) {
    TwoPiIValue out;
    out.exact_multiple = Rational(0);
    out.value = -two_pi_i() * field.eval(m, Complex(m));
    if (field.exact) {
        auto it = field.exact->find(m);
        Rational acc = 0, p = 1;
        if (it != field.exact->end())
            for (const auto& c : it->second) {
                acc += c * p;
                p *= m;
            }
        out.exact_multiple = -acc;
    } else if (out.value != Complex(0)) {
        out.exact_multiple.reset();
    }
    return out;
}

namespace {

const quad::SegmentGrid& grid_for(int nodes, int panels) {
    static std::map<std::pair<int, int>, std::unique_ptr<quad::SegmentGrid>> cache;
    auto& slot = cache[{nodes, panels}];
    if (!slot) slot = std::make_unique<quad::SegmentGrid>(nodes, panels);
    return *slot;
}

// (hat a * g)(m t) = sum_n p_n n! (I^{n+1} g)(m t), I g(m t) = m int_0^t g(m tau) dtau.
// Returns the samples and the value at the far end of the grid.
Complex convolve_on_grid(const std::vector<Complex>& p, const Eigen::VectorXcd& g, int m,
                         const quad::SegmentGrid& grid, Eigen::VectorXcd& out) {
    out = Eigen::VectorXcd::Zero(g.size());
    Complex end_value = 0;
    Eigen::VectorXcd cur = g, next;
    double fact = 1;
    for (std::size_t n = 0; n < p.size(); ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        Complex end = grid.cumulative(cur, next) * static_cast<double>(m);
        next *= static_cast<double>(m);
        out += p[n] * fact * next;
        end_value += p[n] * fact * end;
        cur.swap(next);
    }
    return end_value;
}

Complex hyperlog_once(const BorelField& field, const IntWord& w, int m, const quad::SegmentGrid& grid) {
    const auto& t = grid.t();
    const auto& s = grid.s();
    const auto n = static_cast<Eigen::Index>(grid.size());
    // zeta - c at the nodes, with c = m and c = 0 taken to full relative precision
    auto shift = [&](int c, Eigen::Index i) -> double {
        if (c == m) return -m * s[i];
        if (c == 0) return m * t[i];
        return m * t[i] - c;
    };
    Eigen::VectorXcd g(n), h;
    int partial = w[0];
    for (Eigen::Index i = 0; i < n; ++i) g(i) = field.eval(w[0], Complex(m * t[i])) / shift(partial, i);
    for (std::size_t k = 1; k + 1 < w.size(); ++k) {
        partial += w[k];
        convolve_on_grid(field.poly(w[k]), g, m, grid, h);
        for (Eigen::Index i = 0; i < n; ++i) g(i) = h(i) / shift(partial, i);
    }
    Complex end = convolve_on_grid(field.poly(w[w.size() - 1]), g, m, grid, h);
    return -two_pi_i() * end;
}

}  // namespace

HyperlogResult hyperlog_V(const BorelField& field, const IntWord& w, int m, const HyperlogOptions& opt) {
    field.validate();
    if (std::abs(m) != 1) throw PreconditionError("hyperlog_V: only |m| = 1 is supported");
    if (w.empty()) throw PreconditionError("hyperlog_V: empty word");
    int total = 0;
    for (int a : w) total += a;
    if (total != m) throw PreconditionError("hyperlog_V: ||w|| = " + std::to_string(total) + " differs from m");
    HyperlogResult out;
    if (w.size() == 1) {
        out.value = residue_order1(field, m).value;
        return out;
    }
    // a letter 0 right after the partial sum reaches m stacks two poles at the endpoint
    int partial = 0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        partial += w[k];
        if (partial == m && w[k + 1] == 0)
            throw PreconditionError("hyperlog_V: word " + to_string(w) +
                                    " has a non-integrable endpoint singularity (letter 0 after reaching m)");
    }
    int nodes = opt.nodes, panels = opt.panels;
    Complex prev = hyperlog_once(field, w, m, grid_for(nodes, panels));
    for (int refine = 0; refine < opt.max_refinements; ++refine) {
        nodes += 8;
        panels += 16;
        Complex cur = hyperlog_once(field, w, m, grid_for(nodes, panels));
        double err = std::abs(cur - prev);
        if (err <= opt.tol) {
            out.value = cur;
            out.error = err;
            out.nodes = nodes;
            out.panels = panels;
            return out;
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << "hyperlog_V: word " << to_string(w) << " did not reach tolerance " << opt.tol << " after "
        << opt.max_refinements << " refinements";
    throw NumericError(msg.str());
}

CmResult compute_Cm(const BorelField& field, int m, std::size_t max_len, const HyperlogOptions& opt) {
    field.validate();
    CmResult out;
    out.m = m;
    out.max_len = max_len;
    if (m <= -2) {
        // a word with sum <= -2 and letters >= -1 passes through the partial sum -1, so beta = 0
        out.exact_zero = true;
        out.value = 0;
        out.exact_multiple = Rational(0);
        return out;
    }
    if (m != -1 && m != 1) throw PreconditionError("compute_Cm: only m = -1, m = 1 and m <= -2 are available");
    if (max_len < 1) throw PreconditionError("compute_Cm: max_len must be positive");
    const auto letters = field.alphabet();
    int max_letter = letters.empty() ? 0 : letters.back();
    out.shells.assign(max_len + 1, Complex(0));
    std::vector<std::size_t> shell_words(max_len + 1, 0);
    bool all_exact = static_cast<bool>(field.exact);
    Rational exact_sum = 0;

    IntWord w;
    // proper partial sums stay >= 0 (otherwise beta = 0); the last letter closes the sum at m
    std::function<void(int)> rec = [&](int partial) {
        const std::size_t r = w.size();
        for (int a : letters) {
            int next = partial + a;
            if (next == m) {
                IntWord full = w.append(a);
                Rational b = beta(full);
                if (b != 0) {
                    Complex v;
                    if (full.size() == 1) {
                        auto res = residue_order1(field, m);
                        v = res.value;
                        if (res.exact_multiple) exact_sum += b * *res.exact_multiple;
                        else all_exact = false;
                    } else {
                        auto res = hyperlog_V(field, full, m, opt);
                        v = res.value;
                        out.quadrature_error += b.get_d() * res.error;
                        all_exact = false;
                    }
                    out.shells[r + 1] += b.get_d() * v;
                    ++shell_words[r + 1];
                    ++out.words;
                }
            }
            if (r + 1 >= max_len || next < 0) continue;
            // the remaining letters (each >= -1, at most max_letter) must be able to reach m
            const int left = static_cast<int>(max_len - r - 1);
            if (next - left > m || next + left * max_letter < m) continue;
            w = w.append(a);
            rec(next);
            w = w.sub(0, w.size() - 1);
        }
    };
    rec(0);

    out.value = 0;
    for (const auto& s : out.shells) out.value += s;
    if (all_exact) out.exact_multiple = exact_sum;
    // convergence gate: the last nonzero shell must be smaller than the previous one
    std::vector<std::size_t> nonzero;
    for (std::size_t r = 1; r <= max_len; ++r)
        if (shell_words[r] > 0 && std::abs(out.shells[r]) > 0) nonzero.push_back(r);
    if (!nonzero.empty()) out.truncation = std::abs(out.shells[nonzero.back()]);
    if (nonzero.size() >= 2) {
        double last = std::abs(out.shells[nonzero.back()]);
        double prev = std::abs(out.shells[nonzero[nonzero.size() - 2]]);
        if (!(last < prev)) {
            std::ostringstream msg;
            msg << "compute_Cm: shells do not decrease (|shell " << nonzero[nonzero.size() - 2] << "| = " << prev
                << ", |shell " << nonzero.back() << "| = " << last << ")";
            throw NumericError(msg.str());
        }
    }
    return out;
}

TwoPiIValue euler_like_C(const SaddleNodeField<Rational>& field, double tol) {
    field.validate();
    for (int eta : field.alphabet)
        if (eta > 0) {
            auto it = field.a.find(eta);
            if (it == field.a.end()) continue;
            for (const auto& c : it->second)
                if (c != 0) throw PreconditionError("euler_like_C: the field has a letter " + std::to_string(eta) + " > 0");
        }
    for (int order = 24;; order *= 2) {
        // alpha~ = sum c_k z^{1-k}/(1-k) where a~_0 = sum c_k z^{-k}; all exact since a_0 is a polynomial
        auto a0 = change_to_z(field.coeff(0, order + 1));
        TruncSeries<Rational> alpha(order, Var::z_inv);
        bool alpha_zero = true;
        for (int k = 2; k <= order + 1; ++k) {
            alpha[k - 1] = a0[k] / Rational(1 - k);
            if (alpha[k - 1] != 0) alpha_zero = false;
        }
        auto beta_tilde = change_to_z(field.coeff(-1, order)) * series_exp(-alpha);
        auto hat_beta = borel_transform(beta_tilde);
        TwoPiIValue out;
        if (alpha_zero) {
            // hat beta is the exact polynomial B(a~_{-1})
            Rational acc = 0, p = 1;
            for (int n = 0; n <= hat_beta.order(); ++n) {
                acc += hat_beta[n] * p;
                p = -p;
            }
            out.exact_multiple = -acc;
            out.value = -acc.get_d() * two_pi_i();
            return out;
        }
        try {
            auto ev = entire_eval(hat_beta.coeffs(), Complex(-1), tol);
            out.value = -two_pi_i() * ev.value;
            out.error = 2 * std::numbers::pi * ev.tail_bound;
            return out;
        } catch (const NumericError&) {
            if (order >= 384) throw;
        }
    }
}

Complex riccati_sigma(Complex b) {
    if (std::abs(b) < 1e-6) return 1.0 - b / 24.0 + b * b / 1920.0;
    Complex r = std::sqrt(b);
    return 2.0 * std::sin(r / 2.0) / r;
}

std::pair<Complex, Complex> riccati_oracle(Complex b_minus, Complex b_plus) {
    Complex s = riccati_sigma(b_minus * b_plus);
    return {b_minus * s, -b_plus * s};
}

Complex L_value(const BorelField& field, const IntWord& w, const HyperlogOptions& opt) {
    if (w.empty()) return 1;
    int total = 0;
    for (int a : w) total += a;
    if (total == 0) return 0;
    if (std::abs(total) != 1) throw PreconditionError("L_value: only words with |sum| <= 1 are available");
    return -hyperlog_V(field, w, total, opt).value;
}

}  // namespace mould
