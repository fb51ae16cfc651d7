#include "mould/saddle_node.hpp"

namespace mould {

Rational beta_general(const IntWord& w, long n0) {
    if (n0 < 0) throw PreconditionError("beta_general: n0 must be nonnegative");
    if (w.empty()) return Rational(1);
    mpz_class prod = n0;
    long partial = 0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        partial += w[k];
        prod *= n0 + partial;
        if (prod == 0) break;
    }
    return Rational(prod);
}

Rational beta(const IntWord& w) { return beta_general(w, 1); }

}  // namespace mould
