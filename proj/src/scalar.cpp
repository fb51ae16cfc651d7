#include "mould/scalar.hpp"

#include <cstdio>

namespace mould {

Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw PreconditionError("not a rational: '" + s + "'");
    if (q.get_den() == 0) throw PreconditionError("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

GaussRational GaussRational::operator/(const GaussRational& o) const {
    Rational n2 = o.re * o.re + o.im * o.im;
    if (sgn(n2) == 0) throw PreconditionError("division by zero gaussian rational");
    return {Rational((re * o.re + im * o.im) / n2), Rational((im * o.re - re * o.im) / n2)};
}

std::string FieldOps<Complex>::str(const Complex& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

}  // namespace mould
