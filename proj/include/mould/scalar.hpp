#pragma once

// Coefficient fields: exact rationals (GMP), Gaussian rationals, complex doubles.
// FieldOps<F> is the small vocabulary the series and mould code needs.

#include <gmpxx.h>

#include <complex>
#include <string>

#include "mould/errors.hpp"

namespace mould {

using Rational = mpq_class;
using Complex = std::complex<double>;

Rational parse_rational(const std::string& s);

inline Rational ratio(long p, long q) {
    Rational r{mpz_class(p), mpz_class(q)};
    r.canonicalize();
    return r;
}

// a + b i with exact rational parts.
struct GaussRational {
    Rational re, im;

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)), im(0) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(long v) : re(v), im(0) {}

    GaussRational operator+(const GaussRational& o) const { return {Rational(re + o.re), Rational(im + o.im)}; }
    GaussRational operator-(const GaussRational& o) const { return {Rational(re - o.re), Rational(im - o.im)}; }
    GaussRational operator-() const { return {Rational(-re), Rational(-im)}; }
    GaussRational operator*(const GaussRational& o) const {
        return {Rational(re * o.re - im * o.im), Rational(re * o.im + im * o.re)};
    }
    GaussRational& operator+=(const GaussRational& o) { re += o.re; im += o.im; return *this; }
    GaussRational& operator-=(const GaussRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }
    GaussRational operator/(const GaussRational& o) const;
    GaussRational& operator/=(const GaussRational& o) { return *this = *this / o; }
    bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRational& o) const { return !(*this == o); }
};

template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& v) { return sgn(v) == 0; }
    static Rational inverse(const Rational& v) {
        if (is_zero(v)) throw PreconditionError("division by zero rational");
        return Rational(1 / v);
    }
    static Complex to_complex(const Rational& v) { return {v.get_d(), 0.0}; }
    static std::string str(const Rational& v) { return v.get_str(); }
};

template <>
struct FieldOps<GaussRational> {
    static GaussRational zero() { return {}; }
    static GaussRational one() { return GaussRational(1); }
    static GaussRational from_int(long v) { return GaussRational(v); }
    static GaussRational from_rational(const Rational& q) { return GaussRational(q); }
    static bool is_zero(const GaussRational& v) { return sgn(v.re) == 0 && sgn(v.im) == 0; }
    static GaussRational inverse(const GaussRational& v) { return GaussRational(1) / v; }
    static Complex to_complex(const GaussRational& v) { return {v.re.get_d(), v.im.get_d()}; }
    static std::string str(const GaussRational& v) { return v.re.get_str() + "+" + v.im.get_str() + "i"; }
};

template <>
struct FieldOps<Complex> {
    static Complex zero() { return {}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long v) { return {double(v), 0.0}; }
    static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    // exact test: only used for sparsity and valuations
    static bool is_zero(const Complex& v) { return v == Complex{}; }
    static Complex inverse(const Complex& v) {
        if (is_zero(v)) throw PreconditionError("division by zero complex");
        return 1.0 / v;
    }
    static Complex to_complex(const Complex& v) { return v; }
    static std::string str(const Complex& v);
};

// n! and binomials as exact rationals.
Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace mould
