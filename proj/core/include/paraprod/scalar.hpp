// Exact scalar arithmetic over Q(i): arbitrary-precision rational real and
// imaginary parts. All symbolic modules (expr, rewrite) compute in this ring;
// nothing here ever rounds.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace paraprod {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rat rat_pow(const Rat& x, int n) {
    Rat r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Rising factorial k(k+1)...(k+l-1); (k)_0 = 1.
inline Int pochhammer(const Int& k, int l) {
    Int r = 1;
    for (int i = 0; i < l; ++i) r *= k + i;
    return r;
}

struct Scalar {
    Rat re{0}, im{0};

    Scalar() = default;
    Scalar(int v) : re(v) {}
    Scalar(Rat r) : re(std::move(r)) {}
    Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar unit_i() { return Scalar(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }
    Rat norm_sq() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }
    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }

    friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
    friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        Rat d = b.norm_sq();
        if (d == 0) throw std::domain_error("Scalar: division by zero");
        return Scalar((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar conj() const { return Scalar(re, -im); }

    Scalar pow(int n) const {
        Scalar r(1), b = *this;
        for (int i = 0; i < n; ++i) r *= b;
        return r;
    }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    // "0", "1", "-3/2", "i", "-2*i", "1+2*i", "1-1/3*i"
    std::string str() const;
    // True when str() needs no parentheses inside a product ("3/2*T" vs "(1+i)*T").
    bool is_single_term() const { return re == 0 || im == 0; }
};

std::string rat_str(const Rat& r);

} // namespace paraprod
