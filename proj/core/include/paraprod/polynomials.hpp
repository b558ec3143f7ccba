// Polynomial rings used throughout:
//   WPoly — polynomials in the formal symbol w (semantics: w = g(0)), Scalar coefficients
//   UPoly — polynomials in the formal symbol u (semantics: u = g - g(0)), WPoly coefficients
//   Poly  — concrete polynomials in the disc variable z, Scalar coefficients
// plus the three delta-payload transforms induced by composing T_g, S_g, M_g
// with a trivial operator P(g-g(0))*delta_0.
#pragma once

#include "paraprod/scalar.hpp"

#include <string>
#include <vector>

namespace paraprod {

struct WTag;
struct UTag;
struct ZTag;

template <class C, class Tag>
struct BasicPoly {
    // coefficients[d] multiplies x^d; trailing zeros trimmed, zero poly = empty.
    std::vector<C> coeffs;

    BasicPoly() = default;
    explicit BasicPoly(std::vector<C> cs) : coeffs(std::move(cs)) { trim(); }
    static BasicPoly constant(C c) {
        BasicPoly p;
        if (!c.is_zero()) p.coeffs.push_back(std::move(c));
        return p;
    }
    // monomial c * x^d
    static BasicPoly monomial(C c, int d) {
        BasicPoly p;
        if (!c.is_zero()) {
            p.coeffs.assign(d + 1, C{});
            p.coeffs[d] = std::move(c);
        }
        return p;
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; } // -1 for zero
    C coeff(int d) const {
        return (d >= 0 && d < static_cast<int>(coeffs.size())) ? coeffs[d] : C{};
    }
    bool is_constant() const { return coeffs.size() <= 1; }

    BasicPoly operator-() const {
        BasicPoly r = *this;
        for (auto& c : r.coeffs) c = -c;
        return r;
    }
    friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b) {
        BasicPoly r;
        r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
        for (size_t i = 0; i < r.coeffs.size(); ++i) {
            if (i < a.coeffs.size()) r.coeffs[i] += a.coeffs[i];
            if (i < b.coeffs.size()) r.coeffs[i] += b.coeffs[i];
        }
        r.trim();
        return r;
    }
    friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b) { return a + (-b); }
    BasicPoly& operator+=(const BasicPoly& o) { *this = *this + o; return *this; }
    BasicPoly& operator-=(const BasicPoly& o) { *this = *this - o; return *this; }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        BasicPoly r;
        r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, C{});
        for (size_t i = 0; i < a.coeffs.size(); ++i)
            for (size_t j = 0; j < b.coeffs.size(); ++j)
                r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        r.trim();
        return r;
    }
    BasicPoly& operator*=(const BasicPoly& o) { *this = *this * o; return *this; }

    BasicPoly scaled(const C& c) const {
        BasicPoly r = *this;
        for (auto& x : r.coeffs) x = x * c;
        r.trim();
        return r;
    }

    BasicPoly pow(int n) const {
        BasicPoly r = constant(unit());
        for (int i = 0; i < n; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.coeffs == b.coeffs; }
    friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }

private:
    static C unit();
};

using WPoly = BasicPoly<Scalar, WTag>;
using UPoly = BasicPoly<WPoly, UTag>;
using Poly  = BasicPoly<Scalar, ZTag>;

template <> inline Scalar BasicPoly<Scalar, WTag>::unit() { return Scalar(1); }
template <> inline Scalar BasicPoly<Scalar, ZTag>::unit() { return Scalar(1); }
template <> inline WPoly BasicPoly<WPoly, UTag>::unit() { return WPoly::constant(Scalar(1)); }

inline WPoly wpoly_one() { return WPoly::constant(Scalar(1)); }
inline WPoly wpoly_w(int d = 1) { return WPoly::monomial(Scalar(1), d); }

// Substitute a concrete value for w.
inline Scalar wpoly_eval(const WPoly& p, const Scalar& w) {
    Scalar r(0);
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) r = r * w + *it;
    return r;
}

inline bool wpoly_divisible_by_w(const WPoly& p) { return p.is_zero() || p.coeffs[0].is_zero(); }
inline WPoly wpoly_div_w(const WPoly& p) {
    WPoly r;
    if (p.coeffs.size() > 1) r.coeffs.assign(p.coeffs.begin() + 1, p.coeffs.end());
    return r;
}

inline bool upoly_divisible_by_w(const UPoly& p) {
    for (const auto& c : p.coeffs)
        if (!wpoly_divisible_by_w(c)) return false;
    return true;
}
inline UPoly upoly_div_w(const UPoly& p) {
    UPoly r = p;
    for (auto& c : r.coeffs) c = wpoly_div_w(c);
    r.trim();
    return r;
}

inline UPoly upoly_u(int d = 1) { return UPoly::monomial(wpoly_one(), d); }
inline UPoly upoly_scaled(const UPoly& p, const WPoly& c) { return p.scaled(c); }

// T_g (P(g-g(0)) delta_0) = Q(g-g(0)) delta_0 with Q(u) = int_0^u P.
UPoly upoly_T_transform(const UPoly& p);
// S_g (P(g-g(0)) delta_0) = Q(g-g(0)) delta_0 with
// Q(u) = w*(P(u)-P(0)) + int_0^u t P'(t) dt.  In particular constants map to 0.
UPoly upoly_S_transform(const UPoly& p);
// M_g (P(g-g(0)) delta_0) = ((u+w) P(u)) delta_0, since g = (g-g(0)) + g(0).
UPoly upoly_M_transform(const UPoly& p);

// Concrete polynomial calculus on Poly (variable z).
Poly poly_derivative(const Poly& p);
Poly poly_antiderivative(const Poly& p); // constant term 0
Scalar poly_eval(const Poly& p, const Scalar& z);
// P(q) by Horner over the polynomial ring.
Poly poly_compose(const Poly& p, const Poly& q);

// Substitute w -> w_val in every coefficient, then u -> g0 (a z-polynomial).
Poly upoly_substitute(const UPoly& p, const Scalar& w_val, const Poly& g0);

std::string wpoly_str(const WPoly& p);
std::string upoly_str(const UPoly& p);
std::string poly_str(const Poly& p, const std::string& var = "z");

} // namespace paraprod
