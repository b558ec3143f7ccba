// Truncated Taylor series on the unit disc, in float (complex<double>) and
// exact (Scalar) coefficient modes, the concrete symbol specifications used by
// the experiments (polynomials, the kernel log(e/(1-z)), real powers,
// dilations), and the action of paraproduct letters on series.
#pragma once

#include "paraprod/expr.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace paraprod {

using Cplx = std::complex<double>;

template <class K>
struct Series {
    // coefficients[n] multiplies z^n; fixed length N+1, arithmetic never looks past it.
    std::vector<K> c;

    Series() = default;
    explicit Series(int order) : c(order + 1, K{}) {}
    int order() const { return static_cast<int>(c.size()) - 1; }

    static Series constant(K v, int order) {
        Series s(order);
        s.c[0] = v;
        return s;
    }
};

using CSeries = Series<Cplx>;
using XSeries = Series<Scalar>;

template <class K> Series<K> series_add(const Series<K>& a, const Series<K>& b);
template <class K> Series<K> series_sub(const Series<K>& a, const Series<K>& b);
template <class K> Series<K> series_mul(const Series<K>& a, const Series<K>& b);
template <class K> Series<K> series_scale(const Series<K>& a, const K& c);
template <class K> Series<K> series_differentiate(const Series<K>& a);
template <class K> Series<K> series_antidifferentiate(const Series<K>& a); // constant term 0
template <class K> K series_eval(const Series<K>& a, const K& z);
template <class K> K series_eval_deriv(const Series<K>& a, const K& z);

CSeries series_exp(const CSeries& a);
CSeries series_log(const CSeries& a);              // needs a nonzero constant term
CSeries series_pow_real(const CSeries& a, double beta);
CSeries series_div(const CSeries& a, const CSeries& b);

// --------------------------------------------------------------------------

struct SymbolSpec {
    enum class Kind { Polynomial, LogEKernel, Power, Dilated };

    Kind kind = Kind::LogEKernel;
    std::vector<Cplx> poly_coeffs;          // Polynomial
    std::shared_ptr<const SymbolSpec> base; // Power, Dilated
    double beta = 1.0;                      // Power
    Cplx lambda = 1.0;                      // Dilated, |lambda| <= 1

    static SymbolSpec polynomial(std::vector<Cplx> cs);
    static SymbolSpec log_e_kernel(); // g(z) = log(e/(1-z)): a0 = 1, an = 1/n
    static SymbolSpec power(SymbolSpec base, double beta);
    static SymbolSpec dilated(SymbolSpec base, Cplx lambda);

    // Closed-form pointwise values; exact at any |z| < 1, unlike a truncation.
    Cplx eval(Cplx z) const;
    Cplx eval_deriv(Cplx z) const;

    std::string str() const;
};

CSeries symbol_series(const SymbolSpec& spec, int order);

// Single-letter actions (shared truncation order):
//   T: antidiff(f g'),  S: antidiff(f' g),  M: f g,
//   Delta(P): P(g - g(0)) * f(0) with w = g(0).
CSeries apply_letter(const Atom& letter, const CSeries& f, const CSeries& g);
XSeries apply_letter(const Atom& letter, const XSeries& f, const XSeries& g);

// Letterwise application of an expression, right to left; generalized atoms
// take powers of the symbol series.
CSeries apply_expr(const ExprPtr& e, const CSeries& f, const SymbolSpec& g, int order);
CSeries apply_expr(const ExprPtr& e, const CSeries& f, const CSeries& g);

// Bergman-kernel test function with unit norm,
//   h_lambda(z) = (1-|lambda|^2)^{(a+2)/p} / (1 - conj(lambda) z)^{(2a+4)/p}.
CSeries test_function_h(Cplx lambda, double alpha, double p, int order);

// f_{gamma,lambda}(z) = z / (1 - conj(lambda) z)^gamma; vanishes at 0.
CSeries test_function_f(double gamma, Cplx lambda, int order);

} // namespace paraprod
