#include "paraprod/series.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace paraprod {

namespace {

template <class K> bool kzero(const K& x);
template <> bool kzero<Cplx>(const Cplx& x) { return x == Cplx(0.0); }
template <> bool kzero<Scalar>(const Scalar& x) { return x.is_zero(); }

template <class K> K kone();
template <> Cplx kone<Cplx>() { return 1.0; }
template <> Scalar kone<Scalar>() { return Scalar(1); }

template <class K> K kdiv_int(const K& x, int n);
template <> Cplx kdiv_int<Cplx>(const Cplx& x, int n) { return x / static_cast<double>(n); }
template <> Scalar kdiv_int<Scalar>(const Scalar& x, int n) { return x * Scalar(Rat(1, n)); }

template <class K> K kmul_int(const K& x, int n);
template <> Cplx kmul_int<Cplx>(const Cplx& x, int n) { return x * static_cast<double>(n); }
template <> Scalar kmul_int<Scalar>(const Scalar& x, int n) { return x * Scalar(n); }

void check_same_order(int a, int b) {
    if (a != b) throw std::invalid_argument("series: operands must share the truncation order");
}

} // namespace

template <class K>
Series<K> series_add(const Series<K>& a, const Series<K>& b) {
    check_same_order(a.order(), b.order());
    Series<K> r(a.order());
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

template <class K>
Series<K> series_sub(const Series<K>& a, const Series<K>& b) {
    check_same_order(a.order(), b.order());
    Series<K> r(a.order());
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

template <class K>
Series<K> series_mul(const Series<K>& a, const Series<K>& b) {
    check_same_order(a.order(), b.order());
    Series<K> r(a.order());
    const int N = a.order();
    for (int i = 0; i <= N; ++i) {
        if (kzero(a.c[i])) continue;
        for (int j = 0; i + j <= N; ++j) {
            if (kzero(b.c[j])) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    return r;
}

template <class K>
Series<K> series_scale(const Series<K>& a, const K& c) {
    Series<K> r = a;
    for (auto& x : r.c) x = x * c;
    return r;
}

template <class K>
Series<K> series_differentiate(const Series<K>& a) {
    Series<K> r(a.order());
    for (int n = 1; n <= a.order(); ++n) r.c[n - 1] = kmul_int(a.c[n], n);
    return r;
}

template <class K>
Series<K> series_antidifferentiate(const Series<K>& a) {
    Series<K> r(a.order());
    for (int n = 0; n < a.order(); ++n) r.c[n + 1] = kdiv_int(a.c[n], n + 1);
    return r;
}

template <class K>
K series_eval(const Series<K>& a, const K& z) {
    K r{};
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = r * z + *it;
    return r;
}

template <class K>
K series_eval_deriv(const Series<K>& a, const K& z) {
    K r{};
    for (int n = a.order(); n >= 1; --n) r = r * z + kmul_int(a.c[n], n);
    return r;
}

template Series<Cplx> series_add(const Series<Cplx>&, const Series<Cplx>&);
template Series<Scalar> series_add(const Series<Scalar>&, const Series<Scalar>&);
template Series<Cplx> series_sub(const Series<Cplx>&, const Series<Cplx>&);
template Series<Scalar> series_sub(const Series<Scalar>&, const Series<Scalar>&);
template Series<Cplx> series_mul(const Series<Cplx>&, const Series<Cplx>&);
template Series<Scalar> series_mul(const Series<Scalar>&, const Series<Scalar>&);
template Series<Cplx> series_scale(const Series<Cplx>&, const Cplx&);
template Series<Scalar> series_scale(const Series<Scalar>&, const Scalar&);
template Series<Cplx> series_differentiate(const Series<Cplx>&);
template Series<Scalar> series_differentiate(const Series<Scalar>&);
template Series<Cplx> series_antidifferentiate(const Series<Cplx>&);
template Series<Scalar> series_antidifferentiate(const Series<Scalar>&);
template Cplx series_eval(const Series<Cplx>&, const Cplx&);
template Scalar series_eval(const Series<Scalar>&, const Scalar&);
template Cplx series_eval_deriv(const Series<Cplx>&, const Cplx&);
template Scalar series_eval_deriv(const Series<Scalar>&, const Scalar&);

CSeries series_exp(const CSeries& a) {
    // e' = a' e  =>  n e_n = sum_{k=1..n} k a_k e_{n-k}
    CSeries e(a.order());
    e.c[0] = std::exp(a.c[0]);
    const int N = a.order();
    for (int n = 1; n <= N; ++n) {
        Cplx s = 0.0;
        for (int k = 1; k <= n; ++k) s += static_cast<double>(k) * a.c[k] * e.c[n - k];
        e.c[n] = s / static_cast<double>(n);
    }
    return e;
}

CSeries series_log(const CSeries& a) {
    if (a.c[0] == Cplx(0.0))
        throw std::domain_error("series_log: constant term must be nonzero");
    // log(a) = log(a0) + antidiff(a'/a)
    CSeries q = series_div(series_differentiate(a), a);
    CSeries l = series_antidifferentiate(q);
    l.c[0] = std::log(a.c[0]);
    return l;
}

CSeries series_div(const CSeries& a, const CSeries& b) {
    if (b.c[0] == Cplx(0.0))
        throw std::domain_error("series_div: divisor has zero constant term");
    check_same_order(a.order(), b.order());
    CSeries q(a.order());
    const int N = a.order();
    for (int n = 0; n <= N; ++n) {
        Cplx s = a.c[n];
        for (int k = 1; k <= n; ++k) s -= b.c[k] * q.c[n - k];
        q.c[n] = s / b.c[0];
    }
    return q;
}

CSeries series_pow_real(const CSeries& a, double beta) {
    return series_exp(series_scale(series_log(a), Cplx(beta)));
}

// --------------------------------------------------------------------------

SymbolSpec SymbolSpec::polynomial(std::vector<Cplx> cs) {
    SymbolSpec s;
    s.kind = Kind::Polynomial;
    s.poly_coeffs = std::move(cs);
    return s;
}
SymbolSpec SymbolSpec::log_e_kernel() {
    SymbolSpec s;
    s.kind = Kind::LogEKernel;
    return s;
}
SymbolSpec SymbolSpec::power(SymbolSpec base, double beta) {
    SymbolSpec s;
    s.kind = Kind::Power;
    s.base = std::make_shared<SymbolSpec>(std::move(base));
    s.beta = beta;
    return s;
}
SymbolSpec SymbolSpec::dilated(SymbolSpec base, Cplx lambda) {
    if (std::abs(lambda) > 1.0 + 1e-15)
        throw std::invalid_argument("SymbolSpec::dilated: |lambda| must be <= 1");
    SymbolSpec s;
    s.kind = Kind::Dilated;
    s.base = std::make_shared<SymbolSpec>(std::move(base));
    s.lambda = lambda;
    return s;
}

Cplx SymbolSpec::eval(Cplx z) const {
    switch (kind) {
    case Kind::Polynomial: {
        Cplx r = 0.0;
        for (auto it = poly_coeffs.rbegin(); it != poly_coeffs.rend(); ++it) r = r * z + *it;
        return r;
    }
    case Kind::LogEKernel:
        return 1.0 - std::log(Cplx(1.0) - z);
    case Kind::Power:
        return std::exp(beta * std::log(base->eval(z)));
    case Kind::Dilated:
        return base->eval(lambda * z);
    }
    return 0.0;
}

Cplx SymbolSpec::eval_deriv(Cplx z) const {
    switch (kind) {
    case Kind::Polynomial: {
        Cplx r = 0.0;
        for (int n = static_cast<int>(poly_coeffs.size()) - 1; n >= 1; --n)
            r = r * z + static_cast<double>(n) * poly_coeffs[n];
        return r;
    }
    case Kind::LogEKernel:
        return 1.0 / (Cplx(1.0) - z);
    case Kind::Power:
        return beta * std::exp((beta - 1.0) * std::log(base->eval(z))) * base->eval_deriv(z);
    case Kind::Dilated:
        return lambda * base->eval_deriv(lambda * z);
    }
    return 0.0;
}

std::string SymbolSpec::str() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Polynomial: {
        os << "poly(";
        for (size_t i = 0; i < poly_coeffs.size(); ++i) {
            if (i) os << ",";
            os << poly_coeffs[i].real();
            if (poly_coeffs[i].imag() != 0.0) os << (poly_coeffs[i].imag() > 0 ? "+" : "") << poly_coeffs[i].imag() << "i";
        }
        os << ")";
        break;
    }
    case Kind::LogEKernel: os << "logek"; break;
    case Kind::Power: os << "pow(" << base->str() << "," << beta << ")"; break;
    case Kind::Dilated:
        os << "dil(" << base->str() << "," << lambda.real();
        if (lambda.imag() != 0.0) os << (lambda.imag() > 0 ? "+" : "") << lambda.imag() << "i";
        os << ")";
        break;
    }
    return os.str();
}

CSeries symbol_series(const SymbolSpec& spec, int order) {
    switch (spec.kind) {
    case SymbolSpec::Kind::Polynomial: {
        CSeries s(order);
        for (size_t i = 0; i < spec.poly_coeffs.size() && i <= static_cast<size_t>(order); ++i)
            s.c[i] = spec.poly_coeffs[i];
        return s;
    }
    case SymbolSpec::Kind::LogEKernel: {
        CSeries s(order);
        s.c[0] = 1.0;
        for (int n = 1; n <= order; ++n) s.c[n] = 1.0 / static_cast<double>(n);
        return s;
    }
    case SymbolSpec::Kind::Power: {
        CSeries b = symbol_series(*spec.base, order);
        if (b.c[0] == Cplx(0.0))
            throw std::domain_error("symbol_series: real power needs a nonzero constant term");
        return series_pow_real(b, spec.beta);
    }
    case SymbolSpec::Kind::Dilated: {
        CSeries b = symbol_series(*spec.base, order);
        Cplx f = 1.0;
        for (int n = 0; n <= order; ++n) {
            b.c[n] *= f;
            f *= spec.lambda;
        }
        return b;
    }
    }
    throw std::logic_error("unreachable symbol kind");
}

// --------------------------------------------------------------------------

namespace {

template <class K>
Series<K> apply_letter_impl(const Atom& letter, const Series<K>& f, const Series<K>& g) {
    switch (letter.kind) {
    case AtomKind::M:
        return series_mul(f, g);
    case AtomKind::T:
        return series_antidifferentiate(series_mul(f, series_differentiate(g)));
    case AtomKind::S:
        return series_antidifferentiate(series_mul(series_differentiate(f), g));
    case AtomKind::Delta:
        break;
    }
    // Delta(P): P(g - g(0)) * f(0) with w = g(0).
    Series<K> g0 = g;
    K w = g.c[0];
    g0.c[0] = K{};
    Series<K> acc(g.order());
    for (int d = letter.payload.degree(); d >= 0; --d) {
        acc = series_mul(acc, g0);
        K coef{};
        const WPoly& wc = letter.payload.coeff(d);
        // Horner in w for this coefficient.
        for (auto it = wc.coeffs.rbegin(); it != wc.coeffs.rend(); ++it) {
            if constexpr (std::is_same_v<K, Cplx>) coef = coef * w + it->to_complex();
            else coef = coef * w + *it;
        }
        acc.c[0] += coef;
    }
    return series_scale(acc, f.c[0]);
}

} // namespace

CSeries apply_letter(const Atom& letter, const CSeries& f, const CSeries& g) {
    if (letter.kind != AtomKind::Delta && letter.sym_power != 1) {
        CSeries gm = g;
        for (int i = 1; i < letter.sym_power; ++i) gm = series_mul(gm, g);
        return apply_letter_impl(Atom::letter(letter.kind), f, gm);
    }
    return apply_letter_impl(letter, f, g);
}

XSeries apply_letter(const Atom& letter, const XSeries& f, const XSeries& g) {
    if (letter.kind != AtomKind::Delta && letter.sym_power != 1) {
        XSeries gm = g;
        for (int i = 1; i < letter.sym_power; ++i) gm = series_mul(gm, g);
        return apply_letter_impl(Atom::letter(letter.kind), f, gm);
    }
    return apply_letter_impl(letter, f, g);
}

namespace {

struct SeriesApplier {
    const CSeries& g;
    std::map<int, CSeries> powers;

    const CSeries& g_power(int m) {
        auto it = powers.find(m);
        if (it != powers.end()) return it->second;
        CSeries gm = g;
        for (int i = 1; i < m; ++i) gm = series_mul(gm, g);
        return powers.emplace(m, std::move(gm)).first->second;
    }

    CSeries apply(const ExprPtr& e, const CSeries& f) {
        switch (e->kind) {
        case OperatorExpr::Kind::Atom: {
            const Atom& a = e->atom;
            if (a.kind == AtomKind::Delta) return apply_letter(a, f, g);
            return apply_letter(Atom::letter(a.kind), f, g_power(a.sym_power));
        }
        case OperatorExpr::Kind::ScalarMul: {
            Cplx c = 0.0;
            for (auto it = e->coeff.coeffs.rbegin(); it != e->coeff.coeffs.rend(); ++it)
                c = c * g.c[0] + it->to_complex();
            return series_scale(apply(e->operand, f), c);
        }
        case OperatorExpr::Kind::Sum: {
            CSeries acc(f.order());
            for (const auto& t : e->children) acc = series_add(acc, apply(t, f));
            return acc;
        }
        case OperatorExpr::Kind::Power: {
            CSeries acc = f;
            for (int i = 0; i < e->exponent; ++i) acc = apply(e->base, acc);
            return acc;
        }
        case OperatorExpr::Kind::Product: {
            CSeries acc = f;
            for (auto it = e->children.rbegin(); it != e->children.rend(); ++it)
                acc = apply(*it, acc);
            return acc;
        }
        }
        throw std::logic_error("unreachable expression kind");
    }
};

} // namespace

CSeries apply_expr(const ExprPtr& e, const CSeries& f, const CSeries& g) {
    SeriesApplier ap{g, {}};
    return ap.apply(e, f);
}

CSeries apply_expr(const ExprPtr& e, const CSeries& f, const SymbolSpec& gspec, int order) {
    if (f.order() != order)
        throw std::invalid_argument("apply_expr: f must be truncated at the requested order");
    CSeries g = symbol_series(gspec, order);
    return apply_expr(e, f, g);
}

CSeries test_function_h(Cplx lambda, double alpha, double p, int order) {
    if (std::abs(lambda) >= 1.0)
        throw std::invalid_argument("test_function_h: |lambda| must be < 1");
    const double s = (2.0 * alpha + 4.0) / p;
    CSeries h(order);
    h.c[0] = 1.0;
    Cplx lb = std::conj(lambda);
    for (int n = 0; n < order; ++n)
        h.c[n + 1] = h.c[n] * lb * (static_cast<double>(n) + s) / (static_cast<double>(n) + 1.0);
    double a2 = 1.0 - std::norm(lambda);
    return series_scale(h, Cplx(std::pow(a2, (alpha + 2.0) / p)));
}

CSeries test_function_f(double gamma, Cplx lambda, int order) {
    if (std::abs(lambda) >= 1.0 || lambda == Cplx(0.0))
        throw std::invalid_argument("test_function_f: need 0 < |lambda| < 1");
    CSeries b(order);
    b.c[0] = 1.0;
    Cplx lb = std::conj(lambda);
    for (int n = 0; n < order; ++n)
        b.c[n + 1] = b.c[n] * lb * (static_cast<double>(n) + gamma) / (static_cast<double>(n) + 1.0);
    CSeries f(order);
    for (int n = 1; n <= order; ++n) f.c[n] = b.c[n - 1];
    return f;
}

} // namespace paraprod
