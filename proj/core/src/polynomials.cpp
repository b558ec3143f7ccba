#include "paraprod/polynomials.hpp"

#include <sstream>

namespace paraprod {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string Scalar::str() const {
    if (is_zero()) return "0";
    if (im == 0) return rat_str(re);
    std::string istr;
    if (im == 1) istr = "i";
    else if (im == -1) istr = "-i";
    else istr = rat_str(im) + "*i";
    if (re == 0) return istr;
    std::string s = rat_str(re);
    if (im > 0) s += "+" + istr;
    else s += "-" + (im == -1 ? std::string("i") : rat_str(-im) + "*i");
    return s;
}

UPoly upoly_T_transform(const UPoly& p) {
    UPoly q;
    if (p.is_zero()) return q;
    q.coeffs.assign(p.coeffs.size() + 1, WPoly{});
    for (size_t d = 0; d < p.coeffs.size(); ++d)
        q.coeffs[d + 1] = p.coeffs[d].scaled(Scalar(Rat(1, d + 1)));
    q.trim();
    return q;
}

UPoly upoly_S_transform(const UPoly& p) {
    UPoly q;
    if (p.coeffs.size() <= 1) return q; // S_g of a constant payload is 0
    q.coeffs.assign(p.coeffs.size() + 1, WPoly{});
    for (size_t d = 1; d < p.coeffs.size(); ++d) {
        // w * p_d u^d  +  (d/(d+1)) p_d u^{d+1}
        q.coeffs[d] += p.coeffs[d] * wpoly_w();
        q.coeffs[d + 1] += p.coeffs[d].scaled(Scalar(Rat(d, d + 1)));
    }
    q.trim();
    return q;
}

UPoly upoly_M_transform(const UPoly& p) {
    UPoly u_plus_w;
    u_plus_w.coeffs = {wpoly_w(), wpoly_one()};
    return u_plus_w * p;
}

Poly poly_derivative(const Poly& p) {
    Poly r;
    if (p.coeffs.size() <= 1) return r;
    r.coeffs.resize(p.coeffs.size() - 1);
    for (size_t d = 1; d < p.coeffs.size(); ++d)
        r.coeffs[d - 1] = p.coeffs[d] * Scalar(static_cast<int>(d));
    r.trim();
    return r;
}

Poly poly_antiderivative(const Poly& p) {
    Poly r;
    if (p.is_zero()) return r;
    r.coeffs.assign(p.coeffs.size() + 1, Scalar{});
    for (size_t d = 0; d < p.coeffs.size(); ++d)
        r.coeffs[d + 1] = p.coeffs[d] * Scalar(Rat(1, d + 1));
    r.trim();
    return r;
}

Scalar poly_eval(const Poly& p, const Scalar& z) {
    Scalar r(0);
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) r = r * z + *it;
    return r;
}

Poly poly_compose(const Poly& p, const Poly& q) {
    Poly r;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        r = r * q + Poly::constant(*it);
    return r;
}

Poly upoly_substitute(const UPoly& p, const Scalar& w_val, const Poly& g0) {
    Poly r;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        r = r * g0 + Poly::constant(wpoly_eval(*it, w_val));
    return r;
}

namespace {

// One monomial "coef*sym^d"; empty coef string means coefficient 1.
void append_term(std::string& out, const std::string& coef, bool coef_negative,
                 const std::string& sym, int d) {
    std::string body = coef;
    if (d > 0) {
        std::string s = sym;
        if (d > 1) s += "^" + std::to_string(d);
        if (body.empty() || body == "1") body = s;
        else if (body == "-1") body = "-" + s;
        else body += "*" + s;
    } else if (body.empty()) {
        body = "1";
    }
    if (out.empty()) {
        out = body;
    } else if (coef_negative && body[0] == '-') {
        out += "-" + body.substr(1);
    } else {
        out += "+" + body;
    }
}

} // namespace

std::string wpoly_str(const WPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        Scalar c = p.coeff(d);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool neg = cs[0] == '-';
        if (!c.is_single_term() && d > 0) { cs = "(" + cs + ")"; neg = false; }
        append_term(out, cs, neg, "w", d);
    }
    return out;
}

std::string upoly_str(const UPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        WPoly c = p.coeff(d);
        if (c.is_zero()) continue;
        std::string cs = wpoly_str(c);
        bool single = c.coeffs.size() == 1 || (c.degree() >= 0 && [&] {
            int nz = 0;
            for (const auto& x : c.coeffs) if (!x.is_zero()) ++nz;
            return nz == 1 && c.coeff(c.degree()).is_single_term();
        }());
        bool neg = cs[0] == '-';
        if (!single && d > 0) { cs = "(" + cs + ")"; neg = false; }
        append_term(out, cs, neg, "u", d);
    }
    return out;
}

std::string poly_str(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        Scalar c = p.coeff(d);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool neg = cs[0] == '-';
        if (!c.is_single_term() && d > 0) { cs = "(" + cs + ")"; neg = false; }
        append_term(out, cs, neg, var, d);
    }
    return out;
}

} // namespace paraprod
