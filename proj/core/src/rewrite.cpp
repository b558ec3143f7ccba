#include "paraprod/rewrite.hpp"

#include <nlohmann/json.hpp>

namespace paraprod {

void CanonicalForm::add_st(StKey key, const WPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = st.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) st.erase(it);
    }
}

CanonicalForm& CanonicalForm::operator+=(const CanonicalForm& o) {
    for (const auto& [key, c] : o.st) add_st(key, c);
    delta += o.delta;
    return *this;
}

CanonicalForm CanonicalForm::scaled(const WPoly& c) const {
    CanonicalForm r;
    if (c.is_zero()) return r;
    for (const auto& [key, v] : st) r.add_st(key, v * c);
    r.delta = delta.scaled(c);
    return r;
}

bool is_trivial(const CanonicalForm& c) { return c.st.empty(); }

namespace {

// st entries sorted S-power descending then T-power ascending, matching the
// grouped reading S^n T P_n(T) + ... + S P_{n+1}(S).
std::vector<std::pair<StKey, WPoly>> sorted_entries(const CanonicalForm& c) {
    std::vector<std::pair<StKey, WPoly>> v(c.st.begin(), c.st.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.first.j != b.first.j) return a.first.j > b.first.j;
        return a.first.k < b.first.k;
    });
    return v;
}

} // namespace

std::string CanonicalForm::to_json_string() const {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [key, c] : sorted_entries(*this))
        arr.push_back(nlohmann::ordered_json{{"j", key.j}, {"k", key.k}, {"coef", wpoly_str(c)}});
    j["st"] = arr;
    j["delta"] = upoly_str(delta);
    return j.dump();
}

std::string CanonicalForm::to_plain_string() const {
    std::string out;
    auto append = [&out](std::string term) {
        if (out.empty()) out = std::move(term);
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    };
    for (const auto& [key, c] : sorted_entries(*this)) {
        std::string word;
        if (key.j > 0) word = key.j == 1 ? "S" : "S^" + std::to_string(key.j);
        if (key.k > 0) {
            if (!word.empty()) word += "*";
            word += key.k == 1 ? "T" : "T^" + std::to_string(key.k);
        }
        std::string cs = wpoly_str(c);
        if (cs == "1") append(word);
        else if (cs == "-1") append("-" + word);
        else {
            bool paren = !(c.coeffs.size() == 1 && c.coeff(0).is_single_term()) &&
                         !(c.degree() >= 0 && [&] {
                             int nz = 0;
                             for (const auto& x : c.coeffs) if (!x.is_zero()) ++nz;
                             return nz == 1 && c.coeff(c.degree()).is_single_term();
                         }());
            append((paren ? "(" + cs + ")" : cs) + "*" + word);
        }
    }
    if (!delta.is_zero()) append("d0{" + upoly_str(delta) + "}");
    if (out.empty()) out = "d0{0}"; // zero operator: no grammar literal, use empty payload
    return out;
}

// ---------------------------------------------------------------------------
// normalize
// ---------------------------------------------------------------------------

namespace {

class Reducer {
public:
    explicit Reducer(const NormalizeOptions& opt) : opt_(opt) {}

    CanonicalForm reduce(const ExprPtr& e) {
        switch (e->kind) {
        case OperatorExpr::Kind::Atom:
            return atom_form(e->atom);
        case OperatorExpr::Kind::ScalarMul:
            return reduce(e->operand).scaled(e->coeff);
        case OperatorExpr::Kind::Sum: {
            CanonicalForm acc;
            for (const auto& t : e->children) {
                acc += reduce(t);
                charge(acc);
            }
            return acc;
        }
        case OperatorExpr::Kind::Power: {
            CanonicalForm base = reduce(e->base);
            CanonicalForm acc = base;
            for (int i = 1; i < e->exponent; ++i) {
                acc = compose(base, acc);
                charge(acc);
            }
            return acc;
        }
        case OperatorExpr::Kind::Product: {
            CanonicalForm acc = reduce(e->children.back());
            for (auto it = e->children.rbegin() + 1; it != e->children.rend(); ++it) {
                acc = apply(*it, acc);
                charge(acc);
            }
            return acc;
        }
        }
        throw std::logic_error("unreachable expression kind");
    }

private:
    const NormalizeOptions& opt_;
    std::map<StKey, CanonicalForm> t_memo_; // canonical form of T ∘ S^j T^k
    size_t work_ = 0;

    void charge(const CanonicalForm& c) {
        work_ += c.st.size() + 1;
        if (work_ > opt_.term_limit)
            throw BlowupError("normalize: intermediate term count exceeded " +
                              std::to_string(opt_.term_limit) + " (resource guard)");
    }

    // Left-compose a (possibly compound) factor with an already-canonical form.
    CanonicalForm apply(const ExprPtr& e, const CanonicalForm& rhs) {
        switch (e->kind) {
        case OperatorExpr::Kind::Atom:
            return apply_atom(e->atom, rhs);
        case OperatorExpr::Kind::ScalarMul:
            return apply(e->operand, rhs).scaled(e->coeff);
        case OperatorExpr::Kind::Power: {
            CanonicalForm acc = rhs;
            for (int i = 0; i < e->exponent; ++i) acc = apply(e->base, acc);
            return acc;
        }
        case OperatorExpr::Kind::Product: {
            CanonicalForm acc = rhs;
            for (auto it = e->children.rbegin(); it != e->children.rend(); ++it)
                acc = apply(*it, acc);
            return acc;
        }
        case OperatorExpr::Kind::Sum:
            return compose(reduce(e), rhs);
        }
        throw std::logic_error("unreachable expression kind");
    }

    CanonicalForm compose(const CanonicalForm& lhs, const CanonicalForm& rhs) {
        CanonicalForm acc;
        for (const auto& [key, c] : lhs.st) {
            // S^j T^k ∘ rhs: prepend T k times, then S j times.
            CanonicalForm w = rhs;
            for (int i = 0; i < key.k; ++i) w = prepend_T(w);
            for (int i = 0; i < key.j; ++i) w = prepend_S(w);
            acc += w.scaled(c);
            charge(acc);
        }
        if (!lhs.delta.is_zero()) {
            // (D delta_0) ∘ rhs = D * (rhs.delta at u=0) delta_0; basis words die at 0.
            WPoly at0 = rhs.delta.coeff(0);
            if (!at0.is_zero()) acc.delta += lhs.delta.scaled(at0);
        }
        return acc;
    }

    // Desugar a generalized atom and prepend it:
    //   M_{g^m} = M^m,  S_{g^m} = S^m,  T_{g^m} = m S^{m-1} T.
    CanonicalForm apply_atom(const Atom& a, const CanonicalForm& rhs) {
        switch (a.kind) {
        case AtomKind::S: {
            CanonicalForm acc = rhs;
            for (int i = 0; i < a.sym_power; ++i) acc = prepend_S(acc);
            return acc;
        }
        case AtomKind::T: {
            CanonicalForm acc = prepend_T(rhs);
            for (int i = 1; i < a.sym_power; ++i) acc = prepend_S(acc);
            return acc.scaled(WPoly::constant(Scalar(a.sym_power)));
        }
        case AtomKind::M: {
            CanonicalForm acc = rhs;
            for (int i = 0; i < a.sym_power; ++i) acc = prepend_M(acc);
            return acc;
        }
        case AtomKind::Delta: {
            CanonicalForm acc;
            WPoly at0 = rhs.delta.coeff(0);
            if (!at0.is_zero()) acc.delta = a.payload.scaled(at0);
            return acc;
        }
        }
        throw std::logic_error("unreachable atom kind");
    }

    CanonicalForm atom_form(const Atom& a) {
        CanonicalForm c;
        switch (a.kind) {
        case AtomKind::S:
            c.add_st({a.sym_power, 0}, wpoly_one());
            return c;
        case AtomKind::T:
            c.add_st({a.sym_power - 1, 1}, WPoly::constant(Scalar(a.sym_power)));
            return c;
        case AtomKind::M: {
            // M = S + T + w delta_0, then M^m by repeated prepending.
            c.add_st({1, 0}, wpoly_one());
            c.add_st({0, 1}, wpoly_one());
            c.delta = UPoly::constant(wpoly_w());
            for (int i = 1; i < a.sym_power; ++i) c = prepend_M(c);
            return c;
        }
        case AtomKind::Delta:
            c.delta = a.payload;
            return c;
        }
        throw std::logic_error("unreachable atom kind");
    }

    CanonicalForm prepend_S(const CanonicalForm& c) {
        CanonicalForm r;
        for (const auto& [key, v] : c.st) r.add_st({key.j + 1, key.k}, v);
        r.delta = upoly_S_transform(c.delta);
        return r;
    }

    CanonicalForm prepend_M(const CanonicalForm& c) {
        // M = S + T + w delta_0; delta_0 annihilates every basis word.
        CanonicalForm r = prepend_S(c);
        r += prepend_T(c);
        WPoly at0 = c.delta.coeff(0);
        if (!at0.is_zero()) r.delta += UPoly::constant(at0 * wpoly_w());
        return r;
    }

    CanonicalForm prepend_T(const CanonicalForm& c) {
        CanonicalForm r;
        for (const auto& [key, v] : c.st) {
            if (key.j == 0) {
                r.add_st({0, key.k + 1}, v);
            } else {
                r += t_word(key).scaled(v);
            }
            charge(r);
        }
        r.delta += upoly_T_transform(c.delta);
        return r;
    }

    // Canonical form of T ∘ S^j T^k for j >= 1, via
    // T S = S T - T^2 - w u delta_0 applied at the leading letter.
    const CanonicalForm& t_word(StKey key) {
        auto it = t_memo_.find(key);
        if (it != t_memo_.end()) return it->second;

        CanonicalForm r;
        if (key.j == 1 && key.k == 0) {
            r.add_st({1, 1}, wpoly_one());
            r.add_st({0, 2}, WPoly::constant(Scalar(-1)));
            r.delta = UPoly::monomial(-wpoly_w(), 1); // -w u
        } else {
            // T S^j T^k = S R - T R with R = T S^{j-1} T^k; the delta_0 the
            // base identity produces dies against the nonempty word S^{j-1} T^k.
            CanonicalForm inner;
            inner.add_st({key.j - 1, key.k}, wpoly_one());
            CanonicalForm R = prepend_T(inner);
            r = prepend_S(R);
            CanonicalForm TR = prepend_T(R);
            r += TR.scaled(WPoly::constant(Scalar(-1)));
        }
        return t_memo_.emplace(key, std::move(r)).first->second;
    }
};

} // namespace

CanonicalForm normalize(const ExprPtr& e, const NormalizeOptions& opt) {
    Reducer red(opt);
    return red.reduce(e);
}

GroupedForm group(const CanonicalForm& c) {
    GroupedForm g;
    for (const auto& [key, v] : c.st) {
        if (!v.is_constant())
            throw WDependentCoefficient("group: coefficient of S^" + std::to_string(key.j) + " T^" +
                                        std::to_string(key.k) + " depends on w: " + wpoly_str(v));
        if (key.k >= 1) g.n = std::max(g.n, key.j);
    }
    g.P.assign(g.n + 1, Poly{});
    for (const auto& [key, v] : c.st) {
        Scalar coef = v.coeff(0);
        if (key.k >= 1) g.P[key.j] += Poly::monomial(coef, key.k - 1);
        else g.Pn1 += Poly::monomial(coef, key.j - 1);
    }
    g.delta_w_divisible = upoly_divisible_by_w(c.delta);
    if (g.delta_w_divisible) g.Pn2 = upoly_div_w(c.delta);
    else g.delta_raw = c.delta;
    return g;
}

ExprPtr commutator(const ExprPtr& a, const ExprPtr& b) {
    auto ab = OperatorExpr::make_product({a, b});
    auto ba = OperatorExpr::make_product({b, a});
    return OperatorExpr::make_sum({ab, OperatorExpr::make_scalar_mul(WPoly::constant(Scalar(-1)), ba)});
}

ExprPtr iterated_commutator(const ExprPtr& a, const ExprPtr& b, int k) {
    if (k < 1) throw std::invalid_argument("iterated_commutator: k must be >= 1");
    std::vector<ExprPtr> terms;
    Int binom = 1; // binom(k, j)
    for (int j = 0; j <= k; ++j) {
        std::vector<ExprPtr> word;
        for (int i = 0; i < j; ++i) word.push_back(b);
        word.push_back(a);
        for (int i = 0; i < k - j; ++i) word.push_back(b);
        ExprPtr t = OperatorExpr::make_product(std::move(word));
        Rat c(binom);
        if (j % 2) c = -c;
        terms.push_back(OperatorExpr::make_scalar_mul(WPoly::constant(Scalar(c)), t));
        binom = binom * (k - j) / (j + 1);
    }
    return OperatorExpr::make_sum(std::move(terms));
}

// ---------------------------------------------------------------------------
// exact evaluation
// ---------------------------------------------------------------------------

namespace {

Poly apply_letter_exact(const Atom& a, const Poly& f, const Poly& g) {
    switch (a.kind) {
    case AtomKind::M:
        return f * g.pow(a.sym_power);
    case AtomKind::T:
        return poly_antiderivative(f * poly_derivative(g.pow(a.sym_power)));
    case AtomKind::S:
        return poly_antiderivative(poly_derivative(f) * g.pow(a.sym_power));
    case AtomKind::Delta: {
        Scalar g0 = poly_eval(g, Scalar(0));
        Poly gm0 = g - Poly::constant(g0);
        Poly payload = upoly_substitute(a.payload, g0, gm0);
        return payload.scaled(poly_eval(f, Scalar(0)));
    }
    }
    throw std::logic_error("unreachable atom kind");
}

} // namespace

Poly evaluate_exact(const ExprPtr& e, const Poly& f, const Poly& g) {
    switch (e->kind) {
    case OperatorExpr::Kind::Atom:
        return apply_letter_exact(e->atom, f, g);
    case OperatorExpr::Kind::ScalarMul: {
        Scalar c = wpoly_eval(e->coeff, poly_eval(g, Scalar(0)));
        return evaluate_exact(e->operand, f, g).scaled(c);
    }
    case OperatorExpr::Kind::Sum: {
        Poly acc;
        for (const auto& t : e->children) acc += evaluate_exact(t, f, g);
        return acc;
    }
    case OperatorExpr::Kind::Power: {
        Poly acc = f;
        for (int i = 0; i < e->exponent; ++i) acc = evaluate_exact(e->base, acc, g);
        return acc;
    }
    case OperatorExpr::Kind::Product: {
        Poly acc = f;
        for (auto it = e->children.rbegin(); it != e->children.rend(); ++it)
            acc = evaluate_exact(*it, acc, g);
        return acc;
    }
    }
    throw std::logic_error("unreachable expression kind");
}

Poly evaluate_exact(const CanonicalForm& c, const Poly& f, const Poly& g) {
    Scalar g0 = poly_eval(g, Scalar(0));
    Poly acc;
    Poly dg = poly_derivative(g);
    for (const auto& [key, v] : c.st) {
        Poly cur = f;
        for (int i = 0; i < key.k; ++i) cur = poly_antiderivative(cur * dg);
        for (int i = 0; i < key.j; ++i) cur = poly_antiderivative(poly_derivative(cur) * g);
        acc += cur.scaled(wpoly_eval(v, g0));
    }
    if (!c.delta.is_zero()) {
        Poly gm0 = g - Poly::constant(g0);
        acc += upoly_substitute(c.delta, g0, gm0).scaled(poly_eval(f, Scalar(0)));
    }
    return acc;
}

LeadingTerm st_monomial_action(int m, int j, int n) {
    if (j < 0 || j > m || m < 1 || n < 1)
        throw std::invalid_argument("st_monomial_action: need 1 <= m, 0 <= j <= m, n >= 1");
    Rat coef = Rat(factorial(n)) / (Rat(m + n) * Rat(factorial(n + j - 1)));
    return {Scalar(coef), m + n};
}

} // namespace paraprod
