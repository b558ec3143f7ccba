#include "paraprod/expr.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>

namespace paraprod {

ExprPtr OperatorExpr::make_atom(Atom a) {
    auto e = std::make_shared<OperatorExpr>();
    e->kind = Kind::Atom;
    e->atom = std::move(a);
    return e;
}

ExprPtr OperatorExpr::make_sum(std::vector<ExprPtr> terms) {
    if (terms.empty()) throw std::invalid_argument("empty sum");
    if (terms.size() == 1) return terms[0];
    auto e = std::make_shared<OperatorExpr>();
    e->kind = Kind::Sum;
    e->children = std::move(terms);
    return e;
}

ExprPtr OperatorExpr::make_product(std::vector<ExprPtr> factors) {
    if (factors.empty()) throw std::invalid_argument("empty product");
    if (factors.size() == 1) return factors[0];
    auto e = std::make_shared<OperatorExpr>();
    e->kind = Kind::Product;
    e->children = std::move(factors);
    return e;
}

ExprPtr OperatorExpr::make_power(ExprPtr base, int n) {
    if (n < 1) throw std::invalid_argument("exponent must be >= 1");
    if (n == 1) return base;
    auto e = std::make_shared<OperatorExpr>();
    e->kind = Kind::Power;
    e->base = std::move(base);
    e->exponent = n;
    return e;
}

ExprPtr OperatorExpr::make_scalar_mul(WPoly c, ExprPtr x) {
    if (x->kind == Kind::ScalarMul) {
        WPoly folded = c * x->coeff;
        return make_scalar_mul(std::move(folded), x->operand);
    }
    if (c == wpoly_one()) return x;
    auto e = std::make_shared<OperatorExpr>();
    e->kind = Kind::ScalarMul;
    e->coeff = std::move(c);
    e->operand = std::move(x);
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case OperatorExpr::Kind::Atom:
        return a->atom == b->atom;
    case OperatorExpr::Kind::Power:
        return a->exponent == b->exponent && expr_equal(a->base, b->base);
    case OperatorExpr::Kind::ScalarMul:
        return a->coeff == b->coeff && expr_equal(a->operand, b->operand);
    case OperatorExpr::Kind::Sum:
    case OperatorExpr::Kind::Product: {
        if (a->children.size() != b->children.size()) return false;
        for (size_t i = 0; i < a->children.size(); ++i)
            if (!expr_equal(a->children[i], b->children[i])) return false;
        return true;
    }
    }
    return false;
}

int letter_count(const ExprPtr& e) {
    switch (e->kind) {
    case OperatorExpr::Kind::Atom:
        return e->atom.kind == AtomKind::Delta ? 1 : e->atom.sym_power;
    case OperatorExpr::Kind::Power:
        return e->exponent * letter_count(e->base);
    case OperatorExpr::Kind::ScalarMul:
        return letter_count(e->operand);
    case OperatorExpr::Kind::Sum: {
        int m = 0;
        for (const auto& c : e->children) m = std::max(m, letter_count(c));
        return m;
    }
    case OperatorExpr::Kind::Product: {
        int s = 0;
        for (const auto& c : e->children) s += letter_count(c);
        return s;
    }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class ParseMode { Operator, Payload, ZPoly };

class Parser {
public:
    Parser(const std::string& text, ParseMode mode) : s_(text), mode_(mode) {}

    // Either a pure ring value (scalar polynomial in the mode's symbols) or an
    // operator expression; sums of mixed kinds are rejected.
    struct Val {
        bool is_op = false;
        ExprPtr op;
        UPoly ring; // in ZPoly mode the "u" slot holds powers of z
    };

    Val parse_full() {
        Val v = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
    ParseMode mode_;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Int parse_nat_big() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected a natural number");
        Int v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    int parse_small_nat(const char* what) {
        size_t at = pos_;
        Int v = parse_nat_big();
        if (v > 1000000) throw ParseError(at, std::string(what) + " is unreasonably large");
        return static_cast<int>(v);
    }

    static Val ring_val(UPoly p) {
        Val v;
        v.ring = std::move(p);
        return v;
    }
    static Val op_val(ExprPtr e) {
        Val v;
        v.is_op = true;
        v.op = std::move(e);
        return v;
    }

    Val negate(Val v) {
        if (v.is_op) {
            if (v.op->kind == OperatorExpr::Kind::ScalarMul)
                return op_val(OperatorExpr::make_scalar_mul(-v.op->coeff, v.op->operand));
            return op_val(OperatorExpr::make_scalar_mul(WPoly::constant(Scalar(-1)), v.op));
        }
        return ring_val(-v.ring);
    }

    Val parse_expr() {
        std::vector<Val> terms;
        bool neg = eat('-');
        Val t = parse_term();
        terms.push_back(neg ? negate(std::move(t)) : std::move(t));
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Val nt = parse_term();
                terms.push_back(c == '-' ? negate(std::move(nt)) : std::move(nt));
            } else {
                break;
            }
        }
        bool any_op = false, any_ring = false;
        for (const auto& x : terms) (x.is_op ? any_op : any_ring) = true;
        if (any_op && any_ring) fail("cannot add a scalar to an operator (the algebra has no identity element)");
        if (!any_op) {
            UPoly sum;
            for (auto& x : terms) sum += x.ring;
            return ring_val(std::move(sum));
        }
        if (terms.size() == 1) return std::move(terms[0]);
        std::vector<ExprPtr> ops;
        ops.reserve(terms.size());
        for (auto& x : terms) ops.push_back(std::move(x.op));
        return op_val(OperatorExpr::make_sum(std::move(ops)));
    }

    Val parse_term() {
        UPoly coef = UPoly::constant(wpoly_one());
        std::vector<ExprPtr> ops;
        size_t term_start = pos_;
        for (;;) {
            Val f = parse_factor();
            if (f.is_op) ops.push_back(std::move(f.op));
            else coef *= f.ring;
            if (!eat('*')) break;
        }
        if (ops.empty()) return ring_val(std::move(coef));
        ExprPtr e = ops.size() == 1 ? ops[0] : OperatorExpr::make_product(std::move(ops));
        if (coef == UPoly::constant(wpoly_one())) return op_val(std::move(e));
        if (coef.degree() > 0)
            throw ParseError(term_start, "u is only allowed inside d0{...} payloads");
        return op_val(OperatorExpr::make_scalar_mul(coef.coeff(0), std::move(e)));
    }

    Val parse_factor() {
        Val p = parse_primary();
        if (peek() == '^') {
            ++pos_;
            size_t at = pos_;
            int n = parse_small_nat("exponent");
            if (n == 0) throw ParseError(at, "exponent must be >= 1 (the algebra has no identity element)");
            if (p.is_op) return op_val(OperatorExpr::make_power(std::move(p.op), n));
            return ring_val(p.ring.pow(n));
        }
        return p;
    }

    Val parse_primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];

        if (c == '(') {
            ++pos_;
            Val inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = parse_nat_big();
            Int den = 1;
            if (peek() == '/') {
                ++pos_;
                size_t at = pos_;
                den = parse_nat_big();
                if (den == 0) throw ParseError(at, "zero denominator");
            }
            return ring_val(UPoly::constant(WPoly::constant(Scalar(Rat(num, den)))));
        }
        if (c == 'i') {
            ++pos_;
            return ring_val(UPoly::constant(WPoly::constant(Scalar::unit_i())));
        }
        if (c == 'w') {
            if (mode_ == ParseMode::ZPoly) fail("w is not allowed in a concrete polynomial");
            ++pos_;
            return ring_val(UPoly::constant(wpoly_w()));
        }
        if (c == 'u') {
            if (mode_ != ParseMode::Payload) fail("u is only allowed inside d0{...} payloads");
            ++pos_;
            return ring_val(upoly_u());
        }
        if (c == 'z') {
            if (mode_ != ParseMode::ZPoly) fail("z is not allowed in an operator expression");
            ++pos_;
            return ring_val(upoly_u()); // the u slot carries z-powers in ZPoly mode
        }
        if (c == 'M' || c == 'S' || c == 'T') {
            if (mode_ != ParseMode::Operator) fail("operator letters are not allowed here");
            ++pos_;
            AtomKind k = c == 'M' ? AtomKind::M : c == 'S' ? AtomKind::S : AtomKind::T;
            int m = 1;
            size_t save = pos_;
            if (eat('(')) {
                if (eat('g')) {
                    if (!eat('^')) fail("expected '^' in (g^m)");
                    size_t at = pos_;
                    m = parse_small_nat("symbol power");
                    if (m == 0) throw ParseError(at, "symbol power must be >= 1");
                    if (!eat(')')) fail("expected ')' after (g^m)");
                } else {
                    pos_ = save; // plain parenthesized factor follows the letter via '*'
                }
            }
            return op_val(OperatorExpr::make_atom(Atom::letter(k, m)));
        }
        if (c == 'd' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '0') {
            if (mode_ != ParseMode::Operator) fail("d0 is not allowed here");
            pos_ += 2;
            UPoly payload = UPoly::constant(wpoly_one());
            if (eat('{')) {
                Parser sub(s_, ParseMode::Payload);
                sub.pos_ = pos_;
                Val v = sub.parse_expr();
                pos_ = sub.pos_;
                if (v.is_op) fail("d0 payload must be a polynomial in u and w");
                payload = std::move(v.ring);
                if (!eat('}')) fail("expected '}' closing d0 payload");
            }
            return op_val(OperatorExpr::make_atom(Atom::delta(std::move(payload))));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

ExprPtr parse(const std::string& text) {
    Parser p(text, ParseMode::Operator);
    auto v = p.parse_full();
    if (!v.is_op) throw ParseError(0, "expression is purely scalar; no operator atom present");
    return v.op;
}

UPoly parse_upoly(const std::string& text) {
    Parser p(text, ParseMode::Payload);
    auto v = p.parse_full();
    if (v.is_op) throw ParseError(0, "expected a polynomial in u and w");
    return v.ring;
}

Poly parse_poly(const std::string& text) {
    Parser p(text, ParseMode::ZPoly);
    auto v = p.parse_full();
    if (v.is_op) throw ParseError(0, "expected a polynomial in z");
    Poly out;
    out.coeffs.reserve(v.ring.coeffs.size());
    for (const auto& wc : v.ring.coeffs) out.coeffs.push_back(wc.coeff(0));
    out.trim();
    return out;
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

namespace {

bool wpoly_is_single_monomial(const WPoly& p) {
    int nz = 0;
    for (const auto& c : p.coeffs)
        if (!c.is_zero()) ++nz;
    return nz <= 1 && (p.is_zero() || p.coeff(p.degree()).is_single_term());
}

std::string atom_plain(const Atom& a) {
    switch (a.kind) {
    case AtomKind::M:
    case AtomKind::S:
    case AtomKind::T: {
        std::string l(1, a.kind == AtomKind::M ? 'M' : a.kind == AtomKind::S ? 'S' : 'T');
        if (a.sym_power > 1) l += "(g^" + std::to_string(a.sym_power) + ")";
        return l;
    }
    case AtomKind::Delta:
        if (a.payload == UPoly::constant(wpoly_one())) return "d0";
        return "d0{" + upoly_str(a.payload) + "}";
    }
    return "?";
}

std::string plain_fmt(const ExprPtr& e);

std::string plain_factor(const ExprPtr& e) {
    std::string s = plain_fmt(e);
    if (e->kind == OperatorExpr::Kind::Sum || e->kind == OperatorExpr::Kind::ScalarMul)
        return "(" + s + ")";
    return s;
}

std::string plain_fmt(const ExprPtr& e) {
    switch (e->kind) {
    case OperatorExpr::Kind::Atom:
        return atom_plain(e->atom);
    case OperatorExpr::Kind::Power: {
        std::string b = plain_fmt(e->base);
        if (e->base->kind != OperatorExpr::Kind::Atom) b = "(" + b + ")";
        return b + "^" + std::to_string(e->exponent);
    }
    case OperatorExpr::Kind::Product: {
        std::string s;
        for (size_t i = 0; i < e->children.size(); ++i) {
            if (i) s += "*";
            s += plain_factor(e->children[i]);
        }
        return s;
    }
    case OperatorExpr::Kind::ScalarMul: {
        const WPoly& c = e->coeff;
        std::string body = plain_factor(e->operand);
        if (c == WPoly::constant(Scalar(-1))) return "-" + body;
        std::string cs = wpoly_str(c);
        if (!wpoly_is_single_monomial(c)) cs = "(" + cs + ")";
        return cs + "*" + body;
    }
    case OperatorExpr::Kind::Sum: {
        std::string s;
        for (size_t i = 0; i < e->children.size(); ++i) {
            std::string t = plain_fmt(e->children[i]);
            if (i == 0) s = t;
            else if (!t.empty() && t[0] == '-') s += " - " + t.substr(1);
            else s += " + " + t;
        }
        return s;
    }
    }
    return "?";
}

std::string latex_subst(const std::string& plain_poly) {
    // Render a u/w polynomial for LaTeX output: w -> g(0), u -> (g-g(0)).
    std::string out;
    for (char c : plain_poly) {
        if (c == 'w') out += "g(0)";
        else if (c == 'u') out += "(g-g(0))";
        else if (c == '*') out += "\\,";
        else out += c;
    }
    return out;
}

std::string latex_fmt(const ExprPtr& e);

std::string latex_factor(const ExprPtr& e) {
    std::string s = latex_fmt(e);
    if (e->kind == OperatorExpr::Kind::Sum || e->kind == OperatorExpr::Kind::ScalarMul)
        return "\\bigl(" + s + "\\bigr)";
    return s;
}

std::string latex_fmt(const ExprPtr& e) {
    switch (e->kind) {
    case OperatorExpr::Kind::Atom: {
        const Atom& a = e->atom;
        if (a.kind == AtomKind::Delta) {
            if (a.payload == UPoly::constant(wpoly_one())) return "\\delta_0";
            return latex_subst(upoly_str(a.payload)) + "\\,\\delta_0";
        }
        std::string l(1, a.kind == AtomKind::M ? 'M' : a.kind == AtomKind::S ? 'S' : 'T');
        if (a.sym_power == 1) return l + "_g";
        return l + "_{g^{" + std::to_string(a.sym_power) + "}}";
    }
    case OperatorExpr::Kind::Power:
        return latex_factor(e->base) + "^{" + std::to_string(e->exponent) + "}";
    case OperatorExpr::Kind::Product: {
        std::string s;
        for (size_t i = 0; i < e->children.size(); ++i) {
            if (i) s += " ";
            s += latex_factor(e->children[i]);
        }
        return s;
    }
    case OperatorExpr::Kind::ScalarMul: {
        if (e->coeff == WPoly::constant(Scalar(-1))) return "-" + latex_factor(e->operand);
        return latex_subst(wpoly_str(e->coeff)) + "\\," + latex_factor(e->operand);
    }
    case OperatorExpr::Kind::Sum: {
        std::string s;
        for (size_t i = 0; i < e->children.size(); ++i) {
            std::string t = latex_fmt(e->children[i]);
            if (i == 0) s = t;
            else if (!t.empty() && t[0] == '-') s += " - " + t.substr(1);
            else s += " + " + t;
        }
        return s;
    }
    }
    return "?";
}

nlohmann::ordered_json json_fmt(const ExprPtr& e) {
    using nlohmann::ordered_json;
    switch (e->kind) {
    case OperatorExpr::Kind::Atom: {
        const Atom& a = e->atom;
        if (a.kind == AtomKind::Delta)
            return ordered_json{{"kind", "atom"}, {"letter", "d0"}, {"payload", upoly_str(a.payload)}};
        std::string l(1, a.kind == AtomKind::M ? 'M' : a.kind == AtomKind::S ? 'S' : 'T');
        return ordered_json{{"kind", "atom"}, {"letter", l}, {"m", a.sym_power}};
    }
    case OperatorExpr::Kind::Power:
        return ordered_json{{"kind", "power"}, {"base", json_fmt(e->base)}, {"exp", e->exponent}};
    case OperatorExpr::Kind::ScalarMul:
        return ordered_json{
            {"kind", "scalar_mul"}, {"coef", wpoly_str(e->coeff)}, {"operand", json_fmt(e->operand)}};
    case OperatorExpr::Kind::Sum:
    case OperatorExpr::Kind::Product: {
        ordered_json kids = ordered_json::array();
        for (const auto& c : e->children) kids.push_back(json_fmt(c));
        return ordered_json{{"kind", e->kind == OperatorExpr::Kind::Sum ? "sum" : "product"},
                            {"children", kids}};
    }
    }
    return {};
}

} // namespace

std::string format(const ExprPtr& e, FormatStyle style) {
    switch (style) {
    case FormatStyle::Plain: return plain_fmt(e);
    case FormatStyle::Latex: return latex_fmt(e);
    case FormatStyle::Json: return json_fmt(e).dump();
    }
    return {};
}

} // namespace paraprod
