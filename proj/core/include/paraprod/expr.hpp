// Operator expressions over the algebra generated by M_g, S_g, T_g and
// delta_0-atoms, with exact scalar coefficients in Q(i)[w].
//
// Grammar (EBNF):
//   expr    := ("-")? term (("+"|"-") term)*
//   term    := factor ("*" factor)*
//   factor  := primary ("^" NAT)?
//   primary := LETTER gpow? | "d0" ("{" upoly "}")? | scalar | "(" expr ")"
//   LETTER  := "M" | "S" | "T" ;  gpow := "(" "g" "^" NAT ")"
//   scalar  := rational complex literal over "i" and "w", e.g. 3/2, -1/3*i, w^2
//   upoly   := polynomial in "u" (and "w") with scalar coefficients
//
// Product order: A*B means the composition A∘B — B acts first. The canonical
// example is T*S = S*T - T^2 - w*d0{u}.
#pragma once

#include "paraprod/polynomials.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace paraprod {

enum class AtomKind { M, S, T, Delta };

struct Atom {
    AtomKind kind = AtomKind::T;
    int sym_power = 1; // m in M_{g^m}, S_{g^m}, T_{g^m}; unused for Delta
    UPoly payload;     // Delta only: f -> payload(g-g(0)) * f(0)

    static Atom letter(AtomKind k, int m = 1) { Atom a; a.kind = k; a.sym_power = m; return a; }
    static Atom delta(UPoly p) { Atom a; a.kind = AtomKind::Delta; a.payload = std::move(p); return a; }

    friend bool operator==(const Atom& a, const Atom& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == AtomKind::Delta) return a.payload == b.payload;
        return a.sym_power == b.sym_power;
    }
};

struct OperatorExpr;
using ExprPtr = std::shared_ptr<const OperatorExpr>;

struct OperatorExpr {
    enum class Kind { Sum, Product, Power, ScalarMul, Atom };

    Kind kind = Kind::Atom;
    std::vector<ExprPtr> children; // Sum (>=1), Product (>=1, A*B = B acts first)
    ExprPtr base;                  // Power
    int exponent = 1;              // Power, >= 1
    WPoly coeff;                   // ScalarMul
    ExprPtr operand;               // ScalarMul
    Atom atom;                     // Atom

    static ExprPtr make_atom(Atom a);
    static ExprPtr make_sum(std::vector<ExprPtr> terms);
    static ExprPtr make_product(std::vector<ExprPtr> factors);
    static ExprPtr make_power(ExprPtr base, int n);
    static ExprPtr make_scalar_mul(WPoly c, ExprPtr e);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Number of paraproduct letters once generalized atoms are expanded
// (M_{g^m} etc. count m; delta atoms count 1).
int letter_count(const ExprPtr& e);

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(size_t off, const std::string& what)
        : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

ExprPtr parse(const std::string& text);
// Payload / coefficient sub-grammar: polynomial in u and w.
UPoly parse_upoly(const std::string& text);
// Concrete polynomial in z with exact complex-rational coefficients.
Poly parse_poly(const std::string& text);

enum class FormatStyle { Plain, Latex, Json };
std::string format(const ExprPtr& e, FormatStyle style = FormatStyle::Plain);

} // namespace paraprod
