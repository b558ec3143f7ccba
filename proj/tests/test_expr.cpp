// Grammar, parser diagnostics, and the parse/format round trip.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <paraprod/expr.hpp>

#include <random>

using namespace paraprod;
using Kind = OperatorExpr::Kind;

TEST_CASE("parse basic atoms and products") {
    ExprPtr e = parse("S*T - T^2");
    REQUIRE(e->kind == Kind::Sum);
    REQUIRE(e->children.size() == 2);
    CHECK(e->children[0]->kind == Kind::Product);
    CHECK(e->children[1]->kind == Kind::ScalarMul);
    CHECK(e->children[1]->coeff == WPoly::constant(Scalar(-1)));
    CHECK(e->children[1]->operand->kind == Kind::Power);

    ExprPtr t3 = parse("T(g^3)");
    REQUIRE(t3->kind == Kind::Atom);
    CHECK(t3->atom.kind == AtomKind::T);
    CHECK(t3->atom.sym_power == 3);

    ExprPtr d = parse("d0{-w*u}");
    REQUIRE(d->kind == Kind::Atom);
    CHECK(d->atom.kind == AtomKind::Delta);
    CHECK(d->atom.payload == UPoly::monomial(-wpoly_w(), 1));

    CHECK(parse("d0")->atom.payload == UPoly::constant(wpoly_one()));
}

TEST_CASE("product order is composition order") {
    // S*T means S∘T: T is applied first, i.e. the paper's S_g T_g
    ExprPtr e = parse("S*T");
    REQUIRE(e->kind == Kind::Product);
    CHECK(e->children[0]->atom.kind == AtomKind::S);
    CHECK(e->children[1]->atom.kind == AtomKind::T);
}

TEST_CASE("scalar literals fold into coefficients") {
    ExprPtr e = parse("-1/3*i*T");
    REQUIRE(e->kind == Kind::ScalarMul);
    CHECK(e->coeff == WPoly::constant(Scalar(Rat(0), Rat(-1, 3))));

    ExprPtr f = parse("w^2*d0");
    REQUIRE(f->kind == Kind::ScalarMul);
    CHECK(f->coeff == wpoly_w(2));

    ExprPtr g = parse("(1+w)*T");
    REQUIRE(g->kind == Kind::ScalarMul);
    CHECK(g->coeff == wpoly_one() + wpoly_w());

    ExprPtr h = parse("T*3/2*S"); // scalars are central
    REQUIRE(h->kind == Kind::ScalarMul);
    CHECK(h->coeff == WPoly::constant(Scalar(Rat(3, 2))));
    CHECK(h->operand->kind == Kind::Product);
}

TEST_CASE("parser diagnostics with byte offsets") {
    CHECK_THROWS_AS(parse("T^0"), ParseError);
    CHECK_THROWS_AS(parse("T(g^0)"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("3/2"), ParseError);       // no operator atom
    CHECK_THROWS_AS(parse("T + 1"), ParseError);     // scalar added to operator
    CHECK_THROWS_AS(parse("u*T"), ParseError);       // u outside payload
    CHECK_THROWS_AS(parse("T*"), ParseError);
    CHECK_THROWS_AS(parse("(S*T"), ParseError);
    CHECK_THROWS_AS(parse("d0{S}"), ParseError);
    CHECK_THROWS_AS(parse("1/0*T"), ParseError);
    try {
        parse("S*T^0");
    } catch (const ParseError& pe) {
        CHECK(pe.offset == 6);
    }
}

TEST_CASE("format: spec examples") {
    CHECK(format(parse("T")) == "T");
    CHECK(format(parse("S*T")) == "S*T");
    CHECK(format(parse("w*d0")) == "w*d0");
    CHECK(format(parse("S*T - T^2")) == "S*T - T^2");
    CHECK(format(parse("T(g^3)")) == "T(g^3)");
    CHECK(format(parse("d0{w}")) == "d0{w}");
    CHECK(format(parse("(S+T)^2*M")) == "(S + T)^2*M");
}

TEST_CASE("format latex and json") {
    CHECK(format(parse("S*T"), FormatStyle::Latex) == "S_g T_g");
    CHECK(format(parse("T(g^2)"), FormatStyle::Latex) == "T_{g^{2}}");
    CHECK(format(parse("d0"), FormatStyle::Latex) == "\\delta_0");
    std::string js = format(parse("S*T"), FormatStyle::Json);
    CHECK(js.find("\"product\"") != std::string::npos);
}

namespace {

std::mt19937_64 rng(777);
int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Scalar rand_scalar() {
    Scalar s(Rat(pick(-3, 3), pick(1, 3)));
    if (pick(0, 3) == 0) s.im = Rat(pick(-2, 2), pick(1, 2));
    if (s.is_zero()) s.re = 1;
    return s;
}

WPoly rand_coeff() {
    if (pick(0, 3) == 0) return WPoly::monomial(rand_scalar(), pick(1, 2));
    return WPoly::constant(rand_scalar());
}

UPoly rand_payload() {
    UPoly p;
    for (int d = 0; d <= pick(0, 2); ++d)
        if (pick(0, 2)) p += UPoly::monomial(rand_coeff(), d);
    if (p.is_zero()) p = UPoly::constant(wpoly_one());
    return p;
}

// ASTs in parser-image shape: sums of terms, terms are coefficient * factor
// chains, factors are atoms, powers, or parenthesized sums.
ExprPtr rand_factor(int depth);

ExprPtr rand_atom() {
    switch (pick(0, 4)) {
    case 0: return OperatorExpr::make_atom(Atom::letter(AtomKind::M, pick(0, 4) ? 1 : pick(2, 3)));
    case 1: return OperatorExpr::make_atom(Atom::letter(AtomKind::S, pick(0, 4) ? 1 : pick(2, 3)));
    case 2: return OperatorExpr::make_atom(Atom::delta(rand_payload()));
    default: return OperatorExpr::make_atom(Atom::letter(AtomKind::T, pick(0, 4) ? 1 : pick(2, 3)));
    }
}

ExprPtr rand_sum(int depth);

ExprPtr rand_factor(int depth) {
    int c = depth > 0 ? pick(0, 5) : 0;
    if (c <= 2) return rand_atom();
    if (c == 3) return OperatorExpr::make_power(rand_atom(), pick(2, 4));
    if (c == 4) return rand_sum(depth - 1); // parenthesized on output
    return OperatorExpr::make_power(rand_sum(depth - 1), pick(2, 3));
}

ExprPtr rand_term(int depth) {
    std::vector<ExprPtr> factors;
    int n = pick(1, 3);
    for (int i = 0; i < n; ++i) factors.push_back(rand_factor(depth));
    ExprPtr body = factors.size() == 1 ? factors[0] : OperatorExpr::make_product(std::move(factors));
    if (pick(0, 2) == 0) return OperatorExpr::make_scalar_mul(rand_coeff(), body);
    return body;
}

ExprPtr rand_sum(int depth) {
    std::vector<ExprPtr> terms;
    int n = pick(2, 3);
    for (int i = 0; i < n; ++i) terms.push_back(rand_term(depth));
    return OperatorExpr::make_sum(std::move(terms));
}

ExprPtr rand_expr() {
    switch (pick(0, 2)) {
    case 0: return rand_term(2);
    default: return rand_sum(2);
    }
}

} // namespace

TEST_CASE("round trip: parse(format(e)) == e for 500 random ASTs") {
    for (int t = 0; t < 500; ++t) {
        ExprPtr e = rand_expr();
        std::string s = format(e);
        ExprPtr back;
        REQUIRE_NOTHROW(back = parse(s));
        if (!expr_equal(e, back)) {
            CAPTURE(s);
            CHECK(expr_equal(e, back));
        }
    }
}

TEST_CASE("letter count") {
    CHECK(letter_count(parse("S*T")) == 2);
    CHECK(letter_count(parse("T(g^3)")) == 3);
    CHECK(letter_count(parse("(S*T)^2 + M")) == 4);
    CHECK(letter_count(parse("d0{u}")) == 1);
}
