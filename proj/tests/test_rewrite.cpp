// Canonical ST-form: identity fixtures, commutator closed forms, the exact
// evaluation oracle, and the structural invariants of normalize.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <paraprod/rewrite.hpp>

#include <random>

using namespace paraprod;

namespace {

CanonicalForm nf(const std::string& s) { return normalize(parse(s)); }

Poly zpow(int l) { return Poly::monomial(Scalar(1), l); }

} // namespace

TEST_CASE("normalize: fixtures") {
    // T*S = S T - T^2 - w u d0
    CanonicalForm ts = nf("T*S");
    REQUIRE(ts.st.size() == 2);
    CHECK(ts.st.at({1, 1}) == wpoly_one());
    CHECK(ts.st.at({0, 2}) == WPoly::constant(Scalar(-1)));
    CHECK(ts.delta == UPoly::monomial(-wpoly_w(), 1));

    // M^2 = S^2 + 2 S T + w^2 d0
    CanonicalForm m2 = nf("M^2");
    REQUIRE(m2.st.size() == 2);
    CHECK(m2.st.at({2, 0}) == wpoly_one());
    CHECK(m2.st.at({1, 1}) == WPoly::constant(Scalar(2)));
    CHECK(m2.delta == UPoly::constant(wpoly_w(2)));

    // (S*T)^2 = S^2 T^2 - S T^3
    CanonicalForm st2 = nf("(S*T)^2");
    REQUIRE(st2.st.size() == 2);
    CHECK(st2.st.at({2, 2}) == wpoly_one());
    CHECK(st2.st.at({1, 3}) == WPoly::constant(Scalar(-1)));
    CHECK(st2.delta.is_zero());

    // T_{g^3} = 3 S^2 T
    CanonicalForm t3 = nf("T(g^3)");
    REQUIRE(t3.st.size() == 1);
    CHECK(t3.st.at({2, 1}) == WPoly::constant(Scalar(3)));

    // M = S + T + w d0
    CanonicalForm m = nf("M");
    REQUIRE(m.st.size() == 2);
    CHECK(m.st.at({1, 0}) == wpoly_one());
    CHECK(m.st.at({0, 1}) == wpoly_one());
    CHECK(m.delta == UPoly::constant(wpoly_w()));
}

TEST_CASE("normalize: two-letter identity block") {
    CHECK(nf("M^2") == nf("S^2 + 2*S*T + w^2*d0"));
    CHECK(nf("M*T") == nf("S*T + T^2"));
    CHECK(nf("S*M") == nf("S*T + S^2"));
    CHECK(nf("T*M") == nf("S*T"));
    CHECK(nf("T*S") == nf("S*T - T^2 - w*d0{u}"));
    CHECK(nf("M*S") == nf("S*T - T^2 + S^2 - w*d0{u}"));
    // generalized-letter bridges
    CHECK(nf("M^3") == nf("M(g^3)"));
    CHECK(nf("S^4") == nf("S(g^4)"));
    CHECK(nf("S*T") == nf("1/2*T(g^2)"));
    CHECK(nf("1/4*T(g^2)^2") == nf("S^2*T^2 - S*T^3"));
}

TEST_CASE("normalize: delta composition rules") {
    // d0 ∘ word = 0 for any nonempty word
    CHECK(nf("d0*S").is_zero());
    CHECK(nf("d0*(S*T^2)").is_zero());
    // (D1 d0)(D2 d0) = D2(0) D1 d0
    CHECK(nf("d0{u}*d0{w}") == nf("w*d0{u}"));
    CHECK(nf("d0{u}*d0{u}").is_zero());
    // letters on delta payloads
    CHECK(nf("T*d0") == nf("d0{u}"));
    CHECK(nf("S*d0").is_zero());
    CHECK(nf("M*d0") == nf("d0{u+w}"));
    // M - S - T = w d0
    CanonicalForm c = nf("M - S - T");
    CHECK(is_trivial(c));
    CHECK(c.delta == UPoly::constant(wpoly_w()));
}

TEST_CASE("is_trivial fixtures") {
    CHECK(is_trivial(nf("d0{w*u}")));
    CHECK(!is_trivial(nf("T")));
    CHECK(is_trivial(nf("M - S - T")));
    CHECK(nf("M - S - T - w*d0").is_zero());
}

TEST_CASE("group: fixtures") {
    GroupedForm ts = group(nf("T*S"));
    CHECK(ts.n == 1);
    CHECK(ts.P[1] == Poly::constant(Scalar(1)));
    CHECK(ts.P[0] == Poly::monomial(Scalar(-1), 1));
    CHECK(ts.Pn1.is_zero());
    CHECK(ts.delta_w_divisible);
    CHECK(ts.Pn2 == UPoly::monomial(-wpoly_one() * wpoly_one(), 1).scaled(wpoly_one()));
    CHECK(ts.Pn2 == upoly_u(1).scaled(WPoly::constant(Scalar(-1))));

    GroupedForm st2 = group(nf("S*T^2"));
    CHECK(st2.n == 1);
    CHECK(st2.P[1] == Poly::monomial(Scalar(1), 1));
    CHECK(st2.P[0].is_zero());
    CHECK(st2.Pn1.is_zero());
    CHECK(st2.Pn2.is_zero());

    GroupedForm s2 = group(nf("S^2"));
    CHECK(s2.n == -1);
    CHECK(s2.Pn1 == Poly::monomial(Scalar(1), 1));
    CHECK(s2.Pn2.is_zero());

    CHECK_THROWS_AS(group(nf("w*T")), WDependentCoefficient);
}

TEST_CASE("commutators: spec fixtures") {
    auto S1 = parse("S"), T1 = parse("T");
    // [S,T] = T^2 + w u d0
    CanonicalForm c1 = normalize(commutator(S1, T1));
    CHECK(c1 == nf("T^2 + w*d0{u}"));
    CHECK(c1 == normalize(parse("T*T(g^1) + w*d0{u}")));

    // [S^k, T]_k = k! T^{2k} - ((-1)^k/k!) w^k u^k d0
    for (int k = 1; k <= 3; ++k) {
        CanonicalForm lhs = normalize(iterated_commutator(parse("S^" + std::to_string(k)), T1, k));
        CanonicalForm expect;
        expect.add_st({0, 2 * k}, WPoly::constant(Scalar(Rat(factorial(k)))));
        Rat dc = -rat_pow(Rat(-1), k) / Rat(factorial(k));
        expect.delta = UPoly::monomial(WPoly::monomial(Scalar(dc), k), k);
        CHECK(lhs == expect);
    }

    // k=2, j=2: st{(0,4): 2}, delta = -(1/2) w^2 u^2
    CanonicalForm c22 = normalize(iterated_commutator(parse("S^2"), T1, 2));
    CHECK(c22.st.at({0, 4}) == WPoly::constant(Scalar(2)));
    CHECK(c22.delta == UPoly::monomial(WPoly::monomial(Scalar(Rat(-1, 2)), 2), 2));

    // j > k collapses to the delta part: k=2, j=3 -> (1/6) w^2 u^3
    CanonicalForm c23 = normalize(iterated_commutator(parse("S^2"), T1, 3));
    CHECK(c23.st.empty());
    CHECK(c23.delta == UPoly::monomial(WPoly::monomial(Scalar(Rat(1, 6)), 2), 3));
}

TEST_CASE("evaluate_exact: fixtures") {
    Poly z = zpow(1);
    // T with g=z on z^2: int t^2 = z^3/3
    Poly r = evaluate_exact(parse("T"), zpow(2), z);
    CHECK(r == Poly::monomial(Scalar(Rat(1, 3)), 3));

    // S*T with f=1, g=1+z: z + z^2/2
    Poly g1 = parse_poly("1+z");
    Poly r2 = evaluate_exact(parse("S*T"), Poly::constant(Scalar(1)), g1);
    CHECK(r2 == Poly::monomial(Scalar(1), 1) + Poly::monomial(Scalar(Rat(1, 2)), 2));
    // cross-check against (g^2 - g(0)^2)/2
    Poly half_g2 = (g1 * g1 - Poly::constant(Scalar(1))).scaled(Scalar(Rat(1, 2)));
    CHECK(r2 == half_g2);

    // T (g-g(0))^n = (g-g(0))^{n+1} / (n+1) for an arbitrary polynomial g
    Poly g = parse_poly("2 + z + 1/3*z^3");
    Poly g0 = g - Poly::constant(Scalar(2));
    for (int n = 0; n <= 4; ++n) {
        Poly lhs = evaluate_exact(parse("T"), g0.pow(n), g);
        CHECK(lhs == g0.pow(n + 1).scaled(Scalar(Rat(1, n + 1))));
    }

    // delta atom: payload evaluated at the symbol
    Poly d = evaluate_exact(parse("d0{w*u}"), parse_poly("5+z"), g);
    CHECK(d == g0.scaled(Scalar(2)) * Poly::constant(Scalar(5)));
}

TEST_CASE("st_monomial_action: predicted leading terms") {
    CHECK(st_monomial_action(1, 1, 1).coefficient == Scalar(Rat(1, 2)));
    CHECK(st_monomial_action(1, 1, 1).degree == 2);
    CHECK(st_monomial_action(2, 0, 1).coefficient == Scalar(Rat(1, 3)));
    CHECK(st_monomial_action(2, 0, 1).degree == 3);
    CHECK(st_monomial_action(1, 0, 2).coefficient == Scalar(Rat(2, 3)));

    // leading-term law against the oracle, g of degree 1 (leading coef 1)
    Poly g = parse_poly("1+z");
    for (int m = 1; m <= 4; ++m)
        for (int j = 0; j <= m; ++j)
            for (int n = 1; n <= 4; ++n) {
                std::string word;
                if (m - j > 0) word += "S^" + std::to_string(m - j);
                if (j > 0) word += (word.empty() ? "" : "*") + std::string("T^") + std::to_string(j);
                if (word.empty()) continue;
                Poly img = evaluate_exact(parse(word), zpow(n), g); // (g-g(0))^n = z^n here
                auto lt = st_monomial_action(m, j, n);
                CHECK(img.degree() == lt.degree);
                CHECK(img.coeff(img.degree()) == lt.coefficient);
            }
}

namespace {

std::mt19937_64 rng(424242);
int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Scalar rnd_scalar() {
    Scalar s(Rat(pick(-3, 3), pick(1, 3)));
    if (pick(0, 3) == 0) s.im = Rat(pick(-2, 2), pick(1, 2));
    if (s.is_zero()) s.re = 1;
    return s;
}

Poly rnd_symbol() {
    Poly g = Poly::constant(rnd_scalar());
    int deg = pick(1, 4);
    for (int d = 1; d <= deg; ++d)
        if (pick(0, 2)) g += Poly::monomial(rnd_scalar(), d);
    g += Poly::monomial(Scalar(1), deg);
    return g;
}

ExprPtr rnd_expr(int budget, int depth) {
    if (depth == 0 || budget <= 1 || pick(0, 2) == 0) {
        if (pick(0, 5) == 0) {
            UPoly p = UPoly::monomial(WPoly::constant(rnd_scalar()), pick(0, 2));
            return OperatorExpr::make_atom(Atom::delta(p));
        }
        AtomKind k = std::array{AtomKind::M, AtomKind::S, AtomKind::T}[pick(0, 2)];
        int m = budget >= 2 && pick(0, 4) == 0 ? 2 : 1;
        return OperatorExpr::make_atom(Atom::letter(k, m));
    }
    switch (pick(0, 3)) {
    case 0: {
        std::vector<ExprPtr> t;
        for (int i = 0; i < 2; ++i) t.push_back(rnd_expr(budget, depth - 1));
        return OperatorExpr::make_sum(std::move(t));
    }
    case 1: {
        int left = std::max(1, budget / 2);
        return OperatorExpr::make_product(
            {rnd_expr(left, depth - 1), rnd_expr(budget - left, depth - 1)});
    }
    case 2:
        if (budget >= 2) return OperatorExpr::make_power(rnd_expr(budget / 2, depth - 1), 2);
        return rnd_expr(budget, depth - 1);
    default:
        return OperatorExpr::make_scalar_mul(WPoly::constant(rnd_scalar()), rnd_expr(budget, depth - 1));
    }
}

} // namespace

TEST_CASE("oracle equivalence on random expressions") {
    for (int t = 0; t < 60; ++t) {
        ExprPtr e = rnd_expr(5, 3);
        Poly g = rnd_symbol();
        CanonicalForm cf = normalize(e);
        for (int l = 0; l <= 8; ++l) {
            Poly direct = evaluate_exact(e, zpow(l), g);
            Poly via = evaluate_exact(cf, zpow(l), g);
            if (!(direct == via)) {
                CAPTURE(format(e));
                CAPTURE(l);
                REQUIRE(direct == via);
            }
        }
    }
}

TEST_CASE("confluence: re-association and distribution do not change the form") {
    // associativity of products
    CHECK(nf("(T*S)*M") == nf("T*(S*M)"));
    CHECK(nf("T*S*M") == nf("(T*S)*M"));
    // powers as explicit products
    CHECK(nf("M^3") == nf("M*M*M"));
    CHECK(nf("(S*T)^2") == nf("S*T*S*T"));
    // sum permutation and scalar distribution
    CHECK(nf("S*T + T^2 - d0{u}") == nf("-d0{u} + T^2 + S*T"));
    CHECK(nf("2*(S + T)") == nf("2*S + 2*T"));
    CHECK(nf("(S+T)*(S-T)") == nf("S^2 - S*T + T*S - T^2"));
}

TEST_CASE("w-divisibility of delta parts from letter-only expressions") {
    for (int t = 0; t < 40; ++t) {
        // generator without explicit delta atoms
        ExprPtr e;
        do { e = rnd_expr(5, 3); } while (format(e).find("d0") != std::string::npos);
        CanonicalForm cf = normalize(e);
        CHECK(upoly_divisible_by_w(cf.delta));
    }
}

TEST_CASE("homogeneity: normalize(c*E) == c*normalize(E)") {
    for (int t = 0; t < 30; ++t) {
        ExprPtr e = rnd_expr(4, 3);
        WPoly c = pick(0, 1) ? WPoly::monomial(rnd_scalar(), 1) : WPoly::constant(rnd_scalar());
        CHECK(normalize(OperatorExpr::make_scalar_mul(c, e)) == normalize(e).scaled(c));
    }
}

TEST_CASE("resource guard aborts with a diagnostic") {
    NormalizeOptions opt;
    opt.term_limit = 10;
    CHECK_THROWS_AS(normalize(parse("(M + S + T)^4"), opt), BlowupError);
}

TEST_CASE("canonical form serialization") {
    CHECK(nf("T*S").to_json_string() ==
          R"({"st":[{"j":1,"k":1,"coef":"1"},{"j":0,"k":2,"coef":"-1"}],"delta":"-w*u"})");
    CHECK(nf("M^2").to_json_string() ==
          R"({"st":[{"j":2,"k":0,"coef":"1"},{"j":1,"k":1,"coef":"2"}],"delta":"w^2"})");
    // the plain rendering parses back to the same canonical form
    for (const char* s : {"T*S", "M^2", "(S*T)^2", "M - S - T", "T(g^3) - 2*d0{u^2}"}) {
        CanonicalForm cf = nf(s);
        CHECK(normalize(parse(cf.to_plain_string())) == cf);
    }
}
