// Exact arithmetic: Scalar field ops, polynomial ring axioms (randomized),
// and the three delta-payload transforms.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <paraprod/polynomials.hpp>

#include <random>

using namespace paraprod;

namespace {

std::mt19937_64 rng(12345);

Scalar rand_scalar() {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    return Scalar(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

WPoly rand_wpoly(int deg_max = 3) {
    std::uniform_int_distribution<int> deg(0, deg_max);
    WPoly p;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) p += WPoly::monomial(rand_scalar(), i);
    return p;
}

UPoly rand_upoly(int deg_max = 3) {
    std::uniform_int_distribution<int> deg(0, deg_max);
    UPoly p;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) p += UPoly::monomial(rand_wpoly(2), i);
    return p;
}

} // namespace

TEST_CASE("scalar field arithmetic") {
    Scalar a(Rat(3, 2), Rat(-1, 3));
    Scalar b(Rat(-2), Rat(5, 7));
    CHECK(a + b - b == a);
    CHECK(a * b == b * a);
    CHECK((a / b) * b == a);
    CHECK(a * Scalar(1) == a);
    CHECK((a - a).is_zero());
    CHECK(Scalar::unit_i() * Scalar::unit_i() == Scalar(-1));
    CHECK(a.norm_sq() == Rat(9, 4) + Rat(1, 9));
    CHECK_THROWS_AS(a / Scalar(0), std::domain_error);
}

TEST_CASE("scalar string forms") {
    CHECK(Scalar(0).str() == "0");
    CHECK(Scalar(Rat(3, 2)).str() == "3/2");
    CHECK(Scalar(Rat(0), Rat(-1)).str() == "-i");
    CHECK(Scalar(Rat(1), Rat(2)).str() == "1+2*i");
    CHECK(Scalar(Rat(1), Rat(-1, 3)).str() == "1-1/3*i");
}

TEST_CASE("polynomial ring axioms, randomized") {
    for (int t = 0; t < 200; ++t) {
        WPoly a = rand_wpoly(), b = rand_wpoly(), c = rand_wpoly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
    }
    for (int t = 0; t < 50; ++t) {
        UPoly a = rand_upoly(), b = rand_upoly(), c = rand_upoly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("trailing zeros trimmed / degree well-defined") {
    WPoly p = WPoly::monomial(Scalar(2), 3);
    p -= WPoly::monomial(Scalar(2), 3);
    CHECK(p.is_zero());
    CHECK(p.degree() == -1);
    UPoly u = upoly_u(2) - upoly_u(2);
    CHECK(u.is_zero());
}

TEST_CASE("T-transform: antiderivative of the payload") {
    // constants integrate to u
    CHECK(upoly_T_transform(UPoly::constant(wpoly_one())) == upoly_u(1));
    // zero maps to zero
    CHECK(upoly_T_transform(UPoly{}).is_zero());
    // u^n -> u^{n+1}/(n+1)
    for (int n = 1; n <= 5; ++n) {
        UPoly expect = UPoly::monomial(WPoly::constant(Scalar(Rat(1, n + 1))), n + 1);
        CHECK(upoly_T_transform(upoly_u(n)) == expect);
    }
    // degree bump
    for (int t = 0; t < 30; ++t) {
        UPoly p = rand_upoly();
        if (p.is_zero()) continue;
        CHECK(upoly_T_transform(p).degree() == p.degree() + 1);
    }
}

TEST_CASE("S-transform: w(P - P(0)) + int t P'(t) dt") {
    // S of a constant payload vanishes
    CHECK(upoly_S_transform(UPoly::constant(wpoly_one())).is_zero());
    // u^n -> w u^n + (n/(n+1)) u^{n+1}
    for (int n = 1; n <= 5; ++n) {
        UPoly expect = UPoly::monomial(wpoly_w(), n) +
                       UPoly::monomial(WPoly::constant(Scalar(Rat(n, n + 1))), n + 1);
        CHECK(upoly_S_transform(upoly_u(n)) == expect);
    }
    // P = u by hand: w u + u^2/2
    UPoly byhand = UPoly::monomial(wpoly_w(), 1) +
                   UPoly::monomial(WPoly::constant(Scalar(Rat(1, 2))), 2);
    CHECK(upoly_S_transform(upoly_u(1)) == byhand);
    // non-constant payloads gain a degree
    for (int t = 0; t < 30; ++t) {
        UPoly p = rand_upoly();
        if (p.degree() < 1) continue;
        CHECK(upoly_S_transform(p).degree() == p.degree() + 1);
    }
}

TEST_CASE("M-transform: multiplication by u + w") {
    UPoly one = UPoly::constant(wpoly_one());
    UPoly u_plus_w = upoly_u(1) + UPoly::constant(wpoly_w());
    CHECK(upoly_M_transform(one) == u_plus_w);
    CHECK(upoly_M_transform(upoly_u(1)) == upoly_u(2) + UPoly::monomial(wpoly_w(), 1));
    CHECK(upoly_M_transform(UPoly{}).is_zero());
}

TEST_CASE("transforms are linear") {
    for (int t = 0; t < 30; ++t) {
        UPoly p = rand_upoly(), q = rand_upoly();
        WPoly c = rand_wpoly(1);
        CHECK(upoly_T_transform(p.scaled(c) + q) == upoly_T_transform(p).scaled(c) + upoly_T_transform(q));
        CHECK(upoly_S_transform(p.scaled(c) + q) == upoly_S_transform(p).scaled(c) + upoly_S_transform(q));
        CHECK(upoly_M_transform(p.scaled(c) + q) == upoly_M_transform(p).scaled(c) + upoly_M_transform(q));
    }
}

TEST_CASE("w divisibility") {
    UPoly p = UPoly::monomial(wpoly_w(2), 1) + UPoly::constant(wpoly_w());
    CHECK(upoly_divisible_by_w(p));
    CHECK(upoly_div_w(p) == UPoly::monomial(wpoly_w(), 1) + UPoly::constant(wpoly_one()));
    CHECK(!upoly_divisible_by_w(p + UPoly::constant(wpoly_one())));
}

TEST_CASE("concrete polynomial calculus") {
    // p = 1 + 2z + 3z^2
    Poly p({{Scalar(1), Scalar(2), Scalar(3)}});
    CHECK(poly_derivative(p) == Poly({{Scalar(2), Scalar(6)}}));
    CHECK(poly_antiderivative(poly_derivative(p)) == p - Poly::constant(Scalar(1)));
    CHECK(poly_eval(p, Scalar(2)) == Scalar(17));
    Poly q({{Scalar(0), Scalar(1)}}); // z
    CHECK(poly_compose(p, q) == p);
    CHECK(pochhammer(Int(3), 0) == 1);
    CHECK(pochhammer(Int(3), 3) == 3 * 4 * 5);
}
