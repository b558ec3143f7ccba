// Reduction of operator expressions to the unique ST-canonical form
//
//     L = sum c_{j,k} S^j T^k  (j+k >= 1)  +  D(g-g(0)) delta_0,
//
// with coefficients in Q(i)[w] (w stands for g(0)), together with exact
// polynomial evaluation oracles and commutator builders.
#pragma once

#include "paraprod/expr.hpp"

#include <map>
#include <optional>
#include <string>

namespace paraprod {

struct StKey {
    int j = 0; // S-power
    int k = 0; // T-power
    friend auto operator<=>(const StKey&, const StKey&) = default;
};

struct CanonicalForm {
    // Basis-word coefficients; invariant: no zero values stored, j+k >= 1.
    std::map<StKey, WPoly> st;
    // Trivial part: f -> delta(g-g(0)) * f(0), w evaluated at g(0).
    UPoly delta;

    bool is_zero() const { return st.empty() && delta.is_zero(); }
    void add_st(StKey key, const WPoly& c);
    CanonicalForm& operator+=(const CanonicalForm& o);
    friend CanonicalForm operator+(CanonicalForm a, const CanonicalForm& b) { a += b; return a; }
    CanonicalForm scaled(const WPoly& c) const;
    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.st == b.st && a.delta == b.delta;
    }
    std::string to_json_string() const;
    // Render as an expression in the input grammar (round-trips through parse).
    std::string to_plain_string() const;
};

struct NormalizeOptions {
    // Aborts when the number of live basis words plus pending expansion steps
    // exceeds this bound; adversarial inputs otherwise exhaust memory.
    size_t term_limit = 1'000'000;
};

struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CanonicalForm normalize(const ExprPtr& e, const NormalizeOptions& opt = {});

bool is_trivial(const CanonicalForm& c);

// The grouped shape
//   L = sum_{j=0}^n S^j T P_j(T) + S P_{n+1}(S) + g(0) P_{n+2}(g-g(0)) delta_0.
struct GroupedForm {
    int n = -1;               // largest j with some c_{j,k} != 0, k >= 1; -1 when none
    std::vector<Poly> P;      // P[j](x) = sum_{k>=1} c_{j,k} x^{k-1}, size n+1
    Poly Pn1;                 // sum_{j>=1} c_{j,0} x^{j-1}
    UPoly Pn2;                // delta / w when divisible (coefficients then w-evaluated-free)
    bool delta_w_divisible = true;
    UPoly delta_raw;          // reported raw when not divisible by w
};

struct WDependentCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requires every st coefficient to be w-free (constant WPoly).
GroupedForm group(const CanonicalForm& c);

// [a,b] = ab - ba and the expanded iterated commutator
// [a,b]_k = sum_{j=0}^k (-1)^j binom(k,j) b^j a b^{k-j}.
ExprPtr commutator(const ExprPtr& a, const ExprPtr& b);
ExprPtr iterated_commutator(const ExprPtr& a, const ExprPtr& b, int k);

// Exact action on polynomials, straight from the integral definitions:
//   T_g f = int f g',  S_g f = int f' g,  M_g f = g f,  delta-atoms evaluate at 0.
// Generalized letters act with the symbol g^m directly, so this path is an
// oracle independent of the rewrite rules above.
Poly evaluate_exact(const ExprPtr& e, const Poly& f, const Poly& g);
Poly evaluate_exact(const CanonicalForm& c, const Poly& f, const Poly& g);

// Predicted leading term of S^{m-j} T^j applied to (g-g(0))^n:
// coefficient n!/((m+n)(n+j-1)!), total degree m+n in (g-g(0)).
struct LeadingTerm {
    Scalar coefficient;
    int degree;
};
LeadingTerm st_monomial_action(int m, int j, int n);

} // namespace paraprod
