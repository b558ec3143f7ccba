// Boundedness verdicts for g-operators on weighted Bergman spaces A^p_a
// (a > -1) and Hardy spaces (a = -1), decided from the grouped canonical form.
#pragma once

#include "paraprod/rewrite.hpp"

#include <array>
#include <optional>

namespace paraprod {

struct SpaceClass {
    // alpha = -1 selects the Hardy space H^p; alpha > -1 the Bergman space A^p_alpha.
    double alpha = 0.0;
    double p = 2.0;

    bool is_hardy() const { return alpha == -1.0; }
    static SpaceClass bergman(double alpha = 0.0, double p = 2.0) { return {alpha, p}; }
    static SpaceClass hardy(double p = 2.0) { return {-1.0, p}; }
};

enum class Verdict {
    Zero,                              // the zero operator
    TrivialIffGPowerInSpace,           // bounded iff g^power lies in A^p_alpha
    IffGInHinfty,                      // bounded iff g is a bounded function
    IffGPowerInBloch,                  // bounded iff g^power in the Bloch space
    IffGPowerInBMOA,                   // bounded iff g^power in BMOA
    SufficientGPowerBMOA_NecessityOpen,// g^power in BMOA suffices; necessity open
    Uncovered,                         // outside the classified regimes
};

const char* verdict_name(Verdict v);

struct Provenance {
    std::string theorem; // internal rule id
    std::string quote;   // the mathematical condition the rule encodes
};

struct Classification {
    Verdict verdict = Verdict::Uncovered;
    int power = 0; // exponent in g^power verdicts; degree for the trivial verdict
    bool hardy = false;
    std::vector<Provenance> provenance;
    std::string note; // informational, e.g. the compactness analogue

    std::string to_json_string() const;
};

Classification classify(const GroupedForm& gf, const SpaceClass& sp);

// Convenience: normalize + group + classify, with the syntactic polynomial-in-
// T_{g^m} shortcut applied first (it refines the Uncovered verdict).
Classification classify_expr(const ExprPtr& e, const SpaceClass& sp);

// Syntactic match of e as Q(T_{g^m}) for a single m and a polynomial Q with
// Q(0) = 0 and w-free complex coefficients.
struct PolyInTgm {
    int m = 1;
    Poly q; // q.coeff(d) multiplies T_{g^m}^d
};
std::optional<PolyInTgm> detect_poly_in_Tgm(const ExprPtr& e);

// The nine 2-letter compositions X*Y (Y acts first), classified.
struct TwoLetterEntry {
    std::string word;
    Classification cls;
};
std::array<TwoLetterEntry, 9> two_letter_table(const SpaceClass& sp);
std::string two_letter_table_json(const SpaceClass& sp);

} // namespace paraprod
