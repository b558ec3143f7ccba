// Scripted, reproducible verification suites tying the symbolic and numeric
// halves together. Exact suites (oracle, commutators, determinants, nesting,
// trivial) use no floating point; numeric suites report their discretization
// parameters and double-resolution deltas.
#pragma once

#include "paraprod/classify.hpp"
#include "paraprod/norms.hpp"

#include <cstdint>
#include <variant>

namespace paraprod {

enum class ReportVerdict { Pass, Fail, Informational };

struct Observation {
    std::string label;
    std::variant<double, bool, std::string, std::int64_t> value;
};

struct Report {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<Observation> observations;
    ReportVerdict verdict = ReportVerdict::Pass;

    void param(const std::string& k, const std::string& v) { parameters.emplace_back(k, v); }
    void obs(std::string label, double v) { observations.push_back({std::move(label), v}); }
    void obs(std::string label, bool v) { observations.push_back({std::move(label), v}); }
    void obs(std::string label, std::string v) { observations.push_back({std::move(label), std::move(v)}); }
    void obs(std::string label, std::int64_t v) { observations.push_back({std::move(label), v}); }
    // A hard requirement: records the flag and downgrades the verdict on failure.
    void require(std::string label, bool ok) {
        obs(std::move(label), ok);
        if (!ok) verdict = ReportVerdict::Fail;
    }
    bool passed() const { return verdict != ReportVerdict::Fail; }
    std::string to_json_string(int indent = 2) const;
};

// -- exact suites -----------------------------------------------------------

// Random expressions (<= 6 letters, depth <= 4) against the integral-definition
// oracle on z^l, l = 0..12, plus re-association invariance of normalize.
Report verify_oracle(int trials = 200, std::uint64_t seed = 20240801);

// Iterated commutators [S^k, T]_j against their closed forms, coefficient-exactly.
Report verify_commutators(int k_max = 5, int j_max = 7);

// Factorial-matrix determinants: D != 0, the Pochhammer recursion
// Delta^{(m)}_n = m! Delta^{(m-1)}_{n+1}, Delta^{(1)} = 1, spot value 1/12.
Report verify_determinants(int m_max = 6, int n_max = 6);

// Radical-free seminorm nesting ||f^m - f^m(0)||^{2n} <= ||f^n - f^n(0)||^{2m}
// in H^2 and A^2_0, exact rational arithmetic.
Report verify_nesting(int trials = 100, int deg_max = 4, std::uint64_t seed = 20240802);

// is_trivial(normalize(E)) agrees with vanishing of the exact action on z^l,
// l = 1..letter-count+1, for a generic rational symbol.
Report verify_trivial(int trials = 100, std::uint64_t seed = 20240803);

// -- numeric suites ---------------------------------------------------------

struct DilationParams {
    std::string expr = "S*T";
    std::string g = "1+z";
    int alpha = 0;
    std::vector<Rat> r_list = {Rat(3, 10), Rat(6, 10), Rat(9, 10)};
    int truncation = 150;
    double tol = 1e-3;
};
Report dilation_monotonicity(const DilationParams& prm = {});

struct PowerInequalityParams {
    std::string g = "1+z+1/2*z^2";
    int n = 2;
    int alpha = 0;
    int deg_max = 6;
    int samples = 50;
    std::uint64_t seed = 20240804;
};
Report power_inequality_scan(const PowerInequalityParams& prm = {});

struct GrowthParams {
    int k = 2;
    double alpha = 0.0;
    int p = 2; // even; the angular integral is evaluated exactly via Parseval
    std::vector<int> j_ladder = {1, 2, 3, 4, 5, 6}; // radii 1 - 10^-j
    int radial_nodes = 32;
};
Report counterexample_growth(const GrowthParams& prm = {});

struct BoundedParams {
    double beta = 0.6;
    double eps = 0.1;
    int alpha = 0; // integer; p = 2 moment path
    std::vector<int> lambda_j_ladder = {1, 2, 3, 4, 5};
    int truncation = 4096;
    int factorization_truncation = 256;
    double factorization_tol = 1e-8;
};
Report counterexample_bounded(const BoundedParams& prm = {});

struct PointwiseBoundParams {
    double gamma = 8.0;
    std::vector<double> lambda_list = {0.9};
    int k_max = 3;
    int t_points = 20;
    int truncation = 512;
};
Report pointwise_bound_check(const PointwiseBoundParams& prm = {});

struct VmoaProbeParams {
    double beta = 0.6;
    std::vector<int> a_j_ladder = {0, 1, 2, 3, 4, 5, 6}; // a = 1 - 10^-j (j = 0 -> a = 0)
    int panel_nodes = 32;
};
Report vmoa_probe(const VmoaProbeParams& prm = {});

} // namespace paraprod
