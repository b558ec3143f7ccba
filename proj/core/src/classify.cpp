#include "paraprod/classify.hpp"

#include <nlohmann/json.hpp>

namespace paraprod {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Zero: return "zero";
    case Verdict::TrivialIffGPowerInSpace: return "trivial_iff_g_power_in_space";
    case Verdict::IffGInHinfty: return "iff_g_in_hinfty";
    case Verdict::IffGPowerInBloch: return "iff_g_power_in_bloch";
    case Verdict::IffGPowerInBMOA: return "iff_g_power_in_bmoa";
    case Verdict::SufficientGPowerBMOA_NecessityOpen: return "g_power_bmoa_sufficient_necessity_open";
    case Verdict::Uncovered: return "uncovered";
    }
    return "?";
}

std::string Classification::to_json_string() const {
    nlohmann::ordered_json j;
    j["verdict"] = verdict_name(verdict);
    if (verdict != Verdict::Zero && verdict != Verdict::IffGInHinfty && verdict != Verdict::Uncovered)
        j["power"] = power;
    j["space"] = hardy ? "hardy" : "bergman";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : provenance)
        arr.push_back(nlohmann::ordered_json{{"theorem", p.theorem}, {"quote", p.quote}});
    j["provenance"] = arr;
    if (!note.empty()) j["note"] = note;
    return j.dump();
}

namespace {

const char* kCompactnessNote =
    "compactness analogue: T-type conditions harden to the little-oh classes "
    "(Bloch_0 / VMOA); S- or M-dominated operators are compact only for g == 0";

Classification make(Verdict v, int power, const SpaceClass& sp, Provenance prov, std::string note = {}) {
    Classification c;
    c.verdict = v;
    c.power = power;
    c.hardy = sp.is_hardy();
    c.provenance.push_back(std::move(prov));
    c.note = std::move(note);
    return c;
}

} // namespace

Classification classify(const GroupedForm& gf, const SpaceClass& sp) {
    bool delta_zero = gf.delta_w_divisible ? gf.Pn2.is_zero() : gf.delta_raw.is_zero();

    if (gf.n < 0 && gf.Pn1.is_zero()) {
        if (delta_zero)
            return make(Verdict::Zero, 0, sp, {"zero-operator", "every coefficient vanishes"});
        int d = gf.delta_w_divisible ? gf.Pn2.degree() : gf.delta_raw.degree();
        return make(Verdict::TrivialIffGPowerInSpace, d, sp,
                    {"trivial-part-growth",
                     "P(g-g(0)) delta_0 is bounded on A^p_a iff g^{deg P} lies in A^p_a"});
    }

    if (!gf.Pn1.is_zero())
        return make(Verdict::IffGInHinfty, 0, sp,
                    {"pure-s-part", "a nonzero pure S-polynomial part forces: bounded iff g in H^infty"},
                    kCompactnessNote);

    // From here on some S^j T P_j group exists (n >= 0) and the pure-S part vanishes.
    if (gf.n == 0)
        // The whole operator is a polynomial in T_g with zero constant term;
        // such a polynomial is bounded exactly when T_g itself is.
        return make(sp.is_hardy() ? Verdict::IffGPowerInBMOA : Verdict::IffGPowerInBloch, 1, sp,
                    {"polynomial-in-t", "Q(T_g), Q(0)=0, is bounded iff T_g is, i.e. iff g in Bloch "
                                        "(Bergman) / BMOA (Hardy)"},
                    kCompactnessNote);

    const Poly& pn = gf.P[gf.n];
    if (pn.is_constant())
        // Nonzero constant leading group; rescaling by that constant reduces to
        // the P_n = 1 case, and boundedness is scale invariant.
        return make(sp.is_hardy() ? Verdict::IffGPowerInBMOA : Verdict::IffGPowerInBloch, gf.n + 1, sp,
                    {"leading-group-constant",
                     "P_{n+1}=0 and P_n a nonzero constant: bounded iff T_{g^{n+1}} is, i.e. iff "
                     "g^{n+1} in Bloch (Bergman) / BMOA (Hardy)"},
                    kCompactnessNote);

    if (!pn.coeff(0).is_zero()) {
        if (!sp.is_hardy())
            return make(Verdict::IffGPowerInBloch, gf.n + 1, sp,
                        {"leading-group-nonvanishing",
                         "P_{n+1}=0, P_n(0)!=0, a>-1: bounded iff g^{n+1} in Bloch"},
                        kCompactnessNote);
        return make(Verdict::SufficientGPowerBMOA_NecessityOpen, gf.n + 1, sp,
                    {"hardy-necessity-open",
                     "P_{n+1}=0, P_n(0)!=0 on H^p: g^{n+1} in BMOA is sufficient; whether it is "
                     "necessary is open"});
    }

    return make(Verdict::Uncovered, 0, sp,
                {"vanishing-head",
                 "P_{n+1}=0 and P_n(0)=0 is not classified; for the symbol log(e/(1-z)) the word "
                 "S T^2 is unbounded on every A^p_a even though g is in BMOA"});
}

namespace {

// Accumulate the terms of a flattened sum into Q coefficients keyed by the
// T-power, checking every atom is T_{g^m} with one shared m.
bool accumulate_tgm(const ExprPtr& e, const WPoly& mult, std::optional<int>& m,
                    std::map<int, Scalar>& q) {
    switch (e->kind) {
    case OperatorExpr::Kind::Sum: {
        for (const auto& t : e->children)
            if (!accumulate_tgm(t, mult, m, q)) return false;
        return true;
    }
    case OperatorExpr::Kind::ScalarMul:
        return accumulate_tgm(e->operand, mult * e->coeff, m, q);
    case OperatorExpr::Kind::Power: {
        if (e->base->kind != OperatorExpr::Kind::Atom) return false;
        const Atom& a = e->base->atom;
        if (a.kind != AtomKind::T) return false;
        if (m && *m != a.sym_power) return false;
        m = a.sym_power;
        if (!mult.is_constant()) return false; // complex coefficients only
        q[e->exponent] += mult.coeff(0);
        return true;
    }
    case OperatorExpr::Kind::Atom: {
        const Atom& a = e->atom;
        if (a.kind != AtomKind::T) return false;
        if (m && *m != a.sym_power) return false;
        m = a.sym_power;
        if (!mult.is_constant()) return false;
        q[1] += mult.coeff(0);
        return true;
    }
    case OperatorExpr::Kind::Product:
        return false; // written as a genuine composition, not a T_{g^m} polynomial
    }
    return false;
}

} // namespace

std::optional<PolyInTgm> detect_poly_in_Tgm(const ExprPtr& e) {
    std::optional<int> m;
    std::map<int, Scalar> q;
    if (!accumulate_tgm(e, wpoly_one(), m, q)) return std::nullopt;
    if (!m) return std::nullopt;
    PolyInTgm r;
    r.m = *m;
    for (const auto& [d, c] : q) r.q += Poly::monomial(c, d);
    if (r.q.is_zero() || r.q.degree() < 1) return std::nullopt;
    return r;
}

Classification classify_expr(const ExprPtr& e, const SpaceClass& sp) {
    if (auto hit = detect_poly_in_Tgm(e)) {
        return make(sp.is_hardy() ? Verdict::IffGPowerInBMOA : Verdict::IffGPowerInBloch, hit->m, sp,
                    {"polynomial-in-single-kernel",
                     "Q(T_{g^m}) with Q(0)=0 is bounded iff T_{g^m} is, i.e. iff g^m in Bloch "
                     "(Bergman) / BMOA (Hardy)"},
                    kCompactnessNote);
    }
    return classify(group(normalize(e)), sp);
}

std::array<TwoLetterEntry, 9> two_letter_table(const SpaceClass& sp) {
    static const char* words[9] = {"T*T", "T*S", "T*M", "S*T", "S*S", "S*M", "M*T", "M*S", "M*M"};
    std::array<TwoLetterEntry, 9> out;
    for (int i = 0; i < 9; ++i) {
        out[i].word = words[i];
        out[i].cls = classify_expr(parse(words[i]), sp);
    }
    return out;
}

std::string two_letter_table_json(const SpaceClass& sp) {
    nlohmann::ordered_json j;
    j["space"] = sp.is_hardy() ? "hardy" : "bergman";
    auto rows = nlohmann::ordered_json::array();
    for (const auto& entry : two_letter_table(sp)) {
        auto cls = nlohmann::ordered_json::parse(entry.cls.to_json_string());
        cls.erase("space");
        rows.push_back(nlohmann::ordered_json{{"word", entry.word}, {"classification", cls}});
    }
    j["entries"] = rows;
    return j.dump(2) + "\n";
}

} // namespace paraprod
