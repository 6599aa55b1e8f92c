#ifndef MULTSPEC_FAMILY_HPP
#define MULTSPEC_FAMILY_HPP

#include "spectrum.hpp"

namespace multspec {

// One-parameter families are rational maps over k0(t). Specialization at
// t = c is coefficient evaluation; it must preserve the degree.
RationalMap specialize(const RationalMap& fam, const FieldElement& c,
                       const Budget& budget = default_budget());

struct IsoReport {
    bool isospectral;
    int witness_n = 0;           // first period with a non-constant coordinate
    int witness_sigma = 0;       // 1-based index into Lambda_n
    std::vector<MultiplierData> spectra; // n = 1..N
};

// Lambda_n constant in t for all n <= N; the witness is the first
// non-constant coordinate encountered
IsoReport isospectral_check(const RationalMap& fam, int N,
                            const Budget& budget = default_budget());

// phi(z) = psi(z^p) + a z for psi over k0(t), a nonzero constant; the wild
// isospectral family with every finite period-n multiplier equal to a^n
RationalMap counterexample_family(const Poly& psi, const FieldElement& a,
                                  const Budget& budget = default_budget());

struct EllipticCurve {
    FieldElement a, b; // y^2 = x^3 + a x + b, char not in {2, 3}
    static EllipticCurve make(const FieldElement& a, const FieldElement& b);
    FieldElement discriminant() const; // 4a^3 + 27b^2 (nonzero by construction)
    FieldElement j_invariant() const;  // 1728 * 4a^3 / (4a^3 + 27b^2)
};

// degree-m^2 map on the x-line commuting with multiplication by m through
// the projection P ~ -P; only m = 2 is supported
RationalMap lattes_from_curve(const EllipticCurve& e, int m = 2,
                              const Budget& budget = default_budget());

struct LattesProbeReport {
    IsoReport iso;
    bool j_invariant_constant;
    bool lambda_in_constant_field; // every sigma lies in GF(q)
    RationalMap map;
};

LattesProbeReport lattes_isospectral_probe(const FieldElement& a, const FieldElement& b, int N,
                                           const Budget& budget = default_budget());

struct TrivialityReport {
    bool all_conjugate;
    // first non-conjugate pair of parameter values, when found
    std::optional<std::pair<FieldElement, FieldElement>> distinct;
    struct PairResult {
        FieldElement c1, c2;
        bool conjugate;
        std::optional<ConjugacyWitness> witness;
    };
    std::vector<PairResult> pairs;
};

// specializes at the given parameter values and tests pairwise conjugacy by
// exhaustion over PGL2(GF(q^j)), j <= max_ext. A necessary-condition probe:
// finite-field witnesses only.
TrivialityReport triviality_probe(const RationalMap& fam,
                                  const std::vector<FieldElement>& values, int max_ext,
                                  const Budget& budget = default_budget());

} // namespace multspec

#endif
