#ifndef MULTSPEC_SPECTRUM_HPP
#define MULTSPEC_SPECTRUM_HPP

#include "rational_map.hpp"

namespace multspec {

// Homogeneous form of P^1 x P^1 ... of a single pair (X, Z): stored through
// the dehomogenization u(x) = P(x, 1) and the total degree. The multiplicity
// of Z (the point at infinity) is total - deg u.
struct HomogForm {
    Poly univ;
    int total;
    int infinity_multiplicity() const { return total - univ.degree(); }
};

// n-th dynatomic form Phi_n = prod_{k | n} (Z F_k - X G_k)^{mu(n/k)}, the
// negative powers realized by exact division. Roots are the points of formal
// period n; total degree is sum_{k|n} mu(n/k)(d^k + 1).
HomogForm dynatomic(const RationalMap& m, int n, const Budget& budget = default_budget());

// multiplier (phi^n)'(z) at a point fixed by phi^n, computed by the chain
// rule along the orbit; orbits through infinity are first moved to finite
// position by a deterministic inversion
FieldElement multiplier_at(const RationalMap& m, const ProjPoint& z, int n,
                           const Budget& budget = default_budget());

struct MultiplierData {
    int n;
    int Kn;                           // deg M_n
    Poly M;                           // monic in T over the base field
    std::vector<FieldElement> lambda; // sigma_1 ... sigma_Kn (signed coefficients)
};

// Multiplier polynomial M_n(T) = prod_{Phi_n(z)=0} (T - lambda_z), computed
// without root finding as the normalized resultant Res_z(Phi_n(z,1), T D - N)
// where (phi^n)' = N/D; the factor at infinity is (T - lambda_inf)^m for the
// Z-multiplicity m of Phi_n. When a finite formal-period-n point is a pole of
// phi^n the map is first conjugated by z -> 1/(z - c) for the deterministic
// first basepoint c that is not periodic of period <= n.
MultiplierData multiplier_spectrum(const RationalMap& m, int n,
                                   const Budget& budget = default_budget());

// sigma vector from a monic multiplier polynomial
std::vector<FieldElement> signed_coefficients(const Poly& monic);

} // namespace multspec

#endif
