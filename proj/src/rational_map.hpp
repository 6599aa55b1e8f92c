#ifndef MULTSPEC_RATIONAL_MAP_HPP
#define MULTSPEC_RATIONAL_MAP_HPP

#include <optional>

#include "poly.hpp"

namespace multspec {

// Point of P^1 in canonical form: (x : 1) or (1 : 0).
struct ProjPoint {
    FieldElement x, z;

    static ProjPoint affine(const FieldElement& v) { return ProjPoint{v, v.field()->one()}; }
    static ProjPoint infinity(const FieldPtr& f) { return ProjPoint{f->one(), f->zero()}; }
    static ProjPoint normalized(const FieldElement& x, const FieldElement& z);

    bool is_infinity() const { return z.is_zero(); }
    bool operator==(const ProjPoint& o) const { return x == o.x && z == o.z; }
    size_t hash() const;
};

// Element of PGL2 in canonical scaling (first nonzero of (a,b,c,d) equals 1),
// acting by z -> (az + b)/(cz + d).
class MobiusTransform {
  public:
    static MobiusTransform make(const FieldElement& a, const FieldElement& b,
                                const FieldElement& c, const FieldElement& d);
    static MobiusTransform identity(const FieldPtr& f);
    // z -> 1/(z - c), which moves c to infinity and infinity to 0
    static MobiusTransform inversion_at(const FieldElement& c);

    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }
    const FieldElement& c() const { return c_; }
    const FieldElement& d() const { return d_; }
    const FieldPtr& field() const { return a_.field(); }

    ProjPoint apply(const ProjPoint& p) const;
    MobiusTransform inverse() const; // adjugate, canonically rescaled
    bool operator==(const MobiusTransform& o) const;

  private:
    MobiusTransform() = default;
    FieldElement a_, b_, c_, d_;
};

// Degree-d endomorphism of P^1 as a homogeneous pair (F, G), stored through
// the dehomogenizations f(x) = F(x,1), g(x) = G(x,1) plus the common total
// degree. Invariants: Res(F, G) != 0, canonical scaling (first nonzero
// coefficient of f then g, constant-first, equals 1), d >= 2.
class RationalMap {
  public:
    // affine input f/g; d = max(deg f, deg g) after homogenization
    static RationalMap make(Poly num, Poly den, const Budget& budget = default_budget());

    const FieldPtr& field() const { return num_.field(); }
    int degree() const { return d_; }
    const Poly& num() const { return num_; } // f(x) = F(x, 1)
    const Poly& den() const { return den_; } // g(x) = G(x, 1)

    bool operator==(const RationalMap& o) const;
    size_t hash() const;

    // trusted constructor for internally produced pairs (already coprime)
    static RationalMap from_validated(Poly num, Poly den, int degree);

  private:
    RationalMap() = default;
    Poly num_, den_;
    int d_ = 0;
};

ProjPoint map_evaluate(const RationalMap& m, const ProjPoint& p);
RationalMap map_iterate(const RationalMap& m, int n, const Budget& budget = default_budget());
RationalMap map_compose(const RationalMap& f, const RationalMap& g,
                        const Budget& budget = default_budget());
RationalMap map_conjugate(const RationalMap& m, const MobiusTransform& a);
RationalMap map_base_change(const RationalMap& m, const FieldPtr& target,
                            const Budget& budget = default_budget());

// derivative of the affine map f/g as the pair (f'g - fg', g^2)
std::pair<Poly, Poly> map_derivative_pair(const RationalMap& m);

struct CriticalPoint {
    ProjPoint pt;
    int multiplicity; // order as a root of the Wronskian
    int ext_degree;   // minimal GF(q^j) over the base field; 1 for infinity
};

// Roots of the degree-(2d-2) Wronskian form. Over a function field only
// constant critical points are located; a nonzero unfactored remainder is an
// error for callers that need all of them.
struct CriticalSet {
    std::vector<CriticalPoint> points;
    int unfactored_degree = 0;
};
CriticalSet critical_points(const RationalMap& m, int max_ext,
                            const Budget& budget = default_budget());

struct OrbitRec {
    bool closed;   // repeat found within the bound
    int tail;      // minimal tail length
    int cycle;     // cycle length (when closed)
    int steps;     // evaluations performed
};
OrbitRec orbit(const RationalMap& m, const ProjPoint& start, int bound);

struct PcfReport {
    enum class Status { PCF, NotPCFWithinBound, Unresolved };
    Status status;
    struct CriticalOrbit {
        CriticalPoint critical;
        OrbitRec orbit;
    };
    std::vector<CriticalOrbit> orbits;
};
PcfReport pcf_check(const RationalMap& m, int bound, int max_ext,
                    const Budget& budget = default_budget());

struct ConjugacyWitness {
    MobiusTransform a;
    int ext_degree; // witness lives in PGL2(GF(q^j))
};
// exhaustive PGL2(GF(q^j)) search, j <= max_ext, canonical order, first witness
std::optional<ConjugacyWitness> conjugacy_test(const RationalMap& f, const RationalMap& g,
                                               int max_ext,
                                               const Budget& budget = default_budget());

// enumeration order for PGL2 over a finite field: index over canonical tuples
// (1,b,c,d) then (0,1,c,d); returns nullopt for singular tuples
uint64_t pgl2_tuple_count(uint64_t q);
std::optional<MobiusTransform> pgl2_from_index(const FieldPtr& f, uint64_t idx);

// first constant c (canonical order over the base field, constants only for
// function fields) that is not periodic of period <= n; used to move periodic
// points away from infinity
FieldElement nonperiodic_basepoint(const RationalMap& m, int n);

// substitute X -> aX + bZ, Z -> cX + dZ into the homogeneous form described
// by (u, total); returns the new dehomogenization
Poly homog_linear_subst(const Poly& u, int total, const FieldElement& a, const FieldElement& b,
                        const FieldElement& c, const FieldElement& d);

} // namespace multspec

#endif
