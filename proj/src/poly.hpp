#ifndef MULTSPEC_POLY_HPP
#define MULTSPEC_POLY_HPP

#include <utility>
#include <vector>

#include "field.hpp"

namespace multspec {

// Dense univariate polynomial over a Field, coefficients constant-first.
// Invariant: no trailing zero coefficients; the zero polynomial has an empty
// coefficient vector and degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(FieldPtr f) : field_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<FieldElement> coeffs);

    static Poly zero(FieldPtr f) { return Poly(std::move(f)); }
    static Poly constant(const FieldElement& c);
    static Poly x(FieldPtr f); // the monomial x
    static Poly from_ints(const FieldPtr& f, const std::vector<int64_t>& cs);

    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const FieldElement& operator[](size_t i) const { return c_[i]; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& lc() const; // leading coefficient, nonzero poly only
    FieldElement coeff(int i) const; // zero-padded access

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scale(const FieldElement& c) const;
    Poly shift(int k) const; // multiply by x^k
    Poly pow(int64_t e) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    FieldElement eval(const FieldElement& x) const;
    Poly derivative() const;
    Poly monic() const; // scale by lc^{-1}

    size_t hash() const;

  private:
    void trim();
    FieldPtr field_;
    std::vector<FieldElement> c_;
};

// quotient and remainder over the coefficient field; DivideByZero when g = 0
std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& g);

// exact quotient; InexactDivision when the remainder is nonzero
Poly poly_exact_div(const Poly& f, const Poly& g);

// monic gcd; gcd(0,0) = 0
Poly poly_gcd(const Poly& f, const Poly& g);

// g = gcd monic, and u, v with u*f + v*g0 = g for inputs (f, g0)
struct ExtGcd {
    Poly g, u, v;
};
ExtGcd poly_ext_gcd(const Poly& f, const Poly& g);

// inverse of f modulo m (gcd must be 1); Internal error otherwise
Poly poly_inverse_mod(const Poly& f, const Poly& m);

// resultant via the subresultant / pseudo-division chain
FieldElement poly_resultant(const Poly& f, const Poly& g);

// Moebius function via trial factorization
int mobius_mu(int64_t n);

// number of points of formal period n for a degree-d map:
// sum_{k | n} mu(n/k) (d^k + 1)
Int dynatomic_degree(int64_t d, int64_t n);

// Roots over extensions of a finite coefficient field. For each j <= max_ext
// the canonical GF(q^j) is scanned exhaustively; every root is reported once,
// at its minimal field of definition, with multiplicity obtained by repeated
// exact division. FieldTooLarge when q^j exceeds the enumeration budget.
struct RootRec {
    FieldElement value;
    int multiplicity;
    int ext_degree; // j: minimal field GF(q^j) over the coefficient field
};
std::vector<RootRec> poly_roots_enum(const Poly& f, int max_ext,
                                     const Budget& budget = default_budget());

// Constant roots of a polynomial over k0(t): roots lying in GF(q^j), j <= max_ext.
// remaining_degree reports the degree left unfactored (roots genuinely involving t).
struct ConstRoots {
    std::vector<RootRec> roots; // values live in GF(q^j)(t) as constants
    int remaining_degree;
};
ConstRoots poly_constant_roots(const Poly& f, int max_ext,
                               const Budget& budget = default_budget());

// irreducibility over a finite coefficient field, by gcd with x^{q^j} - x
// for j <= deg/2
bool poly_is_irreducible(const Poly& f);

// base-change of a polynomial along a coefficient embedding into `target`
// (finite -> finite extension, or constant-field extension of a fraction field)
Poly poly_map_coeffs(const Poly& f, const FieldPtr& target,
                     const Budget& budget = default_budget());

struct RatFunc {
    Poly num, den; // reduced, den monic and nonzero, over the constant field
};

// helpers for fraction-field elements
FieldElement ratfunc_from(const FieldPtr& frac_field, Poly num, Poly den);
const Poly& ff_num(const FieldElement& x);
const Poly& ff_den(const FieldElement& x);
bool ff_is_constant(const FieldElement& x); // num and den both degree <= 0
// constant-field value of a degree-0 fraction
FieldElement ff_constant_value(const FieldElement& x);
// evaluate a fraction-field element at t = c (c in the constant field or an
// extension of it); DivideByZero if the denominator vanishes
FieldElement ff_eval(const FieldElement& x, const FieldElement& c,
                     const Budget& budget = default_budget());
// embed a constant-field element as a degree-0 fraction
FieldElement ff_embed_constant(const FieldPtr& frac_field, const FieldElement& c);
// largest t-degree among num/den of fraction coefficients of f (0 for others)
int ff_coeff_height(const Poly& f);

} // namespace multspec

#endif
