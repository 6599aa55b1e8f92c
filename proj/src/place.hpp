#ifndef MULTSPEC_PLACE_HPP
#define MULTSPEC_PLACE_HPP

#include "spectrum.hpp"

namespace multspec {

// Normalized non-archimedean place: a rational prime of Q, a finite place of
// GF(q)(t) given by a monic irreducible pi(t), or the infinite (degree) place
// with v(f/g) = deg g - deg f. v(uniformizer) = 1.
class Place {
  public:
    enum class Kind { RationalPrime, FinitePoly, Infinite };

    static Place rational_prime(int64_t p);
    static Place finite_poly(FieldPtr func_field, Poly pi);
    static Place infinite(FieldPtr func_field);

    Kind kind() const { return kind_; }
    int64_t prime() const { return prime_; }
    const FieldPtr& func_field() const { return func_field_; }
    const Poly& pi() const { return pi_; }

    int64_t residue_characteristic() const;
    FieldPtr residue_field(const Budget& budget = default_budget()) const;
    std::string description() const;

  private:
    Place() = default;
    Kind kind_ = Kind::RationalPrime;
    int64_t prime_ = 0;
    FieldPtr func_field_; // function-field kinds
    Poly pi_;             // FinitePoly only, monic irreducible over the constant field
};

struct Val {
    bool infinite; // v(0)
    int64_t v;
    bool operator==(const Val& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
};

Val place_valuation(const FieldElement& x, const Place& v);

struct NewtonPolygon {
    struct Segment {
        Rat slope;
        int64_t length; // horizontal length; certifies `length` roots of valuation -slope
    };
    std::vector<std::pair<int64_t, int64_t>> points;   // (i, v(a_i)) for nonzero a_i
    std::vector<std::pair<int64_t, int64_t>> vertices; // lower hull, i ascending
    std::vector<Segment> segments;                     // slopes strictly increasing
    int64_t ord0 = 0;                                  // vanishing order at 0
};

NewtonPolygon newton_polygon(const Poly& f, const Place& v);

// convention check: the polygon of x - u for a uniformizer u certifies one
// root of valuation +1, over Q at p = 2 and over GF(5)(t) at (t)
bool newton_polygon_selftest();

struct SpectrumClassification {
    int64_t attracting = 0;  // v(lambda) > 0, including superattracting
    int64_t indifferent = 0; // v(lambda) = 0
    int64_t repelling = 0;   // v(lambda) < 0
    int64_t superattracting = 0; // lambda = 0 (T-adic vanishing order)
    std::vector<std::pair<Rat, int64_t>> by_valuation; // (root valuation, count)
};

SpectrumClassification classify_spectrum(const Poly& multiplier_poly, const Place& v);

struct ReducedMap {
    FieldPtr residue_field;
    Poly num, den;       // cleared reduction (dehomogenized), over the residue field
    int original_degree = 0;
    int degree = 0;      // after clearing common factors
    bool dropped = false;
    std::optional<RationalMap> as_map() const;
};

ReducedMap reduce_at_place(const RationalMap& m, const Place& v,
                           const Budget& budget = default_budget());

struct TameResult {
    enum class Kind { TameByDegree, Tame, Wild };
    Kind kind;
    std::string reason;
    // Wild witness: a critical point description and its local degree
    std::optional<std::pair<std::string, int64_t>> witness;
};

// d < p shortcut, otherwise the given integral model only: reduce, then check
// the local degree at every critical point of the reduction
TameResult tame_check(const RationalMap& m, const Place& v, int max_ext,
                      const Budget& budget = default_budget());

// local degree of the reduced pair at a point: vanishing order of
// phi(z) - phi(c) at z = c, conjugating to finite position as needed
int64_t local_degree_at(const RationalMap& m, const ProjPoint& c,
                        const Budget& budget = default_budget());

} // namespace multspec

#endif
