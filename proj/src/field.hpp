#ifndef MULTSPEC_FIELD_HPP
#define MULTSPEC_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace multspec {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class FieldElement;
struct RatFunc; // reduced fraction of polynomials over the constant field

// Exact coefficient fields: Q, GF(p), GF(p^k) with an explicit monic irreducible
// modulus over GF(p), and rational function fields k0(t) over one of the former.
// All instances are immutable; elements hold a shared pointer to their field.
class Field : public std::enable_shared_from_this<Field> {
  public:
    enum class Kind { Rationals, Prime, Extension, RationalFunction };

    static FieldPtr rationals();
    static FieldPtr prime(int64_t p);
    // modulus: monic irreducible of degree k over GF(p), constant-first,
    // length k+1. When absent, the deterministically-first monic irreducible
    // (coefficient tuples (c0..c_{k-1}) in lexicographic order, c0 most
    // significant) is used.
    static FieldPtr extension(int64_t p, int k,
                              std::optional<std::vector<int64_t>> modulus = std::nullopt);
    static FieldPtr rational_function(FieldPtr constant_field, std::string var = "t");

    // canonical GF(p^k); k == 1 gives the prime field. Cached and reused so
    // repeated constructions share embeddings.
    static FieldPtr canonical_finite(int64_t p, int k);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    bool is_prime_field() const { return kind_ == Kind::Prime; }
    bool is_extension() const { return kind_ == Kind::Extension; }
    bool is_finite() const { return kind_ == Kind::Prime || kind_ == Kind::Extension; }
    bool is_fraction_field() const { return kind_ == Kind::RationalFunction; }

    int64_t characteristic() const;
    int64_t p() const { return p_; }
    int ext_degree() const { return k_; }           // degree over GF(p)
    const std::vector<uint64_t>& modulus() const { return modulus_; }
    const FieldPtr& constant_field() const { return base_; } // RationalFunction only
    const std::string& var() const { return var_; }

    // number of elements, finite kinds only; nullopt when it overflows 2^63
    std::optional<uint64_t> finite_size() const;

    // canonical element order of a finite field: index i in [0, p^k) maps to
    // the element with base-p digit vector (c0, c1, ...) where i = sum ci p^i
    FieldElement element_from_index(uint64_t idx) const;
    uint64_t element_index(const FieldElement& x) const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(int64_t n) const;
    FieldElement from_rat(const Rat& r) const;
    FieldElement generator() const; // Extension only: the class of x

    bool same(const Field& other) const; // structural equality
    std::string description() const;     // e.g. "7^1", "3^2", "5^1(t)", "q:0"

  private:
    friend class FieldElement;
    Field() = default;

    Kind kind_ = Kind::Rationals;
    int64_t p_ = 0;
    int k_ = 1;
    std::vector<uint64_t> modulus_; // length k_+1, monic, over GF(p)
    FieldPtr base_;
    std::string var_ = "t";
};

void require_same_field(const Field& a, const Field& b, const char* op);

class FieldElement {
  public:
    FieldElement() = default; // invalid until assigned

    const FieldPtr& field() const { return field_; }
    bool valid() const { return field_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const; // DivideByZero
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(const Int& e) const; // negative allowed for units

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    size_t hash() const;

    // payload accessors (checked)
    const Rat& rat() const;
    uint64_t residue() const;
    const std::vector<uint64_t>& ext_coeffs() const;
    const RatFunc& ratfunc() const;

    // Frobenius x -> x^(p^a) for finite fields
    FieldElement frobenius(int a = 1) const;

    static FieldElement make_rat(FieldPtr f, Rat v);
    static FieldElement make_residue(FieldPtr f, uint64_t v);
    static FieldElement make_ext(FieldPtr f, std::vector<uint64_t> v);
    static FieldElement make_ratfunc(FieldPtr f, RatFunc v); // normalizes

  private:
    FieldPtr field_;
    std::variant<std::monostate, Rat, uint64_t, std::vector<uint64_t>,
                 std::shared_ptr<const RatFunc>>
        rep_;
};

// --- embeddings between finite fields -------------------------------------
// GF(p^a) -> GF(p^b) with a | b, realized by sending the source generator to
// the first root (canonical element order) of the source modulus in the
// target. Deterministic and cached. FieldTooLarge when the scan exceeds the
// budget.
FieldElement embed(const FieldElement& x, const FieldPtr& target,
                   const Budget& budget = default_budget());

// inverse of embed on the image; Internal error if x is not in the image
FieldElement project_to_subfield(const FieldElement& x, const FieldPtr& subfield,
                                 const Budget& budget = default_budget());

bool lies_in_subfield(const FieldElement& x, const FieldPtr& subfield,
                      const Budget& budget = default_budget());

// length of the orbit of x under y -> y^(q) where q = #subfield; equals the
// degree of x over the subfield
int frobenius_orbit_length(const FieldElement& x, int64_t subfield_size_p_power_base,
                           int subfield_ext_degree);

bool is_prime_int64(int64_t n);

} // namespace multspec

#endif
