#ifndef MULTSPEC_TEXTIO_HPP
#define MULTSPEC_TEXTIO_HPP

#include <string>

#include "place.hpp"

namespace multspec {

// Text encodings, used both by the CLI surface and by JSON payloads.
//   prime field: "3"; rationals: "-2/3"
//   extension:   "[2,0,1]" (constant-first over GF(p)); "g^2+1" also parses
//   function field: "t^2+1" or "(t^2+1)/(t)"
//   polynomial: coefficient list "[c0,c1,...]", entries element expressions
//   field: "q:0" | "7^1" | "3^2" | "3^2 modulus=[1,0,1]" | "5^1(t)"
//   map: "field: 5^1(t); num=[t,0,1]; den=[1]"
//   place: "prime:7" | "place:t^2+1 over 5^1" | "place:inf over 5^1"
//   point: "inf" | element expression

std::string element_to_string(const FieldElement& x);
FieldElement parse_element(const std::string& text, const FieldPtr& f);

std::string poly_to_coeff_list(const Poly& f);
Poly parse_poly_coeff_list(const std::string& text, const FieldPtr& f);
std::string poly_in_var(const Poly& f, const std::string& var);

std::string field_to_string(const Field& f);
FieldPtr parse_field(const std::string& text);

std::string map_to_spec(const RationalMap& m);
RationalMap parse_map_spec(const std::string& text, const Budget& budget = default_budget());

std::string place_to_string(const Place& v);
Place parse_place(const std::string& text);

std::string point_to_string(const ProjPoint& p);
ProjPoint parse_point(const std::string& text, const FieldPtr& f);

struct LattesSpec {
    FieldElement a, b;
    int m;
    FieldPtr field;
};
// "lattes A=<expr> B=<expr> m=2 over <field>"
LattesSpec parse_lattes_spec(const std::string& text);

} // namespace multspec

#endif
