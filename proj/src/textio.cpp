#include "textio.hpp"

#include <cctype>
#include <sstream>

namespace multspec {

namespace {

[[noreturn]] void parse_fail(size_t col, const std::string& expected) {
    throw Error(Err::Parse, "parse error at column " + std::to_string(col + 1) + ": expected " + expected);
}

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) parse_fail(pos, std::string("'") + c + "'");
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            size_t end = pos + w.size();
            if (end < s.size() && (std::isalnum((unsigned char)s[end]) || s[end] == '_'))
                return false;
            pos = end;
            return true;
        }
        return false;
    }
    int64_t integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == digits) parse_fail(start, "integer");
        return std::stoll(s.substr(start, pos - start));
    }
};

// expression grammar over a field:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-'* atom ('^' int)?
//   atom   := int | 't' | 'g' | '[' int (',' int)* ']' | '(' expr ')'
struct ExprParser {
    Lexer& lx;
    const FieldPtr& f;

    FieldElement atom() {
        char c = lx.peek();
        if (c == '(') {
            lx.expect('(');
            FieldElement e = expr();
            lx.expect(')');
            return e;
        }
        if (c == '[') return vector_atom();
        if (lx.accept_word(f->is_fraction_field() ? f->var() : "t")) {
            if (!f->is_fraction_field()) parse_fail(lx.pos, "element of a non-function field");
            return ratfunc_from(f, Poly::x(f->constant_field()),
                                Poly::constant(f->constant_field()->one()));
        }
        if (lx.accept_word("g")) {
            const FieldPtr& k0 = f->is_fraction_field() ? f->constant_field() : f;
            if (!k0->is_extension()) parse_fail(lx.pos, "'g' needs an extension field");
            FieldElement g = k0->generator();
            return f->is_fraction_field() ? ff_embed_constant(f, g) : g;
        }
        if (c == '-' || c == '+' || std::isdigit((unsigned char)c)) return f->from_int(lx.integer());
        parse_fail(lx.pos, "element");
    }

    FieldElement vector_atom() {
        lx.expect('[');
        std::vector<int64_t> cs;
        if (!lx.accept(']')) {
            cs.push_back(lx.integer());
            while (lx.accept(',')) cs.push_back(lx.integer());
            lx.expect(']');
        }
        const FieldPtr& k0 = f->is_fraction_field() ? f->constant_field() : f;
        if (!k0->is_finite()) parse_fail(lx.pos, "coefficient vector over a finite field");
        FieldElement v = k0->zero();
        FieldElement gpow = k0->one();
        FieldElement g = k0->is_extension() ? k0->generator() : k0->one();
        for (size_t i = 0; i < cs.size(); ++i) {
            v = v + gpow * k0->from_int(cs[i]);
            if (i + 1 < cs.size()) gpow = gpow * g;
        }
        return f->is_fraction_field() ? ff_embed_constant(f, v) : v;
    }

    FieldElement factor() {
        bool neg = false;
        while (true) {
            char c = lx.peek();
            if (c == '-') { lx.expect('-'); neg = !neg; }
            else if (c == '+') lx.expect('+');
            else break;
        }
        FieldElement e = atom();
        if (lx.peek() == '^') {
            lx.expect('^');
            int64_t n = lx.integer();
            e = e.pow(Int(n));
        }
        return neg ? -e : e;
    }

    FieldElement term() {
        FieldElement e = factor();
        while (true) {
            char c = lx.peek();
            if (c == '*') { lx.expect('*'); e = e * factor(); }
            else if (c == '/') { lx.expect('/'); e = e / factor(); }
            else break;
        }
        return e;
    }

    FieldElement expr() {
        FieldElement e = term();
        while (true) {
            char c = lx.peek();
            if (c == '+') { lx.expect('+'); e = e + term(); }
            else if (c == '-') { lx.expect('-'); e = e - term(); }
            else break;
        }
        return e;
    }
};

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string join_terms(std::vector<std::string> terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i == 0) out = terms[i];
        else if (!terms[i].empty() && terms[i][0] == '-')
            out += terms[i];
        else
            out += "+" + terms[i];
    }
    return out;
}

} // namespace

std::string poly_in_var(const Poly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::vector<std::string> terms;
    for (int i = f.degree(); i >= 0; --i) {
        const FieldElement& c = f[(size_t)i];
        if (c.is_zero()) continue;
        std::string cs = element_to_string(c);
        std::string t;
        if (i == 0) t = cs;
        else {
            std::string xs = i == 1 ? var : var + "^" + std::to_string(i);
            if (c.is_one()) t = xs;
            else if (cs == "-1") t = "-" + xs;
            else {
                bool needs_parens = cs.find('+') != std::string::npos ||
                                    (cs.find('-') != std::string::npos && cs.rfind('-') > 0) ||
                                    cs.find('/') != std::string::npos;
                t = (needs_parens ? "(" + cs + ")" : cs) + "*" + xs;
            }
        }
        terms.push_back(std::move(t));
    }
    return join_terms(std::move(terms));
}

std::string element_to_string(const FieldElement& x) {
    switch (x.field()->kind()) {
        case Field::Kind::Rationals: return rat_to_string(x.rat());
        case Field::Kind::Prime: return std::to_string(x.residue());
        case Field::Kind::Extension: {
            std::string out = "[";
            const auto& v = x.ext_coeffs();
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(v[i]);
            }
            return out + "]";
        }
        case Field::Kind::RationalFunction: {
            const RatFunc& rf = x.ratfunc();
            std::string num = poly_in_var(rf.num, x.field()->var());
            if (rf.den.degree() == 0) return num;
            return "(" + num + ")/(" + poly_in_var(rf.den, x.field()->var()) + ")";
        }
    }
    throw Error(Err::Internal, "bad field kind");
}

FieldElement parse_element(const std::string& text, const FieldPtr& f) {
    Lexer lx{text};
    ExprParser p{lx, f};
    FieldElement e = p.expr();
    if (!lx.eof()) parse_fail(lx.pos, "end of input");
    return e;
}

std::string poly_to_coeff_list(const Poly& f) {
    std::string out = "[";
    for (int i = 0; i <= std::max(f.degree(), 0); ++i) {
        if (i) out += ",";
        out += element_to_string(f.coeff(i));
    }
    return out + "]";
}

Poly parse_poly_coeff_list(const std::string& text, const FieldPtr& f) {
    Lexer lx{text};
    ExprParser p{lx, f};
    lx.expect('[');
    std::vector<FieldElement> cs;
    if (!lx.accept(']')) {
        cs.push_back(p.expr());
        while (lx.accept(',')) cs.push_back(p.expr());
        lx.expect(']');
    }
    if (!lx.eof()) parse_fail(lx.pos, "end of input");
    return Poly(f, std::move(cs));
}

std::string field_to_string(const Field& f) { return f.description(); }

FieldPtr parse_field(const std::string& text) {
    Lexer lx{text};
    if (lx.accept_word("q")) {
        lx.expect(':');
        if (lx.integer() != 0) parse_fail(lx.pos, "q:0 for the rationals");
        if (!lx.eof()) parse_fail(lx.pos, "end of input");
        return Field::rationals();
    }
    int64_t p = lx.integer();
    int64_t k = 1;
    if (lx.accept('^')) k = lx.integer();
    if (k < 1) parse_fail(lx.pos, "positive extension degree");
    bool fraction = false;
    std::string var = "t";
    if (lx.accept('(')) {
        Lexer& l = lx;
        size_t start = l.pos;
        while (l.pos < l.s.size() && l.s[l.pos] != ')') ++l.pos;
        var = l.s.substr(start, l.pos - start);
        lx.expect(')');
        fraction = true;
        if (var.empty()) parse_fail(lx.pos, "variable name");
    }
    std::optional<std::vector<int64_t>> modulus;
    if (lx.accept_word("modulus")) {
        lx.expect('=');
        lx.expect('[');
        std::vector<int64_t> cs;
        cs.push_back(lx.integer());
        while (lx.accept(',')) cs.push_back(lx.integer());
        lx.expect(']');
        modulus = std::move(cs);
    }
    if (!lx.eof()) parse_fail(lx.pos, "end of input");
    FieldPtr base = (k == 1 && !modulus) ? Field::prime(p) : Field::extension(p, (int)k, modulus);
    return fraction ? Field::rational_function(base, var) : base;
}

std::string map_to_spec(const RationalMap& m) {
    return "field: " + m.field()->description() + "; num=" + poly_to_coeff_list(m.num()) +
           "; den=" + poly_to_coeff_list(m.den());
}

RationalMap parse_map_spec(const std::string& text, const Budget& budget) {
    // semicolon-separated clauses: field: ...; num=[...]; den=[...]
    std::string field_part, num_part, den_part;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(';', start);
        std::string clause = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        size_t a = clause.find_first_not_of(" \t\n");
        if (a != std::string::npos) {
            clause = clause.substr(a);
            if (clause.rfind("field:", 0) == 0) field_part = clause.substr(6);
            else if (clause.rfind("num=", 0) == 0) num_part = clause.substr(4);
            else if (clause.rfind("den=", 0) == 0) den_part = clause.substr(4);
            else throw Error(Err::Parse, "unknown map spec clause: " + clause);
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (field_part.empty() || num_part.empty() || den_part.empty())
        throw Error(Err::Parse, "map spec needs field, num and den clauses");
    FieldPtr f = parse_field(field_part);
    Poly num = parse_poly_coeff_list(num_part, f);
    Poly den = parse_poly_coeff_list(den_part, f);
    return RationalMap::make(std::move(num), std::move(den), budget);
}

std::string place_to_string(const Place& v) { return v.description(); }

Place parse_place(const std::string& text) {
    Lexer lx{text};
    if (lx.accept_word("prime")) {
        lx.expect(':');
        int64_t p = lx.integer();
        if (!lx.eof()) parse_fail(lx.pos, "end of input");
        return Place::rational_prime(p);
    }
    if (!lx.accept_word("place")) parse_fail(lx.pos, "'prime:' or 'place:'");
    lx.expect(':');
    size_t pi_start = lx.pos;
    size_t over = text.find(" over ", pi_start);
    if (over == std::string::npos) parse_fail(text.size(), "' over <field>'");
    std::string pi_text = text.substr(pi_start, over - pi_start);
    FieldPtr f = parse_field(text.substr(over + 6));
    if (!f->is_fraction_field()) f = Field::rational_function(f);
    {
        Lexer plx{pi_text};
        if (plx.accept_word("inf")) {
            if (plx.eof()) return Place::infinite(f);
        }
    }
    FieldElement pi = parse_element(pi_text, f);
    if (ff_den(pi).degree() != 0)
        throw Error(Err::Parse, "place polynomial must not have a denominator");
    return Place::finite_poly(f, ff_num(pi).monic());
}

std::string point_to_string(const ProjPoint& p) {
    if (p.is_infinity()) return "inf";
    return element_to_string(p.x);
}

ProjPoint parse_point(const std::string& text, const FieldPtr& f) {
    Lexer lx{text};
    if (lx.accept_word("inf")) {
        if (!lx.eof()) parse_fail(lx.pos, "end of input");
        return ProjPoint::infinity(f);
    }
    return ProjPoint::affine(parse_element(text, f));
}

LattesSpec parse_lattes_spec(const std::string& text) {
    Lexer lx{text};
    if (!lx.accept_word("lattes")) parse_fail(lx.pos, "'lattes'");
    size_t over = text.find(" over ", lx.pos);
    if (over == std::string::npos) parse_fail(text.size(), "' over <field>'");
    FieldPtr f = parse_field(text.substr(over + 6));
    std::string head = text.substr(0, over);
    Lexer hx{head};
    hx.pos = lx.pos;
    LattesSpec spec{f->zero(), f->zero(), 2, f};
    bool have_a = false, have_b = false;
    while (!hx.eof()) {
        if (hx.accept_word("A")) {
            hx.expect('=');
            size_t s = hx.pos;
            while (hx.pos < head.size() && !std::isspace((unsigned char)head[hx.pos])) ++hx.pos;
            spec.a = parse_element(head.substr(s, hx.pos - s), f);
            have_a = true;
        } else if (hx.accept_word("B")) {
            hx.expect('=');
            size_t s = hx.pos;
            while (hx.pos < head.size() && !std::isspace((unsigned char)head[hx.pos])) ++hx.pos;
            spec.b = parse_element(head.substr(s, hx.pos - s), f);
            have_b = true;
        } else if (hx.accept_word("m")) {
            hx.expect('=');
            spec.m = (int)hx.integer();
        } else {
            parse_fail(hx.pos, "A=, B= or m=");
        }
    }
    if (!have_a || !have_b) throw Error(Err::Parse, "lattes spec needs A= and B=");
    return spec;
}

} // namespace multspec
