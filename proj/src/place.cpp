#include "place.hpp"

#include <algorithm>

#include "textio.hpp"

namespace multspec {

Place Place::rational_prime(int64_t p) {
    if (!is_prime_int64(p)) throw Error(Err::NotPrime, "place prime must be prime");
    Place v;
    v.kind_ = Kind::RationalPrime;
    v.prime_ = p;
    return v;
}

Place Place::finite_poly(FieldPtr func_field, Poly pi) {
    if (!func_field || !func_field->is_fraction_field() ||
        !func_field->constant_field()->is_finite())
        throw Error(Err::PlaceMismatch, "finite places live on function fields over finite fields");
    require_same_field(*pi.field(), *func_field->constant_field(), "place polynomial");
    if (pi.degree() < 1) throw Error(Err::PlaceMismatch, "place polynomial must be non-constant");
    pi = pi.monic();
    if (!poly_is_irreducible(pi))
        throw Error(Err::PlaceMismatch, "place polynomial must be irreducible");
    Place v;
    v.kind_ = Kind::FinitePoly;
    v.func_field_ = std::move(func_field);
    v.pi_ = std::move(pi);
    return v;
}

Place Place::infinite(FieldPtr func_field) {
    if (!func_field || !func_field->is_fraction_field() ||
        !func_field->constant_field()->is_finite())
        throw Error(Err::PlaceMismatch, "the infinite place lives on a function field");
    Place v;
    v.kind_ = Kind::Infinite;
    v.func_field_ = std::move(func_field);
    return v;
}

int64_t Place::residue_characteristic() const {
    return kind_ == Kind::RationalPrime ? prime_ : func_field_->characteristic();
}

FieldPtr Place::residue_field(const Budget& budget) const {
    switch (kind_) {
        case Kind::RationalPrime: return Field::canonical_finite(prime_, 1);
        case Kind::Infinite: return func_field_->constant_field();
        case Kind::FinitePoly: {
            const FieldPtr& k0 = func_field_->constant_field();
            if (pi_.degree() == 1) return k0;
            FieldPtr res = Field::canonical_finite(k0->p(), k0->ext_degree() * pi_.degree());
            auto size = res->finite_size();
            if (!size || *size > budget.enumeration)
                throw Error(Err::FieldTooLarge, "residue field exceeds enumeration budget");
            return res;
        }
    }
    throw Error(Err::Internal, "bad place kind");
}

std::string Place::description() const {
    switch (kind_) {
        case Kind::RationalPrime: return "prime:" + std::to_string(prime_);
        case Kind::Infinite:
            return "place:inf over " + func_field_->constant_field()->description();
        case Kind::FinitePoly:
            return "place:" + poly_in_var(pi_, func_field_->var()) + " over " +
                   func_field_->constant_field()->description();
    }
    return "?";
}

namespace {

int64_t int_ord(Int n, const Int& p) {
    if (n == 0) throw Error(Err::Internal, "valuation of integer zero");
    if (n < 0) n = -n;
    int64_t v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

int64_t poly_ord(const Poly& f, const Poly& pi) {
    // multiplicity of pi in f, f nonzero
    int64_t v = 0;
    Poly g = f;
    while (true) {
        auto [q, r] = poly_divrem(g, pi);
        if (!r.is_zero()) return v;
        g = q;
        ++v;
        if (g.is_zero()) throw Error(Err::Internal, "poly_ord ran past zero");
    }
}

} // namespace

Val place_valuation(const FieldElement& x, const Place& v) {
    switch (v.kind()) {
        case Place::Kind::RationalPrime: {
            if (!x.field()->is_rationals())
                throw Error(Err::PlaceMismatch, "rational prime place needs an element of Q");
            if (x.is_zero()) return Val{true, 0};
            const Rat& r = x.rat();
            Int p(v.prime());
            return Val{false, int_ord(boost::multiprecision::numerator(r), p) -
                                  int_ord(boost::multiprecision::denominator(r), p)};
        }
        case Place::Kind::FinitePoly: {
            if (!x.field()->same(*v.func_field()))
                throw Error(Err::PlaceMismatch, "element not in the place's function field");
            if (x.is_zero()) return Val{true, 0};
            const RatFunc& rf = x.ratfunc();
            return Val{false, poly_ord(rf.num, v.pi()) - poly_ord(rf.den, v.pi())};
        }
        case Place::Kind::Infinite: {
            if (!x.field()->same(*v.func_field()))
                throw Error(Err::PlaceMismatch, "element not in the place's function field");
            if (x.is_zero()) return Val{true, 0};
            const RatFunc& rf = x.ratfunc();
            return Val{false, (int64_t)rf.den.degree() - (int64_t)rf.num.degree()};
        }
    }
    throw Error(Err::Internal, "bad place kind");
}

NewtonPolygon newton_polygon(const Poly& f, const Place& v) {
    if (f.is_zero()) throw Error(Err::Internal, "newton polygon of the zero polynomial");
    NewtonPolygon np;
    for (int i = 0; i <= f.degree(); ++i) {
        const FieldElement& c = f[(size_t)i];
        if (c.is_zero()) continue;
        Val val = place_valuation(c, v);
        np.points.emplace_back((int64_t)i, val.v);
    }
    np.ord0 = np.points.front().first;
    // lower convex hull, indices ascending
    std::vector<std::pair<int64_t, int64_t>>& h = np.vertices;
    for (const auto& pt : np.points) {
        while (h.size() >= 2) {
            const auto& a = h[h.size() - 2];
            const auto& b = h[h.size() - 1];
            // pop b when it lies on or above the segment a -> pt
            __int128 lhs = ( __int128)(b.second - a.second) * (pt.first - a.first);
            __int128 rhs = ( __int128)(pt.second - a.second) * (b.first - a.first);
            if (lhs >= rhs) h.pop_back();
            else break;
        }
        h.push_back(pt);
    }
    for (size_t i = 0; i + 1 < h.size(); ++i) {
        Rat slope = Rat(h[i + 1].second - h[i].second) / Rat(h[i + 1].first - h[i].first);
        np.segments.push_back(NewtonPolygon::Segment{slope, h[i + 1].first - h[i].first});
    }
    return np;
}

bool newton_polygon_selftest() {
    // x - p over Q at p = 2: one segment of slope -1, root valuation +1
    auto Q = Field::rationals();
    Poly f(Q, {Q->from_int(-2), Q->one()});
    NewtonPolygon np = newton_polygon(f, Place::rational_prime(2));
    if (np.segments.size() != 1 || np.segments[0].slope != Rat(-1) || np.segments[0].length != 1)
        return false;
    // x - t over GF(5)(t) at (t)
    auto K = Field::rational_function(Field::prime(5));
    Poly t_pi = Poly::x(K->constant_field());
    FieldElement t = ratfunc_from(K, t_pi, Poly::constant(K->constant_field()->one()));
    Poly g(K, {-t, K->one()});
    NewtonPolygon np2 = newton_polygon(g, Place::finite_poly(K, t_pi));
    return np2.segments.size() == 1 && np2.segments[0].slope == Rat(-1) && np2.segments[0].length == 1;
}

SpectrumClassification classify_spectrum(const Poly& mpoly, const Place& v) {
    if (mpoly.is_zero()) throw Error(Err::Internal, "classify of zero polynomial");
    SpectrumClassification out;
    NewtonPolygon np = newton_polygon(mpoly, v);
    out.superattracting = np.ord0;
    out.attracting = np.ord0;
    for (const auto& seg : np.segments) {
        Rat rootval = -seg.slope;
        out.by_valuation.emplace_back(rootval, seg.length);
        if (rootval > 0) out.attracting += seg.length;
        else if (rootval == 0) out.indifferent += seg.length;
        else out.repelling += seg.length;
    }
    return out;
}

namespace {

FieldElement uniformizer_power(const Place& v, int64_t e) {
    switch (v.kind()) {
        case Place::Kind::RationalPrime: {
            auto Q = Field::rationals();
            return Q->from_rat(Rat(Int(v.prime()))).pow(Int(e));
        }
        case Place::Kind::FinitePoly: {
            const FieldPtr& K = v.func_field();
            FieldElement pi = ratfunc_from(K, v.pi(), Poly::constant(v.pi().field()->one()));
            return pi.pow(Int(e));
        }
        case Place::Kind::Infinite: {
            const FieldPtr& K = v.func_field();
            FieldElement t = ratfunc_from(K, Poly::x(K->constant_field()),
                                          Poly::constant(K->constant_field()->one()));
            return t.pow(Int(-e));
        }
    }
    throw Error(Err::Internal, "bad place kind");
}

// residue of an element with v(x) >= 0
FieldElement reduce_element(const FieldElement& x, const Place& v, const FieldPtr& res,
                            const FieldElement& pi_root, const Budget& budget) {
    switch (v.kind()) {
        case Place::Kind::RationalPrime: {
            if (x.is_zero()) return res->zero();
            const Rat& r = x.rat();
            Int p(v.prime());
            FieldElement num = res->from_int((int64_t)(boost::multiprecision::numerator(r) % p));
            FieldElement den = res->from_int((int64_t)(boost::multiprecision::denominator(r) % p));
            return num / den;
        }
        case Place::Kind::FinitePoly: {
            if (x.is_zero()) return res->zero();
            const RatFunc& rf = x.ratfunc();
            Poly num = poly_map_coeffs(rf.num, res, budget);
            Poly den = poly_map_coeffs(rf.den, res, budget);
            return num.eval(pi_root) / den.eval(pi_root);
        }
        case Place::Kind::Infinite: {
            if (x.is_zero()) return res->zero();
            const RatFunc& rf = x.ratfunc();
            int64_t val = (int64_t)rf.den.degree() - (int64_t)rf.num.degree();
            if (val > 0) return res->zero();
            if (val < 0) throw Error(Err::Internal, "reduce of non-integral element");
            return embed(rf.num.lc(), res, budget) / embed(rf.den.lc(), res, budget);
        }
    }
    throw Error(Err::Internal, "bad place kind");
}

FieldElement find_pi_root(const Place& v, const FieldPtr& res, const Budget& budget) {
    if (v.kind() != Place::Kind::FinitePoly) return res->zero();
    if (v.pi().degree() == 1) return -v.pi().coeff(0);
    Poly pi_res = poly_map_coeffs(v.pi(), res, budget);
    auto size = res->finite_size();
    if (!size || *size > budget.enumeration)
        throw Error(Err::FieldTooLarge, "residue field scan exceeds enumeration budget");
    for (uint64_t i = 0; i < *size; ++i) {
        FieldElement cand = res->element_from_index(i);
        if (pi_res.eval(cand).is_zero()) return cand;
    }
    throw Error(Err::Internal, "irreducible place polynomial has no root in its residue field");
}

} // namespace

std::optional<RationalMap> ReducedMap::as_map() const {
    if (degree < 2 || num.is_zero() || den.is_zero()) return std::nullopt;
    return RationalMap::make(num, den);
}

ReducedMap reduce_at_place(const RationalMap& m, const Place& v, const Budget& budget) {
    const FieldPtr& K = m.field();
    bool ok = (v.kind() == Place::Kind::RationalPrime && K->is_rationals()) ||
              (v.kind() != Place::Kind::RationalPrime && K->same(*v.func_field()));
    if (!ok) throw Error(Err::PlaceMismatch, "map field does not match the place");
    // scale so every coefficient is integral and at least one is a unit
    int64_t minv = 0;
    bool seen = false;
    auto scan = [&](const Poly& f) {
        for (int i = 0; i <= f.degree(); ++i) {
            if (f[(size_t)i].is_zero()) continue;
            Val val = place_valuation(f[(size_t)i], v);
            if (!seen || val.v < minv) { minv = val.v; seen = true; }
        }
    };
    scan(m.num());
    scan(m.den());
    if (!seen) throw Error(Err::Internal, "map with no nonzero coefficients");
    FieldElement scale = uniformizer_power(v, -minv);
    Poly num = m.num().scale(scale);
    Poly den = m.den().scale(scale);

    FieldPtr res = v.residue_field(budget);
    FieldElement pi_root = find_pi_root(v, res, budget);
    auto reduce_poly = [&](const Poly& f) {
        std::vector<FieldElement> cs;
        cs.reserve((size_t)f.degree() + 1);
        for (int i = 0; i <= f.degree(); ++i)
            cs.push_back(reduce_element(f[(size_t)i], v, res, pi_root, budget));
        return Poly(res, std::move(cs));
    };
    Poly rnum = reduce_poly(num);
    Poly rden = reduce_poly(den);

    ReducedMap out;
    out.residue_field = res;
    out.original_degree = m.degree();
    // clear the common factor (including the implicit power of Z)
    if (rnum.is_zero() || rden.is_zero()) {
        out.num = rnum.is_zero() ? Poly(res) : Poly::constant(res->one());
        out.den = rden.is_zero() ? Poly(res) : Poly::constant(res->one());
        out.degree = 0;
        out.dropped = true;
        return out;
    }
    Poly g = poly_gcd(rnum, rden);
    if (g.degree() > 0) {
        rnum = poly_exact_div(rnum, g);
        rden = poly_exact_div(rden, g);
    }
    out.degree = std::max(rnum.degree(), rden.degree());
    out.dropped = out.degree < m.degree();
    // canonical scaling as for maps (leading-first)
    FieldElement first = rnum.lc();
    FieldElement inv = first.inverse();
    out.num = rnum.scale(inv);
    out.den = rden.scale(inv);
    return out;
}

int64_t local_degree_at(const RationalMap& m, const ProjPoint& c, const Budget& budget) {
    require_same_field(*m.field(), *c.x.field(), "local degree");
    ProjPoint image = map_evaluate(m, c);
    if (c.is_infinity() || image.is_infinity()) {
        // conjugate both the point and its image to finite position
        const FieldPtr& k = m.field();
        auto size = k->finite_size();
        uint64_t limit = size ? *size : 16;
        for (uint64_t i = 0; i < limit; ++i) {
            FieldElement s = k->is_finite() ? k->element_from_index(i) : k->from_int((int64_t)i);
            ProjPoint ps = ProjPoint::affine(s);
            if (ps == c || ps == image) continue;
            MobiusTransform b = MobiusTransform::inversion_at(s);
            return local_degree_at(map_conjugate(m, b), b.apply(c), budget);
        }
        throw Error(Err::ConjugationSearchFailed, "no conjugation moves the point off infinity");
    }
    // ord_{z=c} of f(z) g(c) - f(c) g(z)
    FieldElement gc = m.den().eval(c.x);
    FieldElement fc = m.num().eval(c.x);
    Poly h = m.num().scale(gc) - m.den().scale(fc);
    if (h.is_zero()) throw Error(Err::Internal, "local degree of a constant map");
    Poly lin(m.field(), {-c.x, m.field()->one()});
    int64_t e = 0;
    Poly g = h;
    while (true) {
        auto [q, r] = poly_divrem(g, lin);
        if (!r.is_zero()) break;
        g = q;
        ++e;
        if (g.is_zero()) break;
    }
    return e;
}

TameResult tame_check(const RationalMap& m, const Place& v, int max_ext, const Budget& budget) {
    int64_t p = v.residue_characteristic();
    if ((int64_t)m.degree() < p)
        return TameResult{TameResult::Kind::TameByDegree, "deg map < residue characteristic",
                          std::nullopt};
    ReducedMap red = reduce_at_place(m, v, budget);
    Poly w = red.num.derivative() * red.den - red.num * red.den.derivative();
    if (w.is_zero()) {
        // inseparable reduction; probe canonical points for a wild local degree
        // as a witness when the reduced pair still defines a map
        std::optional<std::pair<std::string, int64_t>> witness;
        if (auto mm = red.as_map()) {
            const FieldPtr& res = red.residue_field;
            uint64_t probe = std::min<uint64_t>(res->finite_size().value_or(0), 8);
            for (uint64_t i = 0; i < probe && !witness; ++i) {
                FieldElement c = res->element_from_index(i);
                int64_t e = local_degree_at(*mm, ProjPoint::affine(c), budget);
                if (e > 1 && e % p == 0) witness = {element_to_string(c), e};
            }
            if (!witness) {
                int64_t e = local_degree_at(*mm, ProjPoint::infinity(res), budget);
                if (e % p == 0) witness = {"inf", e};
            }
        }
        return TameResult{TameResult::Kind::Wild, "reduction is inseparable", witness};
    }
    if (red.degree == 0)
        return TameResult{TameResult::Kind::Wild, "reduction degenerates to a constant", std::nullopt};
    if (red.degree < 2) {
        // a Moebius reduction is unramified
        return TameResult{TameResult::Kind::Tame, "reduction has degree 1", std::nullopt};
    }
    RationalMap rm = *red.as_map();
    CriticalSet crit = critical_points(rm, max_ext, budget);
    int total = 0;
    for (const CriticalPoint& c : crit.points) total += c.multiplicity;
    if (total < 2 * red.degree - 2)
        throw Error(Err::FieldTooLarge,
                    "critical points of the reduction not all found within max_ext");
    int64_t sum_em1 = 0;
    for (const CriticalPoint& c : crit.points) {
        RationalMap mm = rm.field()->same(*c.pt.x.field()) ? rm
                                                           : map_base_change(rm, c.pt.x.field(), budget);
        int64_t e = local_degree_at(mm, c.pt, budget);
        if (e % p == 0)
            return TameResult{TameResult::Kind::Wild, "critical point with p | local degree",
                              std::make_pair(point_to_string(c.pt), e)};
        sum_em1 += e - 1;
    }
    if (sum_em1 < 2 * red.degree - 2)
        return TameResult{TameResult::Kind::Wild,
                          "ramification defect: sum of (e_c - 1) below 2d - 2", std::nullopt};
    return TameResult{TameResult::Kind::Tame, "given integral model", std::nullopt};
}

} // namespace multspec
