#include "rational_map.hpp"

#include <unordered_map>

namespace multspec {

namespace {
size_t hash_mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// one specialization node that preserves both leading coefficients, then a
// gcd there; sound for coprimality (common factors survive degree-preserving
// specialization). Falls back to an honest gcd when nodes keep failing.
bool pair_coprime(const Poly& f, const Poly& g, const Budget& budget) {
    const FieldPtr& K = f.field();
    if (!K->is_fraction_field())
        return poly_gcd(f, g).degree() == 0;
    const FieldPtr& k0 = K->constant_field();
    if (k0->is_finite()) {
        int tried = 0;
        for (int j = 1; j <= 3 && tried < 8; ++j) {
            FieldPtr kj = j == 1 ? k0 : Field::canonical_finite(k0->p(), k0->ext_degree() * j);
            auto size = kj->finite_size();
            if (!size || *size > budget.enumeration) break;
            for (uint64_t idx = 0; idx < *size && tried < 8; ++idx) {
                FieldElement c = kj->element_from_index(idx);
                Poly fc(kj), gc(kj);
                try {
                    std::vector<FieldElement> fv, gv;
                    for (int i = 0; i <= f.degree(); ++i) fv.push_back(ff_eval(f[(size_t)i], c, budget));
                    for (int i = 0; i <= g.degree(); ++i) gv.push_back(ff_eval(g[(size_t)i], c, budget));
                    fc = Poly(kj, std::move(fv));
                    gc = Poly(kj, std::move(gv));
                } catch (const Error&) {
                    continue; // pole of a coefficient; not a usable node
                }
                if (fc.degree() != f.degree() || gc.degree() != g.degree()) continue;
                ++tried;
                if (poly_gcd(fc, gc).degree() == 0) return true;
            }
        }
    }
    return poly_gcd(f, g).degree() == 0;
}
} // namespace

// --- ProjPoint ---------------------------------------------------------------

ProjPoint ProjPoint::normalized(const FieldElement& x, const FieldElement& z) {
    if (z.is_zero()) {
        if (x.is_zero()) throw Error(Err::Internal, "(0 : 0) is not a projective point");
        return infinity(x.field());
    }
    return ProjPoint{x / z, z.field()->one()};
}

size_t ProjPoint::hash() const {
    return hash_mix(x.hash(), z.hash());
}

// --- MobiusTransform ---------------------------------------------------------

MobiusTransform MobiusTransform::make(const FieldElement& a, const FieldElement& b,
                                      const FieldElement& c, const FieldElement& d) {
    FieldElement det = a * d - b * c;
    if (det.is_zero()) throw Error(Err::DegenerateMap, "singular Moebius transform");
    MobiusTransform m;
    m.a_ = a; m.b_ = b; m.c_ = c; m.d_ = d;
    const FieldElement* first = nullptr;
    for (const FieldElement* e : {&m.a_, &m.b_, &m.c_, &m.d_})
        if (!e->is_zero()) { first = e; break; }
    FieldElement inv = first->inverse();
    m.a_ = m.a_ * inv; m.b_ = m.b_ * inv; m.c_ = m.c_ * inv; m.d_ = m.d_ * inv;
    return m;
}

MobiusTransform MobiusTransform::identity(const FieldPtr& f) {
    return make(f->one(), f->zero(), f->zero(), f->one());
}

MobiusTransform MobiusTransform::inversion_at(const FieldElement& c) {
    const FieldPtr& f = c.field();
    // z -> 1/(z - c)
    return make(f->zero(), f->one(), f->one(), -c);
}

ProjPoint MobiusTransform::apply(const ProjPoint& p) const {
    return ProjPoint::normalized(a_ * p.x + b_ * p.z, c_ * p.x + d_ * p.z);
}

MobiusTransform MobiusTransform::inverse() const {
    return make(d_, -b_, -c_, a_);
}

bool MobiusTransform::operator==(const MobiusTransform& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

// --- RationalMap ---------------------------------------------------------------

namespace {
// first nonzero coefficient of F then G, leading-first, scaled to 1
void canonical_scale(Poly& num, Poly& den) {
    const FieldElement* first = nullptr;
    for (int i = num.degree(); i >= 0 && !first; --i)
        if (!num[(size_t)i].is_zero()) first = &num[(size_t)i];
    for (int i = den.degree(); i >= 0 && !first; --i)
        if (!den[(size_t)i].is_zero()) first = &den[(size_t)i];
    if (!first) throw Error(Err::Internal, "zero map pair");
    if (first->is_one()) return;
    FieldElement inv = first->inverse();
    num = num.scale(inv);
    den = den.scale(inv);
}
} // namespace

RationalMap RationalMap::make(Poly num, Poly den, const Budget& budget) {
    require_same_field(*num.field(), *den.field(), "map pair");
    if (num.is_zero() && den.is_zero()) throw Error(Err::DegenerateMap, "zero pair");
    int d = std::max(num.degree(), den.degree());
    if (d < 2) throw Error(Err::DegreeTooLow, "map degree must be at least 2");
    if (den.is_zero()) throw Error(Err::DegenerateMap, "zero denominator form");
    if (num.is_zero()) throw Error(Err::DegenerateMap, "zero numerator form");
    if (!pair_coprime(num, den, budget))
        throw Error(Err::DegenerateMap, "numerator and denominator share a factor");
    canonical_scale(num, den);
    RationalMap m;
    m.num_ = std::move(num);
    m.den_ = std::move(den);
    m.d_ = d;
    return m;
}

RationalMap RationalMap::from_validated(Poly num, Poly den, int degree) {
    canonical_scale(num, den);
    RationalMap m;
    m.num_ = std::move(num);
    m.den_ = std::move(den);
    m.d_ = degree;
    return m;
}

bool RationalMap::operator==(const RationalMap& o) const {
    return d_ == o.d_ && num_ == o.num_ && den_ == o.den_;
}

size_t RationalMap::hash() const {
    return hash_mix(hash_mix((size_t)d_, num_.hash()), den_.hash());
}

// --- evaluation ---------------------------------------------------------------

ProjPoint map_evaluate(const RationalMap& m, const ProjPoint& p) {
    require_same_field(*m.field(), *p.x.field(), "map evaluate");
    if (p.is_infinity()) {
        // leading homogeneous coefficients (X^d)
        return ProjPoint::normalized(m.num().coeff(m.degree()), m.den().coeff(m.degree()));
    }
    return ProjPoint::normalized(m.num().eval(p.x), m.den().eval(p.x));
}

namespace {
// substitute a homogeneous pair into a homogeneous form:
// given form coefficients via univ u (total degree D), produce
// sum_i u_i F^i G^{D-i} for the pair's dehomogenizations
Poly homog_subst(const Poly& u, int total, const Poly& f, const Poly& g) {
    const FieldPtr& k = f.field();
    std::vector<Poly> gpow;
    gpow.reserve((size_t)total + 1);
    gpow.push_back(Poly::constant(k->one()));
    for (int i = 1; i <= total; ++i) gpow.push_back(gpow.back() * g);
    Poly acc(k);
    Poly fpow = Poly::constant(k->one());
    for (int i = 0; i <= total; ++i) {
        if (i <= u.degree() && !u.coeff(i).is_zero())
            acc = acc + (fpow * gpow[(size_t)(total - i)]).scale(u.coeff(i));
        if (i < total) fpow = fpow * f;
    }
    return acc;
}

void check_coeff_budget(const Poly& f, const Budget& budget) {
    if (f.field()->is_fraction_field() && ff_coeff_height(f) > budget.max_coeff_degree)
        throw Error(Err::BudgetExceeded, "function-field coefficient degree exceeds budget");
}
} // namespace

RationalMap map_compose(const RationalMap& f, const RationalMap& g, const Budget& budget) {
    require_same_field(*f.field(), *g.field(), "map compose");
    long long dd = (long long)f.degree() * (long long)g.degree();
    if (dd > budget.max_poly_degree)
        throw Error(Err::BudgetExceeded, "iterate degree exceeds budget");
    Poly num = homog_subst(f.num(), f.degree(), g.num(), g.den());
    Poly den = homog_subst(f.den(), f.degree(), g.num(), g.den());
    check_coeff_budget(num, budget);
    check_coeff_budget(den, budget);
    if (!pair_coprime(num, den, budget))
        throw Error(Err::DegenerateMap, "composition degenerated");
    return RationalMap::from_validated(std::move(num), std::move(den), (int)dd);
}

RationalMap map_iterate(const RationalMap& m, int n, const Budget& budget) {
    if (n < 1) throw Error(Err::Internal, "iterate count must be >= 1");
    RationalMap r = m;
    for (int i = 1; i < n; ++i) r = map_compose(m, r, budget);
    return r;
}

Poly homog_linear_subst(const Poly& u, int total, const FieldElement& a, const FieldElement& b,
                        const FieldElement& c, const FieldElement& d) {
    const FieldPtr& k = u.field();
    Poly la(k, {b, a}); // aX + bZ dehomogenized: a x + b
    Poly lc(k, {d, c}); // cX + dZ dehomogenized: c x + d
    std::vector<Poly> lcpow;
    lcpow.reserve((size_t)total + 1);
    lcpow.push_back(Poly::constant(k->one()));
    for (int i = 1; i <= total; ++i) lcpow.push_back(lcpow.back() * lc);
    Poly acc(k);
    Poly lapow = Poly::constant(k->one());
    for (int i = 0; i <= total; ++i) {
        if (i <= u.degree() && !u.coeff(i).is_zero())
            acc = acc + (lapow * lcpow[(size_t)(total - i)]).scale(u.coeff(i));
        if (i < total) lapow = lapow * la;
    }
    return acc;
}

RationalMap map_conjugate(const RationalMap& m, const MobiusTransform& t) {
    require_same_field(*m.field(), *t.field(), "map conjugate");
    // A phi A^{-1}: substitute the adjugate of A into phi, then apply A
    const FieldElement &a = t.a(), &b = t.b(), &c = t.c(), &d = t.d();
    Poly fn = homog_linear_subst(m.num(), m.degree(), d, -b, -c, a);
    Poly gn = homog_linear_subst(m.den(), m.degree(), d, -b, -c, a);
    Poly num = fn.scale(a) + gn.scale(b);
    Poly den = fn.scale(c) + gn.scale(d);
    return RationalMap::from_validated(std::move(num), std::move(den), m.degree());
}

RationalMap map_base_change(const RationalMap& m, const FieldPtr& target, const Budget& budget) {
    if (m.field()->same(*target)) return m;
    Poly num = poly_map_coeffs(m.num(), target, budget);
    Poly den = poly_map_coeffs(m.den(), target, budget);
    return RationalMap::from_validated(std::move(num), std::move(den), m.degree());
}

std::pair<Poly, Poly> map_derivative_pair(const RationalMap& m) {
    const Poly& f = m.num();
    const Poly& g = m.den();
    return {f.derivative() * g - f * g.derivative(), g * g};
}

// --- critical points -----------------------------------------------------------

CriticalSet critical_points(const RationalMap& m, int max_ext, const Budget& budget) {
    const FieldPtr& k = m.field();
    Poly w = m.num().derivative() * m.den() - m.num() * m.den().derivative();
    if (w.is_zero()) throw Error(Err::InseparableMap, "inseparable map: Wronskian vanishes");
    int wtotal = 2 * m.degree() - 2;
    int inf_mult = wtotal - w.degree();
    CriticalSet out;
    if (k->is_finite()) {
        for (const RootRec& r : poly_roots_enum(w, max_ext, budget))
            out.points.push_back(CriticalPoint{ProjPoint::affine(r.value), r.multiplicity, r.ext_degree});
    } else if (k->is_fraction_field() && k->constant_field()->is_finite()) {
        ConstRoots cr = poly_constant_roots(w, max_ext, budget);
        for (const RootRec& r : cr.roots) {
            FieldPtr Kj = r.ext_degree == 1
                              ? k
                              : Field::rational_function(
                                    Field::canonical_finite(k->p(), k->constant_field()->ext_degree() * r.ext_degree),
                                    k->var());
            out.points.push_back(
                CriticalPoint{ProjPoint::affine(ff_embed_constant(Kj, r.value)), r.multiplicity, r.ext_degree});
        }
        out.unfactored_degree = cr.remaining_degree;
    } else {
        throw Error(Err::Unsupported, "critical point search needs a finite or function-field base");
    }
    if (inf_mult > 0)
        out.points.push_back(CriticalPoint{ProjPoint::infinity(k), inf_mult, 1});
    return out;
}

// --- orbits ---------------------------------------------------------------------

OrbitRec orbit(const RationalMap& m, const ProjPoint& start, int bound) {
    std::unordered_map<size_t, std::vector<std::pair<ProjPoint, int>>> seen;
    ProjPoint cur = start;
    int step = 0;
    while (step <= bound) {
        size_t h = cur.hash();
        auto& bucket = seen[h];
        for (const auto& [pt, idx] : bucket)
            if (pt == cur) return OrbitRec{true, idx, step - idx, step};
        bucket.emplace_back(cur, step);
        if (step == bound) break;
        cur = map_evaluate(m, cur);
        ++step;
    }
    return OrbitRec{false, 0, 0, step};
}

PcfReport pcf_check(const RationalMap& m, int bound, int max_ext, const Budget& budget) {
    CriticalSet crit = critical_points(m, max_ext, budget);
    if (crit.unfactored_degree > 0)
        throw Error(Err::FieldTooLarge,
                    "critical points not all located within the extension bound");
    PcfReport rep;
    rep.status = PcfReport::Status::PCF;
    for (const CriticalPoint& c : crit.points) {
        RationalMap mm = m.field()->same(*c.pt.x.field()) ? m : map_base_change(m, c.pt.x.field(), budget);
        OrbitRec o = orbit(mm, c.pt, bound);
        if (!o.closed) rep.status = PcfReport::Status::NotPCFWithinBound;
        rep.orbits.push_back(PcfReport::CriticalOrbit{c, o});
    }
    return rep;
}

// --- conjugacy ------------------------------------------------------------------

uint64_t pgl2_tuple_count(uint64_t q) { return q * q * q + q * q; }

std::optional<MobiusTransform> pgl2_from_index(const FieldPtr& f, uint64_t idx) {
    auto size = f->finite_size();
    if (!size) throw Error(Err::FieldTooLarge, "PGL2 enumeration needs a finite field");
    uint64_t q = *size;
    FieldElement a, b, c, d;
    if (idx < q * q * q) {
        a = f->one();
        b = f->element_from_index(idx / (q * q));
        c = f->element_from_index((idx / q) % q);
        d = f->element_from_index(idx % q);
    } else {
        idx -= q * q * q;
        a = f->zero();
        b = f->one();
        c = f->element_from_index(idx / q);
        d = f->element_from_index(idx % q);
    }
    if ((a * d - b * c).is_zero()) return std::nullopt;
    return MobiusTransform::make(a, b, c, d);
}

namespace {

// Point tables over P^1(GF(q)): indices 0..q-1 are the affine points in
// canonical element order, index q is infinity.
struct PointTable {
    FieldPtr k;
    uint64_t q;
    std::vector<FieldElement> elts;

    explicit PointTable(FieldPtr kk) : k(std::move(kk)), q(k->finite_size().value()) {
        elts.reserve(q);
        for (uint64_t i = 0; i < q; ++i) elts.push_back(k->element_from_index(i));
    }
    uint64_t index_of(const ProjPoint& p) const {
        return p.is_infinity() ? q : k->element_index(p.x);
    }
    ProjPoint point_of(uint64_t i) const {
        return i == q ? ProjPoint::infinity(k) : ProjPoint::affine(elts[i]);
    }
    std::vector<uint64_t> map_table(const RationalMap& m) const {
        std::vector<uint64_t> t(q + 1);
        for (uint64_t i = 0; i <= q; ++i) t[i] = index_of(map_evaluate(m, point_of(i)));
        return t;
    }
};

} // namespace

std::optional<ConjugacyWitness> conjugacy_test(const RationalMap& f, const RationalMap& g,
                                               int max_ext, const Budget& budget) {
    require_same_field(*f.field(), *g.field(), "conjugacy test");
    if (!f.field()->is_finite())
        throw Error(Err::Unsupported, "conjugacy search needs a finite base field");
    if (f.degree() != g.degree()) return std::nullopt;
    int base_deg = f.field()->ext_degree();
    for (int j = 1; j <= max_ext; ++j) {
        FieldPtr kj = j == 1 ? f.field() : Field::canonical_finite(f.field()->p(), base_deg * j);
        auto size = kj->finite_size();
        if (!size || pgl2_tuple_count(*size) > budget.enumeration)
            throw Error(Err::FieldTooLarge, "PGL2 search exceeds enumeration budget");
        RationalMap fj = map_base_change(f, kj, budget);
        RationalMap gj = map_base_change(g, kj, budget);
        uint64_t tuples = pgl2_tuple_count(*size);
        uint64_t q = *size;
        if (q >= 2 * (uint64_t)f.degree() + 1) {
            // maps of equal degree agreeing on more than 2d points coincide, so
            // a table check over all q+1 points is exact; candidates fail fast
            PointTable pts(kj);
            std::vector<uint64_t> tf = pts.map_table(fj), tg = pts.map_table(gj);
            FieldElement zero = kj->zero(), one = kj->one();
            for (uint64_t idx = 0; idx < tuples; ++idx) {
                bool unit_a = idx < q * q * q;
                uint64_t rest = unit_a ? idx : idx - q * q * q;
                FieldElement a = unit_a ? one : zero;
                FieldElement b = unit_a ? pts.elts[rest / (q * q)] : one;
                FieldElement c = pts.elts[(rest / q) % q];
                FieldElement d = pts.elts[rest % q];
                if ((a * d - b * c).is_zero()) continue;
                auto apply = [&](uint64_t i) -> uint64_t {
                    if (i == q) { // infinity -> (a : c)
                        return c.is_zero() ? q : pts.k->element_index(a / c);
                    }
                    const FieldElement& x = pts.elts[i];
                    FieldElement den = c * x + d;
                    if (den.is_zero()) return q;
                    return pts.k->element_index((a * x + b) / den);
                };
                bool ok = true;
                for (uint64_t i = 0; i <= q; ++i) {
                    if (apply(tf[i]) != tg[apply(i)]) { ok = false; break; }
                }
                if (!ok) continue;
                MobiusTransform t = MobiusTransform::make(a, b, c, d);
                if (map_conjugate(fj, t) == gj) return ConjugacyWitness{t, j};
            }
        } else {
            for (uint64_t idx = 0; idx < tuples; ++idx) {
                auto t = pgl2_from_index(kj, idx);
                if (!t) continue;
                if (map_conjugate(fj, *t) == gj) return ConjugacyWitness{*t, j};
            }
        }
    }
    return std::nullopt;
}

FieldElement nonperiodic_basepoint(const RationalMap& m, int n) {
    const FieldPtr& k = m.field();
    auto try_candidates = [&](const RationalMap& mm, uint64_t count,
                              auto make_elt) -> std::optional<FieldElement> {
        for (uint64_t idx = 0; idx < count; ++idx) {
            FieldElement c = make_elt(idx);
            ProjPoint start = ProjPoint::affine(c);
            ProjPoint cur = start;
            bool periodic = false;
            for (int i = 1; i <= n; ++i) {
                cur = map_evaluate(mm, cur);
                if (cur == start) { periodic = true; break; }
            }
            if (!periodic) return c;
        }
        return std::nullopt;
    };
    if (k->is_rationals()) {
        auto r = try_candidates(m, 4 * (uint64_t)n + 8,
                                [&](uint64_t i) { return k->from_int((int64_t)i); });
        if (r) return *r;
    } else if (k->is_finite()) {
        uint64_t q = k->finite_size().value_or(0);
        auto r = try_candidates(m, q, [&](uint64_t i) { return k->element_from_index(i); });
        if (r) return *r;
    } else if (k->is_fraction_field()) {
        const FieldPtr& k0 = k->constant_field();
        if (k0->is_finite()) {
            uint64_t q = k0->finite_size().value_or(0);
            auto r = try_candidates(m, q, [&](uint64_t i) {
                return ff_embed_constant(k, k0->element_from_index(i));
            });
            if (r) return *r;
        } else {
            auto r = try_candidates(m, 4 * (uint64_t)n + 8,
                                    [&](uint64_t i) { return k->from_int((int64_t)i); });
            if (r) return *r;
        }
    }
    throw Error(Err::ConjugationSearchFailed, "no non-periodic basepoint found");
}

} // namespace multspec
