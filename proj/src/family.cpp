#include "family.hpp"

#include <numeric>

namespace multspec {

RationalMap specialize(const RationalMap& fam, const FieldElement& c, const Budget& budget) {
    const FieldPtr& K = fam.field();
    if (!K->is_fraction_field())
        throw Error(Err::BadSpecialization, "specialization needs a family over a function field");
    auto eval_poly = [&](const Poly& f) {
        std::vector<FieldElement> cs;
        cs.reserve((size_t)f.degree() + 1);
        for (int i = 0; i <= f.degree(); ++i) {
            if (f[(size_t)i].is_zero()) cs.push_back(c.field()->zero());
            else cs.push_back(ff_eval(f[(size_t)i], c, budget));
        }
        return Poly(c.field(), std::move(cs));
    };
    Poly num, den;
    try {
        num = eval_poly(fam.num());
        den = eval_poly(fam.den());
    } catch (const Error& e) {
        throw Error(Err::BadSpecialization, std::string("coefficient pole at the parameter: ") + e.what());
    }
    RationalMap m = [&] {
        try {
            return RationalMap::make(std::move(num), std::move(den), budget);
        } catch (const Error& e) {
            throw Error(Err::BadSpecialization, std::string("degenerate specialization: ") + e.what());
        }
    }();
    if (m.degree() != fam.degree())
        throw Error(Err::BadSpecialization, "specialization drops the degree");
    return m;
}

IsoReport isospectral_check(const RationalMap& fam, int N, const Budget& budget) {
    if (!fam.field()->is_fraction_field())
        throw Error(Err::Unsupported, "isospectral check needs a family over a function field");
    IsoReport rep;
    rep.isospectral = true;
    for (int n = 1; n <= N; ++n) {
        MultiplierData md = multiplier_spectrum(fam, n, budget);
        if (rep.isospectral) {
            for (size_t i = 0; i < md.lambda.size(); ++i) {
                if (!ff_is_constant(md.lambda[i])) {
                    rep.isospectral = false;
                    rep.witness_n = n;
                    rep.witness_sigma = (int)i + 1;
                    break;
                }
            }
        }
        rep.spectra.push_back(std::move(md));
    }
    return rep;
}

RationalMap counterexample_family(const Poly& psi, const FieldElement& a, const Budget& budget) {
    const FieldPtr& K = psi.field();
    if (!K->is_fraction_field() || !K->constant_field()->is_finite())
        throw Error(Err::Unsupported, "the counterexample family lives over GF(q)(t)");
    int64_t p = K->characteristic();
    require_same_field(*K, *a.field(), "counterexample family");
    if (a.is_zero() || !ff_is_constant(a))
        throw Error(Err::DegenerateMap, "a must be a nonzero constant");
    if (psi.degree() < 1) throw Error(Err::DegenerateMap, "psi must be non-constant");
    // phi(z) = psi(z^p) + a z
    std::vector<FieldElement> cs((size_t)(psi.degree() * p) + 1, K->zero());
    for (int j = 0; j <= psi.degree(); ++j)
        cs[(size_t)(j * p)] = psi[(size_t)j];
    cs[1] = cs[1] + a;
    return RationalMap::make(Poly(K, std::move(cs)), Poly::constant(K->one()), budget);
}

EllipticCurve EllipticCurve::make(const FieldElement& a, const FieldElement& b) {
    require_same_field(*a.field(), *b.field(), "elliptic curve");
    int64_t p = a.field()->characteristic();
    if (p == 2 || p == 3)
        throw Error(Err::Unsupported, "short Weierstrass curves need characteristic != 2, 3");
    EllipticCurve e{a, b};
    if (e.discriminant().is_zero()) throw Error(Err::SingularCurve, "4a^3 + 27b^2 = 0");
    return e;
}

FieldElement EllipticCurve::discriminant() const {
    const FieldPtr& f = a.field();
    return f->from_int(4) * a * a * a + f->from_int(27) * b * b;
}

FieldElement EllipticCurve::j_invariant() const {
    const FieldPtr& f = a.field();
    return f->from_int(1728) * f->from_int(4) * a * a * a / discriminant();
}

RationalMap lattes_from_curve(const EllipticCurve& e, int m, const Budget& budget) {
    if (m != 2)
        throw Error(Err::Unsupported, "only multiplication by 2 is supported");
    const FieldPtr& f = e.a.field();
    const FieldElement &A = e.a, &B = e.b;
    // x(2P) = (x^4 - 2A x^2 - 8B x + A^2) / (4x^3 + 4A x + 4B)
    Poly num(f, {A * A, f->from_int(-8) * B, f->from_int(-2) * A, f->zero(), f->one()});
    Poly den(f, {f->from_int(4) * B, f->from_int(4) * A, f->zero(), f->from_int(4)});
    return RationalMap::make(std::move(num), std::move(den), budget);
}

LattesProbeReport lattes_isospectral_probe(const FieldElement& a, const FieldElement& b, int N,
                                           const Budget& budget) {
    const FieldPtr& K = a.field();
    if (!K->is_fraction_field())
        throw Error(Err::Unsupported, "the probe expects parameters in GF(q)(t)");
    EllipticCurve e = EllipticCurve::make(a, b);
    RationalMap map = lattes_from_curve(e, 2, budget);
    LattesProbeReport rep{isospectral_check(map, N, budget),
                          ff_is_constant(e.j_invariant()), true, map};
    for (const MultiplierData& md : rep.iso.spectra)
        for (const FieldElement& s : md.lambda)
            if (!ff_is_constant(s)) rep.lambda_in_constant_field = false;
    return rep;
}

TrivialityReport triviality_probe(const RationalMap& fam, const std::vector<FieldElement>& values,
                                  int max_ext, const Budget& budget) {
    if (values.size() < 2)
        throw Error(Err::Unsupported, "triviality probe needs at least two parameter values");
    // bring all specializations into one finite field
    int lcm_deg = 1;
    for (const FieldElement& c : values) {
        int d = c.field()->ext_degree();
        lcm_deg = (int)std::lcm((long long)lcm_deg, (long long)d);
    }
    int64_t p = fam.field()->characteristic();
    FieldPtr common = Field::canonical_finite(p, lcm_deg);
    std::vector<RationalMap> spec;
    spec.reserve(values.size());
    for (const FieldElement& c : values) {
        RationalMap s = specialize(fam, c, budget);
        spec.push_back(s.field()->same(*common) ? s : map_base_change(s, common, budget));
    }
    TrivialityReport rep;
    rep.all_conjugate = true;
    for (size_t i = 0; i < spec.size(); ++i)
        for (size_t j = i + 1; j < spec.size(); ++j) {
            auto w = conjugacy_test(spec[i], spec[j], max_ext, budget);
            rep.pairs.push_back(TrivialityReport::PairResult{values[i], values[j], w.has_value(), w});
            if (!w && rep.all_conjugate) {
                rep.all_conjugate = false;
                rep.distinct = std::make_pair(values[i], values[j]);
            }
        }
    return rep;
}

} // namespace multspec
