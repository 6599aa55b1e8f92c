#include "spectrum.hpp"

#include <algorithm>

#include "matrix.hpp"

namespace multspec {

HomogForm dynatomic(const RationalMap& m, int n, const Budget& budget) {
    if (n < 1) throw Error(Err::Internal, "dynatomic period must be >= 1");
    const FieldPtr& k = m.field();
    // P_k = Z F_k - X G_k for the k-th iterate, total degree d^k + 1
    Poly numer = Poly::constant(k->one());
    int numer_total = 0;
    Poly denom = Poly::constant(k->one());
    int denom_total = 0;
    RationalMap it = m;
    long long dk = m.degree();
    for (int kk = 1; kk <= n; ++kk) {
        if (kk > 1) {
            it = map_compose(m, it, budget);
            dk *= m.degree();
        }
        if (n % kk) continue;
        int mu = mobius_mu(n / kk);
        if (mu == 0) continue;
        Poly pk = it.num() - Poly::x(k) * it.den(); // univ part of Z F_k - X G_k
        if (pk.is_zero())
            throw Error(Err::Internal, "iterate equals the identity map");
        if (mu > 0) {
            numer = numer * pk;
            numer_total += (int)dk + 1;
        } else {
            denom = denom * pk;
            denom_total += (int)dk + 1;
        }
        if (numer.degree() > budget.max_poly_degree || denom.degree() > budget.max_poly_degree)
            throw Error(Err::BudgetExceeded, "dynatomic degree exceeds budget");
    }
    Poly univ = poly_exact_div(numer, denom);
    return HomogForm{std::move(univ), numer_total - denom_total};
}

FieldElement multiplier_at(const RationalMap& m, const ProjPoint& z, int n, const Budget& budget) {
    require_same_field(*m.field(), *z.x.field(), "multiplier_at");
    if (n < 1) throw Error(Err::Internal, "period must be >= 1");
    // orbit of z under m, n steps; also detects a pole passing through infinity
    std::vector<ProjPoint> orbit_pts{z};
    ProjPoint cur = z;
    for (int i = 0; i < n; ++i) {
        cur = map_evaluate(m, cur);
        orbit_pts.push_back(cur);
    }
    if (!(cur == z)) throw Error(Err::NotPeriodic, "point is not fixed by the n-th iterate");
    bool through_infinity = false;
    for (const ProjPoint& p : orbit_pts)
        if (p.is_infinity()) { through_infinity = true; break; }
    if (through_infinity) {
        // move the orbit off infinity: conjugate by z -> 1/(z - c) for the first
        // constant c outside the orbit
        const FieldPtr& k = m.field();
        auto candidate = [&](uint64_t idx) -> FieldElement {
            if (k->is_finite()) return k->element_from_index(idx);
            if (k->is_fraction_field() && k->constant_field()->is_finite())
                return ff_embed_constant(k, k->constant_field()->element_from_index(idx));
            return k->from_int((int64_t)idx);
        };
        uint64_t limit = 2 * (uint64_t)n + 4;
        if (k->is_finite()) limit = k->finite_size().value_or(limit);
        else if (k->is_fraction_field() && k->constant_field()->is_finite())
            limit = k->constant_field()->finite_size().value_or(limit);
        for (uint64_t idx = 0; idx < limit; ++idx) {
            FieldElement c = candidate(idx);
            ProjPoint pc = ProjPoint::affine(c);
            bool clash = false;
            for (const ProjPoint& p : orbit_pts)
                if (p == pc) { clash = true; break; }
            if (clash) continue;
            MobiusTransform t = MobiusTransform::inversion_at(c);
            return multiplier_at(map_conjugate(m, t), t.apply(z), n, budget);
        }
        throw Error(Err::ConjugationSearchFailed, "no basepoint avoids the orbit");
    }
    auto [wn, wd] = map_derivative_pair(m); // phi' = wn / wd
    FieldElement lambda = m.field()->one();
    for (int i = 0; i < n; ++i) {
        const FieldElement& x = orbit_pts[(size_t)i].x;
        FieldElement d = wd.eval(x);
        if (d.is_zero()) throw Error(Err::Internal, "unexpected pole along a finite orbit");
        lambda = lambda * (wn.eval(x) / d);
    }
    return lambda;
}

std::vector<FieldElement> signed_coefficients(const Poly& monic) {
    int K = monic.degree();
    std::vector<FieldElement> sigma;
    sigma.reserve((size_t)K);
    const FieldPtr& k = monic.field();
    FieldElement sign = k->one();
    for (int i = 1; i <= K; ++i) {
        sign = -sign;
        sigma.push_back(sign * monic.coeff(K - i));
    }
    return sigma;
}

namespace {

// multiplication-by-r operator on k[z]/(A), A monic of degree K
Poly charpoly_of_multiplication(const Poly& r, const Poly& A) {
    const FieldPtr& k = A.field();
    int K = A.degree();
    Mat mat(k, K, K);
    Poly cur = poly_divrem(r, A).second;
    for (int j = 0; j < K; ++j) {
        for (int i = 0; i < K; ++i) mat.at(i, j) = cur.coeff(i);
        if (j + 1 < K) cur = poly_divrem(cur.shift(1), A).second;
    }
    return charpoly(mat);
}

// M_fin for gcd(A, D) = 1 over a field with cheap division; nullopt when a
// finite dynatomic root is a pole of the iterate (fall back to conjugation)
std::optional<Poly> direct_finite_part(const Poly& A, const Poly& N, const Poly& D) {
    const FieldPtr& k = A.field();
    if (A.degree() <= 0) return Poly::constant(k->one());
    Poly Am = A.monic();
    if (poly_gcd(Am, D).degree() != 0) return std::nullopt;
    Poly r = poly_divrem(N * poly_inverse_mod(D, Am), Am).second;
    return charpoly_of_multiplication(r, Am);
}

// clear coefficient denominators: scale a polynomial over k0(t) so every
// coefficient has denominator 1
Poly ff_integralize(const Poly& f) {
    const FieldPtr& K = f.field();
    const FieldPtr& k0 = K->constant_field();
    Poly l = Poly::constant(k0->one());
    for (int i = 0; i <= f.degree(); ++i) {
        if (f[(size_t)i].is_zero()) continue;
        const Poly& d = ff_den(f[(size_t)i]);
        Poly g = poly_gcd(l, d);
        l = l * poly_exact_div(d, g);
    }
    if (l.degree() == 0) return f;
    FieldElement mult = ratfunc_from(K, l, Poly::constant(k0->one()));
    return f.scale(mult);
}

struct NodeSource {
    // distinct specialization values for t, all in one field kc
    FieldPtr kc;
    uint64_t count;
    FieldElement value(uint64_t idx) const {
        if (kc->is_rationals()) return kc->from_int((int64_t)idx);
        return kc->element_from_index(idx);
    }
};

// pick the smallest node field supporting `needed` distinct values
NodeSource make_node_source(const FieldPtr& k0, uint64_t needed, const Budget& budget) {
    if (k0->is_rationals()) return NodeSource{k0, needed};
    int base = k0->ext_degree();
    for (int j = 1;; ++j) {
        if ((uint64_t)base * (uint64_t)j > 62) break;
        FieldPtr kj = j == 1 ? k0 : Field::canonical_finite(k0->p(), base * j);
        auto size = kj->finite_size();
        if (!size) break;
        if (*size > budget.enumeration)
            throw Error(Err::BudgetExceeded, "interpolation node field exceeds enumeration budget");
        if (*size >= needed) return NodeSource{kj, *size};
    }
    throw Error(Err::BudgetExceeded, "no node field large enough for interpolation");
}

// Newton interpolation through (nodes[i], values[i]); returns the coefficient
// vector of the interpolating polynomial over the node field
Poly newton_interpolate(const FieldPtr& k, const std::vector<FieldElement>& nodes,
                        const std::vector<FieldElement>& values) {
    size_t n = nodes.size();
    std::vector<FieldElement> coef = values; // divided differences
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j]);
            if (i == j) break;
        }
    // Horner expansion of the Newton form into monomial coefficients
    Poly acc = Poly::constant(coef[n - 1]);
    for (size_t i = n - 1; i-- > 0;) {
        Poly lin(k, {-nodes[i], k->one()});
        acc = acc * lin + Poly::constant(coef[i]);
    }
    return acc;
}

// raw resultant Res_z(A, T D - N) at one specialization, as a polynomial in T:
// lcA^{e - deg D} * Res(A, D) * charpoly(mult by N/D on kc[z]/(A)); requires
// gcd(A, D) = 1
std::optional<Poly> raw_resultant_at_node(const Poly& A, const Poly& N, const Poly& D, int e) {
    const FieldPtr& kc = A.field();
    if (poly_gcd(A, D).degree() != 0) return std::nullopt;
    Poly Am = A.monic();
    Poly r = poly_divrem(N * poly_inverse_mod(D, Am), Am).second;
    Poly cp = charpoly_of_multiplication(r, Am);
    FieldElement rho = A.lc().pow(Int(e - D.degree())) * poly_resultant(A, D);
    return cp.scale(rho);
}

// finite part of the multiplier polynomial over a function field, by
// evaluation at t-nodes and Newton interpolation; rigorous Sylvester bound on
// the t-degree of the raw resultant. nullopt signals a genuine common factor
// of A and D (conjugation fallback).
std::optional<Poly> interpolated_finite_part(const Poly& A0, const Poly& N0, const Poly& D0,
                                             const Budget& budget) {
    const FieldPtr& K = A0.field();
    const FieldPtr& k0 = K->constant_field();
    if (A0.degree() <= 0) return Poly::constant(K->one());
    Poly A = ff_integralize(A0);
    // N and D must be scaled by the same unit to preserve N/D
    Poly ND_all = ff_integralize(Poly(K, [&] {
        std::vector<FieldElement> cs;
        for (int i = 0; i <= N0.degree(); ++i) cs.push_back(N0[(size_t)i]);
        for (int i = 0; i <= D0.degree(); ++i) cs.push_back(D0[(size_t)i]);
        return cs;
    }()));
    std::vector<FieldElement> nd(ND_all.coeffs());
    nd.resize((size_t)(N0.degree() + 1 + D0.degree() + 1), K->zero());
    Poly N(K, std::vector<FieldElement>(nd.begin(), nd.begin() + N0.degree() + 1));
    Poly D(K, std::vector<FieldElement>(nd.begin() + N0.degree() + 1, nd.end()));
    if (D.is_zero()) throw Error(Err::Internal, "zero derivative denominator");

    int kappa = A.degree();
    int eN = N.degree(), eD = D.degree();
    int e = std::max(eN, eD);
    int tA = ff_coeff_height(A), tB = std::max(ff_coeff_height(N), ff_coeff_height(D));
    long long bound = (long long)e * tA + (long long)kappa * tB;
    long long slack = (long long)tA + tB + bound + 16; // bad nodes: lc zeros and Res(A,D) zeros
    uint64_t needed = (uint64_t)bound + 1;
    NodeSource src = make_node_source(k0, needed + (uint64_t)slack, budget);
    const FieldPtr& kc = src.kc;

    // pre-embed the integral numerators once
    auto embed_coeffs = [&](const Poly& f) {
        std::vector<Poly> out;
        out.reserve((size_t)f.degree() + 1);
        for (int i = 0; i <= f.degree(); ++i) {
            if (f[(size_t)i].is_zero()) out.push_back(Poly(kc));
            else out.push_back(poly_map_coeffs(ff_num(f[(size_t)i]), kc, budget));
        }
        return out;
    };
    std::vector<Poly> An = embed_coeffs(A), Nn = embed_coeffs(N), Dn = embed_coeffs(D);
    auto specialize = [&](const std::vector<Poly>& nums, const FieldElement& c) {
        std::vector<FieldElement> vals;
        vals.reserve(nums.size());
        for (const Poly& u : nums) vals.push_back(u.is_zero() ? kc->zero() : u.eval(c));
        return Poly(kc, std::move(vals));
    };

    std::vector<FieldElement> nodes;
    std::vector<Poly> raws;
    uint64_t rejected_gcd = 0;
    for (uint64_t idx = 0; idx < src.count && nodes.size() < needed; ++idx) {
        FieldElement c = src.value(idx);
        Poly Ac = specialize(An, c);
        if (Ac.degree() != kappa) continue;
        Poly Nc = specialize(Nn, c);
        Poly Dc = specialize(Dn, c);
        if (Nc.degree() != eN || Dc.degree() != eD) continue;
        auto raw = raw_resultant_at_node(Ac, Nc, Dc, e);
        if (!raw) {
            if (++rejected_gcd > (uint64_t)slack) return std::nullopt;
            continue;
        }
        nodes.push_back(c);
        raws.push_back(std::move(*raw));
    }
    if (nodes.size() < needed) {
        if (rejected_gcd > 0) return std::nullopt; // A and D genuinely intersect
        throw Error(Err::BudgetExceeded, "not enough good interpolation nodes");
    }

    // interpolate each T-coefficient as a polynomial in t over kc, then pull
    // the coefficients back to the constant field
    std::vector<FieldElement> Mcoeffs((size_t)kappa + 1, K->zero());
    std::vector<Poly> interpolated((size_t)kappa + 1, Poly(kc));
    for (int i = 0; i <= kappa; ++i) {
        std::vector<FieldElement> values;
        values.reserve(nodes.size());
        for (const Poly& r : raws) values.push_back(r.coeff(i));
        interpolated[(size_t)i] = newton_interpolate(kc, nodes, values);
    }
    // leading T-coefficient of the raw resultant, as an element of K
    auto to_K = [&](const Poly& tpoly) {
        std::vector<FieldElement> cs;
        cs.reserve((size_t)tpoly.degree() + 1);
        for (int i = 0; i <= tpoly.degree(); ++i)
            cs.push_back(project_to_subfield(tpoly[(size_t)i], k0, budget));
        Poly num(k0, std::move(cs));
        return ratfunc_from(K, std::move(num), Poly::constant(k0->one()));
    };
    FieldElement lead = to_K(interpolated[(size_t)kappa]);
    if (lead.is_zero()) throw Error(Err::Internal, "raw resultant lost its leading coefficient");
    for (int i = 0; i <= kappa; ++i) Mcoeffs[(size_t)i] = to_K(interpolated[(size_t)i]) / lead;
    return Poly(K, std::move(Mcoeffs));
}

MultiplierData spectrum_impl(const RationalMap& m, int n, const Budget& budget, int depth) {
    const FieldPtr& k = m.field();
    HomogForm phi = dynatomic(m, n, budget);
    int inf_mult = phi.infinity_multiplicity();
    RationalMap itn = map_iterate(m, n, budget);
    Poly N = itn.num().derivative() * itn.den() - itn.num() * itn.den().derivative();
    Poly D = itn.den() * itn.den();

    std::optional<Poly> mfin;
    if (k->is_fraction_field())
        mfin = interpolated_finite_part(phi.univ, N, D, budget);
    else
        mfin = direct_finite_part(phi.univ, N, D);

    if (!mfin) {
        // a finite formal-period-n point is a pole of phi^n: move every
        // periodic point of period <= n away from infinity and restart
        if (depth > 0)
            throw Error(Err::ConjugationSearchFailed,
                        "periodic points still collide with infinity after conjugation");
        FieldElement c = nonperiodic_basepoint(m, n);
        RationalMap conj = map_conjugate(m, MobiusTransform::inversion_at(c));
        return spectrum_impl(conj, n, budget, depth + 1);
    }

    Poly M = *mfin;
    if (inf_mult > 0) {
        FieldElement lam_inf = multiplier_at(m, ProjPoint::infinity(k), n, budget);
        Poly lin(k, {-lam_inf, k->one()});
        M = M * lin.pow(inf_mult);
    }
    Int kn = dynatomic_degree(m.degree(), n);
    if (Int(M.degree()) != kn)
        throw Error(Err::Internal, "multiplier polynomial degree mismatch");
    MultiplierData out;
    out.n = n;
    out.Kn = (int)M.degree();
    out.lambda = signed_coefficients(M);
    out.M = std::move(M);
    return out;
}

} // namespace

MultiplierData multiplier_spectrum(const RationalMap& m, int n, const Budget& budget) {
    return spectrum_impl(m, n, budget, 0);
}

} // namespace multspec
