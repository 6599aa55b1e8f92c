#include "rootfind.hpp"

namespace multspec {

RationalMap newton_map(const Poly& f, const Budget& budget) {
    if (f.degree() < 2)
        throw Error(Err::InseparablePolynomial, "Newton's method needs deg f >= 2");
    Poly fp = f.derivative();
    if (fp.is_zero() || poly_gcd(f, fp).degree() != 0)
        throw Error(Err::InseparablePolynomial, "polynomial is not separable");
    Poly num = Poly::x(f.field()) * fp - f;
    return RationalMap::make(std::move(num), std::move(fp), budget);
}

FixedPointSum fixed_point_sum_check(const RationalMap& m, const Budget& budget) {
    MultiplierData md = multiplier_spectrum(m, 1, budget);
    const FieldPtr& k = m.field();
    FieldElement one = k->one();
    FieldElement m1 = md.M.eval(one);
    if (m1.is_zero()) return FixedPointSum{FixedPointSum::Status::MultiplierOne, std::nullopt};
    FieldElement sum = md.M.derivative().eval(one) / m1;
    return FixedPointSum{sum == one ? FixedPointSum::Status::HoldsExactly
                                    : FixedPointSum::Status::Value,
                         sum};
}

ObstructionReport residue_obstruction(int64_t r, int64_t p, int64_t d) {
    if (r < 2) throw Error(Err::Unsupported, "polynomial degree r must be >= 2");
    if (d < 2) throw Error(Err::Unsupported, "algorithm degree d must be >= 2");
    if (p != 0 && !is_prime_int64(p)) throw Error(Err::NotPrime, "residue characteristic must be 0 or prime");
    ObstructionReport rep;
    rep.hypothesis = "assumes the r roots of f are attracting fixed points of T_f, "
                     "so each contributes 1/(1-lambda) = 1 mod m";
    rep.residue_branch_applies = (p == 0 || p >= r);
    bool divides = p != 0 && ((r - 1) % p == 0);
    rep.residue_obstructed = rep.residue_branch_applies && !divides;
    if (!rep.residue_branch_applies)
        rep.residue_detail = "branch needs p = 0 or p >= r";
    else if (rep.residue_obstructed)
        rep.residue_detail = p == 0 ? "r = 1 mod m impossible in residue characteristic 0"
                                    : std::to_string(p) + " does not divide r-1 = " + std::to_string(r - 1);
    else
        rep.residue_detail = "p divides r-1";
    rep.collapse_obstructed = p > d;
    rep.collapse_detail = rep.collapse_obstructed
                              ? "p > d forces the image family to be isospectral, hence constant"
                              : "branch needs p > d";
    rep.obstructed = rep.residue_obstructed || rep.collapse_obstructed;
    return rep;
}

namespace {

// v(f(z)) from v(z) = s when a unique monomial minimizes v(a_i) + i s
std::optional<int64_t> poly_val_at(const std::vector<std::optional<int64_t>>& coeff_vals,
                                   int64_t s) {
    bool have = false;
    int64_t best = 0;
    int count = 0;
    for (size_t i = 0; i < coeff_vals.size(); ++i) {
        if (!coeff_vals[i]) continue; // zero coefficient
        int64_t v = *coeff_vals[i] + (int64_t)i * s;
        if (!have || v < best) { best = v; have = true; count = 1; }
        else if (v == best) ++count;
    }
    if (!have) return std::nullopt; // zero polynomial: valuation infinite
    if (count != 1) return std::nullopt;
    return best;
}

} // namespace

std::vector<SeedTrajectory> convergence_probe(const RationalMap& m, const Place& v,
                                              const std::vector<int64_t>& seeds, int iters) {
    // joint scaling makes every coefficient integral; valuations are all we keep
    std::vector<std::optional<int64_t>> nv, dv;
    int64_t minv = 0;
    bool seen = false;
    auto collect = [&](const Poly& f, std::vector<std::optional<int64_t>>& out) {
        out.assign((size_t)f.degree() + 1, std::nullopt);
        for (int i = 0; i <= f.degree(); ++i) {
            if (f[(size_t)i].is_zero()) continue;
            Val val = place_valuation(f[(size_t)i], v);
            out[(size_t)i] = val.v;
            if (!seen || val.v < minv) { minv = val.v; seen = true; }
        }
    };
    collect(m.num(), nv);
    collect(m.den(), dv);
    if (seen && minv != 0) {
        for (auto& x : nv) if (x) *x -= minv;
        for (auto& x : dv) if (x) *x -= minv;
    }
    std::vector<SeedTrajectory> out;
    for (int64_t s : seeds) {
        SeedTrajectory tr;
        tr.seed_valuation = s;
        tr.steps.push_back(ProbeStep{true, s});
        int64_t cur = s;
        bool indet = false;
        for (int i = 0; i < iters; ++i) {
            auto a = poly_val_at(nv, cur);
            auto b = poly_val_at(dv, cur);
            if (!a || !b) {
                tr.steps.push_back(ProbeStep{false, 0});
                indet = true;
                break;
            }
            cur = *a - *b;
            tr.steps.push_back(ProbeStep{true, cur});
        }
        if (indet) {
            tr.verdict = SeedTrajectory::Verdict::Indeterminate;
        } else {
            bool all_zero = true, increasing = true, decreasing = true;
            for (size_t i = 0; i < tr.steps.size(); ++i) {
                if (tr.steps[i].v != 0) all_zero = false;
                if (i > 0) {
                    if (tr.steps[i].v <= tr.steps[i - 1].v) increasing = false;
                    if (tr.steps[i].v >= tr.steps[i - 1].v) decreasing = false;
                }
            }
            if (all_zero) tr.verdict = SeedTrajectory::Verdict::NoConvergenceToSinks;
            else if (increasing) tr.verdict = SeedTrajectory::Verdict::ConvergesToZero;
            else if (decreasing) tr.verdict = SeedTrajectory::Verdict::ConvergesToInfinity;
            else tr.verdict = SeedTrajectory::Verdict::Inconclusive;
        }
        out.push_back(std::move(tr));
    }
    return out;
}

} // namespace multspec
