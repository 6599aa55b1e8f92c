#include "poly.hpp"

#include <algorithm>

namespace multspec {

namespace {
size_t hash_mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
} // namespace

Poly::Poly(FieldPtr f, std::vector<FieldElement> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        require_same_field(*field_, *c.field(), "poly coefficient");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const FieldElement& c) {
    Poly p(c.field());
    if (!c.is_zero()) p.c_ = {c};
    return p;
}

Poly Poly::x(FieldPtr f) {
    Poly p(f);
    p.c_ = {f->zero(), f->one()};
    return p;
}

Poly Poly::from_ints(const FieldPtr& f, const std::vector<int64_t>& cs) {
    std::vector<FieldElement> v;
    v.reserve(cs.size());
    for (auto n : cs) v.push_back(f->from_int(n));
    return Poly(f, std::move(v));
}

const FieldElement& Poly::lc() const {
    if (c_.empty()) throw Error(Err::Internal, "leading coefficient of zero polynomial");
    return c_.back();
}

FieldElement Poly::coeff(int i) const {
    if (i < 0 || i >= (int)c_.size()) return field_->zero();
    return c_[i];
}

Poly Poly::operator+(const Poly& o) const {
    require_same_field(*field_, *o.field_, "poly add");
    Poly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), field_->zero());
    for (size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size() && i < o.c_.size()) r.c_[i] = c_[i] + o.c_[i];
        else if (i < c_.size()) r.c_[i] = c_[i];
        else r.c_[i] = o.c_[i];
    }
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r(field_);
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(-c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    require_same_field(*field_, *o.field_, "poly mul");
    if (is_zero() || o.is_zero()) return Poly(field_);
    Poly r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, field_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

Poly Poly::scale(const FieldElement& c) const {
    if (c.is_zero()) return Poly(field_);
    Poly r(field_);
    r.c_.reserve(c_.size());
    for (const auto& a : c_) r.c_.push_back(a * c);
    r.trim();
    return r;
}

Poly Poly::shift(int k) const {
    if (is_zero() || k == 0) return k == 0 ? *this : Poly(field_);
    Poly r(field_);
    r.c_.assign(c_.size() + (size_t)k, field_->zero());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + (size_t)k] = c_[i];
    return r;
}

Poly Poly::pow(int64_t e) const {
    if (e < 0) throw Error(Err::Internal, "negative polynomial power");
    Poly result = Poly::constant(field_->one());
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool Poly::operator==(const Poly& o) const {
    if (!field_->same(*o.field_)) return false;
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

FieldElement Poly::eval(const FieldElement& x) const {
    require_same_field(*field_, *x.field(), "poly eval");
    FieldElement acc = field_->zero();
    for (int i = degree(); i >= 0; --i) {
        acc = acc * x;
        acc = acc + c_[(size_t)i];
    }
    return acc;
}

Poly Poly::derivative() const {
    Poly r(field_);
    if (degree() < 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * field_->from_int((int64_t)i));
    r.trim();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    if (lc().is_one()) return *this;
    return scale(lc().inverse());
}

size_t Poly::hash() const {
    size_t h = 0x51ed2701;
    for (const auto& c : c_) h = hash_mix(h, c.hash());
    return h;
}

std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& g) {
    require_same_field(*f.field(), *g.field(), "poly divrem");
    if (g.is_zero()) throw Error(Err::DivideByZero, "polynomial division by zero");
    Poly q(f.field()), r = f;
    if (f.degree() < g.degree()) return {q, r};
    FieldElement lcinv = g.lc().inverse();
    std::vector<FieldElement> qc((size_t)(f.degree() - g.degree() + 1), f.field()->zero());
    while (!r.is_zero() && r.degree() >= g.degree()) {
        int k = r.degree() - g.degree();
        FieldElement c = r.lc() * lcinv;
        qc[(size_t)k] = c;
        r = r - g.shift(k).scale(c);
    }
    return {Poly(f.field(), std::move(qc)), r};
}

Poly poly_exact_div(const Poly& f, const Poly& g) {
    auto [q, r] = poly_divrem(f, g);
    if (!r.is_zero()) throw Error(Err::InexactDivision, "inexact polynomial division");
    return q;
}

Poly poly_gcd(const Poly& f, const Poly& g) {
    require_same_field(*f.field(), *g.field(), "poly gcd");
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = poly_divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
        if (!a.is_zero()) a = a.monic(); // keeps fraction coefficients small
    }
    return a.is_zero() ? a : a.monic();
}

ExtGcd poly_ext_gcd(const Poly& f, const Poly& g) {
    require_same_field(*f.field(), *g.field(), "poly ext gcd");
    const FieldPtr& k = f.field();
    Poly r0 = f, r1 = g;
    Poly u0 = Poly::constant(k->one()), u1(k);
    Poly v0(k), v1 = Poly::constant(k->one());
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divrem(r0, r1);
        Poly u2 = u0 - q * u1;
        Poly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (!r0.is_zero() && !r0.lc().is_one()) {
        FieldElement s = r0.lc().inverse();
        r0 = r0.scale(s);
        u0 = u0.scale(s);
        v0 = v0.scale(s);
    }
    return ExtGcd{r0, u0, v0};
}

Poly poly_inverse_mod(const Poly& f, const Poly& m) {
    ExtGcd e = poly_ext_gcd(f, m);
    if (e.g.degree() != 0)
        throw Error(Err::Internal, "polynomial not invertible modulo given modulus");
    return poly_divrem(e.u, m).second;
}

namespace {
// pseudo-remainder: lc(B)^{deg A - deg B + 1} A = BQ + R
Poly poly_prem(const Poly& A, const Poly& B) {
    Poly R = A;
    const FieldElement d = B.lc();
    int e = A.degree() - B.degree() + 1;
    while (!R.is_zero() && R.degree() >= B.degree()) {
        Poly S = B.shift(R.degree() - B.degree()).scale(R.lc());
        R = R.scale(d) - S;
        --e;
    }
    if (e > 0) R = R.scale(d.pow(Int(e)));
    return R;
}
} // namespace

FieldElement poly_resultant(const Poly& f, const Poly& g) {
    require_same_field(*f.field(), *g.field(), "resultant");
    const FieldPtr& k = f.field();
    if (f.is_zero() || g.is_zero()) return k->zero();
    Poly A = f, B = g;
    bool neg = false;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((f.degree() & 1) && (g.degree() & 1)) neg = true;
    }
    if (A.degree() == 0) return k->one();
    if (B.degree() == 0) {
        FieldElement r = B[0].pow(Int(A.degree()));
        return neg ? -r : r;
    }
    FieldElement gg = k->one(), h = k->one();
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) neg = !neg;
        Poly R = poly_prem(A, B);
        A = B;
        FieldElement denom = gg * h.pow(Int(delta));
        B = R.scale(denom.inverse());
        gg = A.lc();
        if (delta == 1) h = gg;
        else if (delta > 1) h = gg.pow(Int(delta)) / h.pow(Int(delta - 1));
        if (B.is_zero()) return k->zero();
        if (B.degree() == 0) break;
    }
    FieldElement res = B[0].pow(Int(A.degree()));
    if (A.degree() > 1) res = res / h.pow(Int(A.degree() - 1));
    return neg ? -res : res;
}

int mobius_mu(int64_t n) {
    if (n < 1) throw Error(Err::Internal, "mobius of non-positive integer");
    int mu = 1;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

Int dynatomic_degree(int64_t d, int64_t n) {
    Int sum = 0;
    for (int64_t k = 1; k <= n; ++k) {
        if (n % k) continue;
        Int dk = 1;
        for (int64_t i = 0; i < k; ++i) dk *= d;
        sum += Int(mobius_mu(n / k)) * (dk + 1);
    }
    return sum;
}

namespace {
Poly poly_powmod(const Poly& b, Int e, const Poly& m) {
    Poly result = Poly::constant(b.field()->one());
    Poly base = poly_divrem(b, m).second;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) result = poly_divrem(result * base, m).second;
        e >>= 1;
        if (e > 0) base = poly_divrem(base * base, m).second;
    }
    return result;
}
} // namespace

bool poly_is_irreducible(const Poly& f) {
    if (!f.field()->is_finite())
        throw Error(Err::Unsupported, "irreducibility test needs a finite coefficient field");
    int k = f.degree();
    if (k <= 0) return false;
    if (k == 1) return true;
    auto size = f.field()->finite_size();
    if (!size) throw Error(Err::FieldTooLarge, "coefficient field too large");
    Int q(*size);
    Poly fm = f.monic();
    Poly x = Poly::x(f.field());
    Int qj = 1;
    for (int j = 1; j <= k / 2; ++j) {
        qj *= q;
        Poly frob = poly_powmod(x, qj, fm); // x^{q^j} mod f
        Poly d = poly_gcd(fm, frob - x);
        if (d.degree() != 0) return false;
    }
    return true;
}

Poly poly_map_coeffs(const Poly& f, const FieldPtr& target, const Budget& budget) {
    if (f.field()->same(*target)) return f;
    std::vector<FieldElement> cs;
    cs.reserve((size_t)f.degree() + 1);
    const FieldPtr& src = f.field();
    for (int i = 0; i <= f.degree(); ++i) {
        const FieldElement& c = f[(size_t)i];
        if (src->is_finite() && target->is_fraction_field()) {
            FieldElement cc = embed(c, target->constant_field(), budget);
            cs.push_back(ff_embed_constant(target, cc));
        } else {
            cs.push_back(embed(c, target, budget));
        }
    }
    return Poly(target, std::move(cs));
}

std::vector<RootRec> poly_roots_enum(const Poly& f, int max_ext, const Budget& budget) {
    if (f.is_zero()) throw Error(Err::Internal, "roots of the zero polynomial");
    const FieldPtr& k0 = f.field();
    if (!k0->is_finite())
        throw Error(Err::Unsupported, "root enumeration needs a finite coefficient field");
    std::vector<RootRec> out;
    int base_deg = k0->ext_degree();
    for (int j = 1; j <= max_ext; ++j) {
        FieldPtr kj = j == 1 ? k0 : Field::canonical_finite(k0->p(), base_deg * j);
        auto size = kj->finite_size();
        if (!size || *size > budget.enumeration)
            throw Error(Err::FieldTooLarge, "root search field exceeds enumeration budget");
        Poly fj = poly_map_coeffs(f, kj, budget);
        Poly xm = Poly::x(kj);
        for (uint64_t idx = 0; idx < *size; ++idx) {
            FieldElement e = kj->element_from_index(idx);
            if (!fj.eval(e).is_zero()) continue;
            if (j > 1 && frobenius_orbit_length(e, k0->p(), base_deg) != j) continue;
            int mult = 0;
            Poly g = fj;
            Poly lin = xm - Poly::constant(e);
            while (true) {
                auto [q, r] = poly_divrem(g, lin);
                if (!r.is_zero()) break;
                g = q;
                ++mult;
                if (g.is_zero()) break;
            }
            out.push_back(RootRec{e, mult, j});
        }
    }
    return out;
}

ConstRoots poly_constant_roots(const Poly& f, int max_ext, const Budget& budget) {
    const FieldPtr& K = f.field();
    if (!K->is_fraction_field() || !K->constant_field()->is_finite())
        throw Error(Err::Unsupported, "constant-root search needs a function field over a finite field");
    const FieldPtr& k0 = K->constant_field();
    int base_deg = k0->ext_degree();
    ConstRoots out{{}, f.degree()};
    for (int j = 1; j <= max_ext; ++j) {
        FieldPtr kj = j == 1 ? k0 : Field::canonical_finite(k0->p(), base_deg * j);
        auto size = kj->finite_size();
        if (!size || *size > budget.enumeration)
            throw Error(Err::FieldTooLarge, "root search field exceeds enumeration budget");
        FieldPtr Kj = j == 1 ? K : Field::rational_function(kj, K->var());
        Poly fj = poly_map_coeffs(f, Kj, budget);
        Poly xm = Poly::x(Kj);
        for (uint64_t idx = 0; idx < *size; ++idx) {
            FieldElement e = kj->element_from_index(idx);
            FieldElement ec = ff_embed_constant(Kj, e);
            if (!fj.eval(ec).is_zero()) continue;
            if (j > 1 && frobenius_orbit_length(e, k0->p(), base_deg) != j) continue;
            int mult = 0;
            Poly g = fj;
            Poly lin = xm - Poly::constant(ec);
            while (true) {
                auto [q, r] = poly_divrem(g, lin);
                if (!r.is_zero()) break;
                g = q;
                ++mult;
                if (g.is_zero()) break;
            }
            out.roots.push_back(RootRec{e, mult, j});
            out.remaining_degree -= mult;
        }
    }
    return out;
}

// --- fraction-field helpers -------------------------------------------------

FieldElement ratfunc_from(const FieldPtr& frac_field, Poly num, Poly den) {
    if (!frac_field->is_fraction_field()) throw Error(Err::Internal, "not a fraction field");
    require_same_field(*num.field(), *frac_field->constant_field(), "ratfunc numerator");
    require_same_field(*den.field(), *frac_field->constant_field(), "ratfunc denominator");
    return FieldElement::make_ratfunc(frac_field, RatFunc{std::move(num), std::move(den)});
}

const Poly& ff_num(const FieldElement& x) { return x.ratfunc().num; }
const Poly& ff_den(const FieldElement& x) { return x.ratfunc().den; }

bool ff_is_constant(const FieldElement& x) {
    const RatFunc& rf = x.ratfunc();
    return rf.num.degree() <= 0 && rf.den.degree() <= 0;
}

FieldElement ff_constant_value(const FieldElement& x) {
    const RatFunc& rf = x.ratfunc();
    if (!ff_is_constant(x)) throw Error(Err::Internal, "fraction is not constant");
    const FieldPtr& k0 = x.field()->constant_field();
    if (rf.num.is_zero()) return k0->zero();
    return rf.num[0] / rf.den[0];
}

FieldElement ff_eval(const FieldElement& x, const FieldElement& c, const Budget& budget) {
    const RatFunc& rf = x.ratfunc();
    Poly num = poly_map_coeffs(rf.num, c.field(), budget);
    Poly den = poly_map_coeffs(rf.den, c.field(), budget);
    FieldElement d = den.eval(c);
    if (d.is_zero()) throw Error(Err::DivideByZero, "specialization hits a pole");
    return num.eval(c) / d;
}

FieldElement ff_embed_constant(const FieldPtr& frac_field, const FieldElement& c) {
    FieldElement cc = c;
    if (!c.field()->same(*frac_field->constant_field()))
        cc = embed(c, frac_field->constant_field());
    return FieldElement::make_ratfunc(frac_field,
                                      RatFunc{Poly::constant(cc), Poly::constant(cc.field()->one())});
}

int ff_coeff_height(const Poly& f) {
    if (!f.field()->is_fraction_field()) return 0;
    int h = 0;
    for (int i = 0; i <= f.degree(); ++i) {
        const FieldElement& c = f[(size_t)i];
        if (c.is_zero()) continue;
        const RatFunc& rf = c.ratfunc();
        h = std::max(h, std::max(rf.num.degree(), rf.den.degree()));
    }
    return h;
}

} // namespace multspec
