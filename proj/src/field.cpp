#include "field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "poly.hpp"

namespace multspec {

// ---------------------------------------------------------------------------
// raw arithmetic in GF(p)[x] on uint64 coefficient vectors (constant-first,
// trimmed). Internal to extension-field construction and arithmetic; the
// generic Poly layer sits above FieldElement and cannot be used here.
// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<uint64_t>;

constexpr int64_t kMaxPrime = (1LL << 31) - 1;

uint64_t addm(uint64_t a, uint64_t b, uint64_t p) { uint64_t s = a + b; return s >= p ? s - p : s; }
uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) { return (a * b) % p; }

int64_t inv_mod_i64(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw Error(Err::DivideByZero, "element not invertible");
    if (t < 0) t += p;
    return t;
}

void vtrim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

int vdeg(const Vec& v) { return static_cast<int>(v.size()) - 1; }

Vec vmul(const Vec& a, const Vec& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    vtrim(r);
    return r;
}

Vec vadd(const Vec& a, const Vec& b, uint64_t p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = addm(x, y, p);
    }
    vtrim(r);
    return r;
}

Vec vsub(const Vec& a, const Vec& b, uint64_t p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = subm(x, y, p);
    }
    vtrim(r);
    return r;
}

// remainder of a mod m, m nonzero
Vec vmod(Vec a, const Vec& m, uint64_t p) {
    vtrim(a);
    int dm = vdeg(m);
    if (dm < 0) throw Error(Err::DivideByZero, "mod by zero polynomial");
    uint64_t lcinv = (uint64_t)inv_mod_i64((int64_t)m.back(), (int64_t)p);
    while (vdeg(a) >= dm && !a.empty()) {
        int da = vdeg(a);
        uint64_t q = mulm(a.back(), lcinv, p);
        int shift = da - dm;
        for (int i = 0; i <= dm; ++i)
            a[i + shift] = subm(a[i + shift], mulm(q, m[i], p), p);
        vtrim(a);
    }
    return a;
}

Vec vgcd(Vec a, Vec b, uint64_t p) {
    while (!b.empty()) {
        Vec r = vmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) { // monic-normalize
        uint64_t inv = (uint64_t)inv_mod_i64((int64_t)a.back(), (int64_t)p);
        for (auto& c : a) c = mulm(c, inv, p);
    }
    return a;
}

// x^(p^j) mod m via j successive p-th powers
Vec vfrob_x(const Vec& m, uint64_t p, int j) {
    Vec x = {0, 1};
    Vec cur = vmod(x, m, p);
    for (int step = 0; step < j; ++step) {
        // cur = cur^p mod m by binary exponentiation
        Vec result = {1};
        Vec base = cur;
        uint64_t e = p;
        while (e > 0) {
            if (e & 1) result = vmod(vmul(result, base, p), m, p);
            e >>= 1;
            if (e) base = vmod(vmul(base, base, p), m, p);
        }
        cur = std::move(result);
    }
    return cur;
}

bool virreducible(const Vec& f, uint64_t p) {
    int k = vdeg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    for (int j = 1; j <= k / 2; ++j) {
        Vec g = vfrob_x(f, p, j); // x^{p^j} mod f
        // g - x
        Vec gx = g;
        if (gx.size() < 2) gx.resize(2, 0);
        gx[1] = subm(gx[1], 1, p);
        vtrim(gx);
        Vec d = vgcd(f, gx, p);
        if (vdeg(d) != 0) return false;
    }
    return true;
}

Vec vext_inverse(const Vec& a, const Vec& m, uint64_t p) {
    // extended Euclid over GF(p)[x]; tolerate padded input
    Vec r0 = m, r1 = vmod(a, m, p);
    vtrim(r0);
    Vec t0 = {}, t1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        Vec q;
        {
            Vec rem = r0;
            int d1 = vdeg(r1);
            uint64_t lcinv = (uint64_t)inv_mod_i64((int64_t)r1.back(), (int64_t)p);
            q.assign(std::max(0, vdeg(rem) - d1 + 1), 0);
            while (vdeg(rem) >= d1 && !rem.empty()) {
                int dr = vdeg(rem);
                uint64_t c = mulm(rem.back(), lcinv, p);
                q[dr - d1] = c;
                for (int i = 0; i <= d1; ++i)
                    rem[i + dr - d1] = subm(rem[i + dr - d1], mulm(c, r1[i], p), p);
                vtrim(rem);
            }
            vtrim(q);
            r0 = std::move(r1);
            r1 = std::move(rem);
        }
        Vec t2 = vsub(t0, vmul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (vdeg(r0) != 0) throw Error(Err::DivideByZero, "element not invertible in extension field");
    uint64_t inv = (uint64_t)inv_mod_i64((int64_t)r0[0], (int64_t)p);
    for (auto& c : t0) c = mulm(c, inv, p);
    vtrim(t0);
    return t0;
}

struct FieldKey {
    int kind;
    int64_t p;
    int k;
    std::vector<uint64_t> modulus;
    bool operator<(const FieldKey& o) const {
        return std::tie(kind, p, k, modulus) < std::tie(o.kind, o.p, o.k, o.modulus);
    }
};

FieldKey key_of(const Field& f) {
    return FieldKey{static_cast<int>(f.kind()), f.p(), f.ext_degree(), f.modulus()};
}

size_t hash_combine(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

bool is_prime_int64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- Field -----------------------------------------------------------------

FieldPtr Field::rationals() {
    static FieldPtr q = [] {
        auto f = std::shared_ptr<Field>(new Field());
        f->kind_ = Kind::Rationals;
        return FieldPtr(f);
    }();
    return q;
}

FieldPtr Field::prime(int64_t p) {
    if (p > kMaxPrime) throw Error(Err::Unsupported, "characteristic too large");
    if (!is_prime_int64(p)) throw Error(Err::NotPrime, "p = " + std::to_string(p) + " is not prime");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Prime;
    f->p_ = p;
    f->k_ = 1;
    f->modulus_ = {0, 1}; // x, so that residue field conventions line up
    return f;
}

FieldPtr Field::extension(int64_t p, int k, std::optional<std::vector<int64_t>> modulus) {
    if (p > kMaxPrime) throw Error(Err::Unsupported, "characteristic too large");
    if (!is_prime_int64(p)) throw Error(Err::NotPrime, "p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw Error(Err::Unsupported, "extension degree must be >= 1");
    if (k == 1 && !modulus) return prime(p);
    Vec mod;
    if (modulus) {
        if (static_cast<int>(modulus->size()) != k + 1)
            throw Error(Err::ReducibleModulus, "modulus must have degree k");
        mod.resize(k + 1);
        for (int i = 0; i <= k; ++i) {
            int64_t c = (*modulus)[i] % p;
            if (c < 0) c += p;
            mod[i] = (uint64_t)c;
        }
        if (mod[k] != 1) throw Error(Err::ReducibleModulus, "modulus must be monic");
        if (!virreducible(mod, (uint64_t)p))
            throw Error(Err::ReducibleModulus, "modulus is reducible over GF(p)");
    } else {
        // first irreducible monic x^k + c_{k-1} x^{k-1} + ... + c_0, tuples
        // (c_0, ..., c_{k-1}) in lexicographic order with c_0 most significant
        std::vector<uint64_t> tuple(k, 0);
        bool found = false;
        while (true) {
            Vec cand(k + 1, 0);
            cand[k] = 1;
            for (int i = 0; i < k; ++i) cand[i] = tuple[i];
            if (virreducible(cand, (uint64_t)p)) {
                mod = cand;
                found = true;
                break;
            }
            int pos = k - 1;
            while (pos >= 0) {
                if (++tuple[pos] < (uint64_t)p) break;
                tuple[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        if (!found) throw Error(Err::Internal, "no irreducible polynomial found");
    }
    if (k == 1) {
        // explicit degree-1 modulus: still a prime field, but remember it
        auto f = std::shared_ptr<Field>(new Field());
        f->kind_ = Kind::Prime;
        f->p_ = p;
        f->k_ = 1;
        f->modulus_ = mod;
        return f;
    }
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Extension;
    f->p_ = p;
    f->k_ = k;
    f->modulus_ = std::move(mod);
    return f;
}

FieldPtr Field::rational_function(FieldPtr constant_field, std::string var) {
    if (!constant_field) throw Error(Err::Internal, "null constant field");
    if (constant_field->is_fraction_field())
        throw Error(Err::Unsupported, "iterated function fields not supported");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::RationalFunction;
    f->p_ = constant_field->characteristic();
    f->k_ = constant_field->ext_degree();
    f->base_ = std::move(constant_field);
    f->var_ = std::move(var);
    return f;
}

namespace {
std::mutex g_registry_mutex;
std::map<std::pair<int64_t, int>, FieldPtr>& canonical_cache() {
    static std::map<std::pair<int64_t, int>, FieldPtr> m;
    return m;
}
} // namespace

FieldPtr Field::canonical_finite(int64_t p, int k) {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto& cache = canonical_cache();
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
    FieldPtr f = k == 1 ? prime(p) : extension(p, k);
    cache[{p, k}] = f;
    return f;
}

int64_t Field::characteristic() const { return kind_ == Kind::Rationals ? 0 : p_; }

std::optional<uint64_t> Field::finite_size() const {
    if (!is_finite()) return std::nullopt;
    uint64_t s = 1;
    for (int i = 0; i < k_; ++i) {
        if (s > (uint64_t)1 << 62) return std::nullopt;
        s *= (uint64_t)p_;
    }
    return s;
}

FieldElement Field::element_from_index(uint64_t idx) const {
    if (!is_finite()) throw Error(Err::Internal, "element_from_index on infinite field");
    if (kind_ == Kind::Prime) return FieldElement::make_residue(shared_from_this(), idx % (uint64_t)p_);
    Vec v(k_, 0);
    for (int i = 0; i < k_; ++i) {
        v[i] = idx % (uint64_t)p_;
        idx /= (uint64_t)p_;
    }
    return FieldElement::make_ext(shared_from_this(), std::move(v));
}

uint64_t Field::element_index(const FieldElement& x) const {
    if (kind_ == Kind::Prime) return x.residue();
    const auto& v = x.ext_coeffs();
    uint64_t idx = 0;
    for (int i = k_ - 1; i >= 0; --i) idx = idx * (uint64_t)p_ + (i < (int)v.size() ? v[i] : 0);
    return idx;
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(int64_t n) const {
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Rationals: return FieldElement::make_rat(self, Rat(n));
        case Kind::Prime: {
            int64_t r = n % p_;
            if (r < 0) r += p_;
            return FieldElement::make_residue(self, (uint64_t)r);
        }
        case Kind::Extension: {
            int64_t r = n % p_;
            if (r < 0) r += p_;
            Vec v(k_, 0);
            v[0] = (uint64_t)r;
            return FieldElement::make_ext(self, std::move(v));
        }
        case Kind::RationalFunction: {
            RatFunc rf{Poly::constant(base_->from_int(n)), Poly::constant(base_->one())};
            return FieldElement::make_ratfunc(self, std::move(rf));
        }
    }
    throw Error(Err::Internal, "bad field kind");
}

FieldElement Field::from_rat(const Rat& r) const {
    if (kind_ == Kind::Rationals) return FieldElement::make_rat(shared_from_this(), r);
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    Int pp(p_);
    int64_t n = (int64_t)(num % pp), d = (int64_t)(den % pp);
    FieldElement fn = from_int(n), fd = from_int(d);
    return fn / fd;
}

FieldElement Field::generator() const {
    if (kind_ != Kind::Extension) throw Error(Err::Internal, "generator on non-extension field");
    Vec v(k_, 0);
    v[1] = 1;
    return FieldElement::make_ext(shared_from_this(), std::move(v));
}

bool Field::same(const Field& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::Rationals: return true;
        case Kind::Prime: return p_ == other.p_;
        case Kind::Extension: return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
        case Kind::RationalFunction:
            return var_ == other.var_ && base_->same(*other.base_);
    }
    return false;
}

std::string Field::description() const {
    switch (kind_) {
        case Kind::Rationals: return "q:0";
        case Kind::Prime: return std::to_string(p_) + "^1";
        case Kind::Extension: return std::to_string(p_) + "^" + std::to_string(k_);
        case Kind::RationalFunction: return base_->description() + "(" + var_ + ")";
    }
    return "?";
}

void require_same_field(const Field& a, const Field& b, const char* op) {
    if (!a.same(b))
        throw Error(Err::FieldMismatch,
                    std::string(op) + ": operands in different fields (" + a.description() +
                        " vs " + b.description() + ")");
}

// --- FieldElement ----------------------------------------------------------

FieldElement FieldElement::make_rat(FieldPtr f, Rat v) {
    FieldElement e;
    e.field_ = std::move(f);
    e.rep_ = std::move(v);
    return e;
}

FieldElement FieldElement::make_residue(FieldPtr f, uint64_t v) {
    FieldElement e;
    e.field_ = std::move(f);
    e.rep_ = v;
    return e;
}

FieldElement FieldElement::make_ext(FieldPtr f, std::vector<uint64_t> v) {
    v.resize((size_t)f->ext_degree(), 0);
    FieldElement e;
    e.field_ = std::move(f);
    e.rep_ = std::move(v);
    return e;
}

FieldElement FieldElement::make_ratfunc(FieldPtr f, RatFunc v) {
    if (v.den.is_zero()) throw Error(Err::DivideByZero, "zero denominator");
    // reduce and make the denominator monic
    Poly g = poly_gcd(v.num, v.den);
    if (g.degree() > 0) {
        v.num = poly_exact_div(v.num, g);
        v.den = poly_exact_div(v.den, g);
    }
    FieldElement dlc = v.den.lc();
    if (!dlc.is_one()) {
        FieldElement inv = dlc.inverse();
        v.num = v.num.scale(inv);
        v.den = v.den.scale(inv);
    }
    FieldElement e;
    e.field_ = std::move(f);
    e.rep_ = std::make_shared<const RatFunc>(std::move(v));
    return e;
}

const Rat& FieldElement::rat() const { return std::get<Rat>(rep_); }
uint64_t FieldElement::residue() const { return std::get<uint64_t>(rep_); }
const std::vector<uint64_t>& FieldElement::ext_coeffs() const {
    return std::get<std::vector<uint64_t>>(rep_);
}
const RatFunc& FieldElement::ratfunc() const {
    return *std::get<std::shared_ptr<const RatFunc>>(rep_);
}

bool FieldElement::is_zero() const {
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rat() == 0;
        case Field::Kind::Prime: return residue() == 0;
        case Field::Kind::Extension: {
            for (auto c : ext_coeffs())
                if (c) return false;
            return true;
        }
        case Field::Kind::RationalFunction: return ratfunc().num.is_zero();
    }
    return false;
}

bool FieldElement::is_one() const {
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rat() == 1;
        case Field::Kind::Prime: return residue() == 1;
        case Field::Kind::Extension: {
            const auto& v = ext_coeffs();
            if (v.empty() || v[0] != 1) return false;
            for (size_t i = 1; i < v.size(); ++i)
                if (v[i]) return false;
            return true;
        }
        case Field::Kind::RationalFunction: {
            const auto& rf = ratfunc();
            return rf.den.degree() == 0 && rf.num.degree() == 0 && rf.num[0].is_one() &&
                   rf.den[0].is_one();
        }
    }
    return false;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(*field_, *o.field_, "add");
    switch (field_->kind()) {
        case Field::Kind::Rationals: return make_rat(field_, rat() + o.rat());
        case Field::Kind::Prime:
            return make_residue(field_, addm(residue(), o.residue(), (uint64_t)field_->p()));
        case Field::Kind::Extension: {
            Vec r = ext_coeffs();
            const Vec& b = o.ext_coeffs();
            for (size_t i = 0; i < r.size(); ++i) r[i] = addm(r[i], b[i], (uint64_t)field_->p());
            return make_ext(field_, std::move(r));
        }
        case Field::Kind::RationalFunction: {
            const RatFunc &a = ratfunc(), &b = o.ratfunc();
            if (a.den == b.den)
                return make_ratfunc(field_, RatFunc{a.num + b.num, a.den});
            return make_ratfunc(field_, RatFunc{a.num * b.den + b.num * a.den, a.den * b.den});
        }
    }
    throw Error(Err::Internal, "bad field kind");
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
    switch (field_->kind()) {
        case Field::Kind::Rationals: return make_rat(field_, -rat());
        case Field::Kind::Prime: {
            uint64_t r = residue();
            return make_residue(field_, r == 0 ? 0 : (uint64_t)field_->p() - r);
        }
        case Field::Kind::Extension: {
            Vec r = ext_coeffs();
            for (auto& c : r) c = c == 0 ? 0 : (uint64_t)field_->p() - c;
            return make_ext(field_, std::move(r));
        }
        case Field::Kind::RationalFunction: {
            const RatFunc& a = ratfunc();
            FieldElement e;
            e.field_ = field_;
            e.rep_ = std::make_shared<const RatFunc>(RatFunc{-a.num, a.den});
            return e;
        }
    }
    throw Error(Err::Internal, "bad field kind");
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(*field_, *o.field_, "mul");
    switch (field_->kind()) {
        case Field::Kind::Rationals: return make_rat(field_, rat() * o.rat());
        case Field::Kind::Prime:
            return make_residue(field_, mulm(residue(), o.residue(), (uint64_t)field_->p()));
        case Field::Kind::Extension: {
            Vec r = vmul(ext_coeffs(), o.ext_coeffs(), (uint64_t)field_->p());
            r = vmod(std::move(r), field_->modulus(), (uint64_t)field_->p());
            return make_ext(field_, std::move(r));
        }
        case Field::Kind::RationalFunction: {
            const RatFunc &a = ratfunc(), &b = o.ratfunc();
            if (a.den.degree() == 0 && b.den.degree() == 0) {
                // both denominators are 1 after normalization
                FieldElement e;
                e.field_ = field_;
                e.rep_ = std::make_shared<const RatFunc>(RatFunc{a.num * b.num, a.den});
                return e;
            }
            return make_ratfunc(field_, RatFunc{a.num * b.num, a.den * b.den});
        }
    }
    throw Error(Err::Internal, "bad field kind");
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(Err::DivideByZero, "inverse of zero");
    switch (field_->kind()) {
        case Field::Kind::Rationals: return make_rat(field_, Rat(1) / rat());
        case Field::Kind::Prime:
            return make_residue(field_, (uint64_t)inv_mod_i64((int64_t)residue(), field_->p()));
        case Field::Kind::Extension: {
            Vec r = vext_inverse(ext_coeffs(), field_->modulus(), (uint64_t)field_->p());
            return make_ext(field_, std::move(r));
        }
        case Field::Kind::RationalFunction: {
            const RatFunc& a = ratfunc();
            return make_ratfunc(field_, RatFunc{a.den, a.num});
        }
    }
    throw Error(Err::Internal, "bad field kind");
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    require_same_field(*field_, *o.field_, "div");
    if (o.is_zero()) throw Error(Err::DivideByZero, "division by zero");
    if (field_->kind() == Field::Kind::Rationals) return make_rat(field_, rat() / o.rat());
    return *this * o.inverse();
}

FieldElement FieldElement::pow(const Int& e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement base = *this;
    FieldElement result = field_->one();
    Int n = e;
    while (n > 0) {
        if (boost::multiprecision::bit_test(n, 0)) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (!field_ || !o.field_) return field_ == o.field_;
    if (!field_->same(*o.field_)) return false;
    switch (field_->kind()) {
        case Field::Kind::Rationals: return rat() == o.rat();
        case Field::Kind::Prime: return residue() == o.residue();
        case Field::Kind::Extension: return ext_coeffs() == o.ext_coeffs();
        case Field::Kind::RationalFunction: {
            const RatFunc &a = ratfunc(), &b = o.ratfunc();
            return a.num == b.num && a.den == b.den;
        }
    }
    return false;
}

size_t FieldElement::hash() const {
    size_t h = (size_t)field_->kind() * 1315423911u;
    switch (field_->kind()) {
        case Field::Kind::Rationals: {
            std::ostringstream os;
            os << rat();
            return hash_combine(h, std::hash<std::string>()(os.str()));
        }
        case Field::Kind::Prime: return hash_combine(h, (size_t)residue());
        case Field::Kind::Extension: {
            for (auto c : ext_coeffs()) h = hash_combine(h, (size_t)c);
            return h;
        }
        case Field::Kind::RationalFunction: {
            h = hash_combine(h, ratfunc().num.hash());
            h = hash_combine(h, ratfunc().den.hash());
            return h;
        }
    }
    return h;
}

FieldElement FieldElement::frobenius(int a) const {
    if (!field_->is_finite()) throw Error(Err::Internal, "frobenius on infinite field");
    FieldElement r = *this;
    Int p(field_->p());
    for (int i = 0; i < a; ++i) r = r.pow(p);
    return r;
}

// --- embeddings ------------------------------------------------------------

namespace {

struct EmbeddingData {
    FieldElement gen_image; // image of the source generator in the target
};

std::map<std::pair<FieldKey, FieldKey>, EmbeddingData>& embedding_cache() {
    static std::map<std::pair<FieldKey, FieldKey>, EmbeddingData> m;
    return m;
}

// evaluate a GF(p)[x] vector at an element of a target field
FieldElement eval_vec_at(const Vec& v, const FieldElement& x) {
    const FieldPtr& f = x.field();
    FieldElement acc = f->zero();
    for (int i = vdeg(v); i >= 0; --i)
        acc = acc * x + f->from_int((int64_t)v[i]);
    return acc;
}

EmbeddingData& get_embedding(const FieldPtr& src, const FieldPtr& dst, const Budget& budget) {
    if (src->p() != dst->p() || dst->ext_degree() % src->ext_degree() != 0)
        throw Error(Err::FieldMismatch, "no embedding " + src->description() + " -> " + dst->description());
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto key = std::make_pair(key_of(*src), key_of(*dst));
    auto& cache = embedding_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto size = dst->finite_size();
    if (!size || *size > budget.enumeration)
        throw Error(Err::FieldTooLarge, "embedding scan exceeds enumeration budget");
    // first root of the source modulus in the target, canonical element order
    for (uint64_t i = 0; i < *size; ++i) {
        FieldElement cand = dst->element_from_index(i);
        if (eval_vec_at(src->modulus(), cand).is_zero()) {
            auto [pos, ok] = cache.emplace(key, EmbeddingData{cand});
            return pos->second;
        }
    }
    throw Error(Err::Internal, "source modulus has no root in target field");
}

} // namespace

FieldElement embed(const FieldElement& x, const FieldPtr& target, const Budget& budget) {
    const FieldPtr& src = x.field();
    if (src->same(*target)) return x;
    if (src->is_fraction_field() && target->is_fraction_field()) {
        const RatFunc& rf = x.ratfunc();
        RatFunc out{poly_map_coeffs(rf.num, target->constant_field(), budget),
                    poly_map_coeffs(rf.den, target->constant_field(), budget)};
        return FieldElement::make_ratfunc(target, std::move(out));
    }
    if (!src->is_finite() || !target->is_finite())
        throw Error(Err::FieldMismatch, "cannot embed " + src->description() + " into " + target->description());
    if (src->is_prime_field()) return target->from_int((int64_t)x.residue());
    EmbeddingData& emb = get_embedding(src, target, budget);
    return eval_vec_at(x.ext_coeffs(), emb.gen_image);
}

bool lies_in_subfield(const FieldElement& x, const FieldPtr& subfield, const Budget& budget) {
    if (x.field()->same(*subfield)) return true;
    if (subfield->is_prime_field()) {
        // prime subfield of an extension: only the constant coefficient present
        const auto& v = x.ext_coeffs();
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i]) return false;
        return true;
    }
    // x is fixed by the subfield Frobenius
    FieldElement y = x.frobenius(subfield->ext_degree());
    return y == x;
}

FieldElement project_to_subfield(const FieldElement& x, const FieldPtr& subfield,
                                 const Budget& budget) {
    if (x.field()->same(*subfield)) return x;
    if (subfield->is_prime_field()) {
        const auto& v = x.ext_coeffs();
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i]) throw Error(Err::Internal, "element not in prime subfield");
        return subfield->from_int((int64_t)(v.empty() ? 0 : v[0]));
    }
    // solve for coordinates in the basis 1, g, g^2, ... of the embedded subfield
    EmbeddingData& emb = get_embedding(subfield, x.field(), budget);
    int a = subfield->ext_degree();
    int b = x.field()->ext_degree();
    uint64_t p = (uint64_t)x.field()->p();
    // columns: images of subfield basis elements, rows: GF(p)-coordinates in target
    std::vector<Vec> cols(a);
    FieldElement gpow = x.field()->one();
    for (int j = 0; j < a; ++j) {
        Vec c = gpow.ext_coeffs();
        c.resize(b, 0);
        cols[j] = c;
        gpow = gpow * emb.gen_image;
    }
    Vec rhs = x.ext_coeffs();
    rhs.resize(b, 0);
    // Gaussian elimination on the b x (a+1) system
    std::vector<Vec> m(b, Vec(a + 1, 0));
    for (int i = 0; i < b; ++i) {
        for (int j = 0; j < a; ++j) m[i][j] = cols[j][i];
        m[i][a] = rhs[i];
    }
    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < a && row < b; ++col) {
        int pr = -1;
        for (int i = row; i < b; ++i)
            if (m[i][col]) { pr = i; break; }
        if (pr < 0) throw Error(Err::Internal, "embedding basis not independent");
        std::swap(m[row], m[pr]);
        uint64_t inv = (uint64_t)inv_mod_i64((int64_t)m[row][col], (int64_t)p);
        for (auto& v : m[row]) v = mulm(v, inv, p);
        for (int i = 0; i < b; ++i) {
            if (i == row || m[i][col] == 0) continue;
            uint64_t f = m[i][col];
            for (int j = col; j <= a; ++j) m[i][j] = subm(m[i][j], mulm(f, m[row][j], p), p);
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (int i = row; i < b; ++i)
        if (m[i][a]) throw Error(Err::Internal, "element not in subfield image");
    Vec sol(a, 0);
    for (int i = 0; i < row; ++i) sol[pivot_col_of_row[i]] = m[i][a];
    return FieldElement::make_ext(subfield, std::move(sol));
}

int frobenius_orbit_length(const FieldElement& x, int64_t /*p*/, int subfield_ext_degree) {
    FieldElement y = x.frobenius(subfield_ext_degree);
    int len = 1;
    while (!(y == x)) {
        y = y.frobenius(subfield_ext_degree);
        ++len;
        if (len > 256) throw Error(Err::Internal, "frobenius orbit did not close");
    }
    return len;
}

} // namespace multspec
