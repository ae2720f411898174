#include "chevkit/ring.hpp"

#include <cctype>
#include <numeric>

namespace chevkit {

namespace {

enum class Mode { SmallMod, SmallInt, SmallFrac, Big };
enum class Dom { Mod, Int, Frac };

constexpr int kMaxDepth = 3;

int64_t mod_norm(int64_t a, int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

int64_t mod_mul(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

int64_t ext_inverse(int64_t a, int64_t m) {
    int64_t t = 0, nt = 1, r = m, nr = mod_norm(a, m);
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    if (r != 1) throw NonUnit("element is not invertible");
    return mod_norm(t, m);
}

bool fits64(const __int128 v) {
    return v >= static_cast<__int128>(INT64_MIN) && v <= static_cast<__int128>(INT64_MAX);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(__int128 v) {
    bool negv = v < 0;
    unsigned __int128 u = negv ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return negv ? mpz_class(-r) : r;
}

// Coefficient domains shared by the tower arithmetic.
struct ModDom {
    using T = int64_t;
    int64_t m;
    T zero() const { return 0; }
    T add(T a, T b) const { T r = a + b; return r >= m ? r - m : r; }
    T sub(T a, T b) const { T r = a - b; return r < 0 ? r + m : r; }
    T neg(T a) const { return a == 0 ? 0 : m - a; }
    T mul(T a, T b) const { return mod_mul(a, b, m); }
    bool is_zero(T a) const { return a == 0; }
    bool is_unit(T a) const { return std::gcd(a, m) == 1; }
    T inv(T a) const { return ext_inverse(a, m); }
};

struct BigDom {
    using T = mpq_class;
    Dom dom;
    mpz_class m;
    T zero() const { return 0; }
    void fix(T& a) const {
        if (dom == Dom::Mod) {
            mpz_class r = a.get_num() % m;
            if (r < 0) r += m;
            a = r;
        }
    }
    T add(const T& a, const T& b) const { T r = a + b; fix(r); return r; }
    T sub(const T& a, const T& b) const { T r = a - b; fix(r); return r; }
    T neg(const T& a) const { T r = -a; fix(r); return r; }
    T mul(const T& a, const T& b) const { T r = a * b; fix(r); return r; }
    bool is_zero(const T& a) const { return sgn(a) == 0; }
    bool is_unit(const T& a) const {
        switch (dom) {
            case Dom::Mod: {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), a.get_num_mpz_t(), m.get_mpz_t());
                return g == 1;
            }
            case Dom::Int: return abs(a) == 1;
            case Dom::Frac: return mpz_odd_p(a.get_num_mpz_t()) != 0;
        }
        return false;
    }
    T inv(const T& a) const {
        if (!is_unit(a)) throw NonUnit("element is not invertible");
        if (dom == Dom::Mod) {
            mpz_class r;
            mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), m.get_mpz_t());
            return T(r);
        }
        T r = 1 / a;
        r.canonicalize();
        return r;
    }
};

// Arithmetic on coefficient vectors of a tower of dual ('d') and omega ('o')
// extensions. Coefficient layout: [first half | second half] per level.
template <class D>
struct Tower {
    using T = typename D::T;
    const D& dom;
    const char* tw;

    void add(const T* a, const T* b, T* out, int d) const {
        for (int i = 0; i < (1 << d); ++i) out[i] = dom.add(a[i], b[i]);
    }
    void sub(const T* a, const T* b, T* out, int d) const {
        for (int i = 0; i < (1 << d); ++i) out[i] = dom.sub(a[i], b[i]);
    }
    void neg(const T* a, T* out, int d) const {
        for (int i = 0; i < (1 << d); ++i) out[i] = dom.neg(a[i]);
    }
    bool is_zero(const T* a, int d) const {
        for (int i = 0; i < (1 << d); ++i)
            if (!dom.is_zero(a[i])) return false;
        return true;
    }
    void mul(const T* a, const T* b, T* out, int d) const {
        if (d == 0) {
            out[0] = dom.mul(a[0], b[0]);
            return;
        }
        const int h = 1 << (d - 1);
        T p[4], q[4], r1[4], r2[4];
        mul(a, b, p, d - 1);
        mul(a, b + h, r1, d - 1);
        mul(a + h, b, r2, d - 1);
        if (tw[d - 1] == 'd') {
            for (int i = 0; i < h; ++i) {
                out[i] = p[i];
                out[h + i] = dom.add(r1[i], r2[i]);
            }
        } else {
            mul(a + h, b + h, q, d - 1);
            for (int i = 0; i < h; ++i) {
                out[i] = dom.sub(p[i], q[i]);
                out[h + i] = dom.sub(dom.add(r1[i], r2[i]), q[i]);
            }
        }
    }
    // x*x - x*y + y*y for the omega norm
    void norm(const T* a, T* out, int d) const {
        const int h = 1 << (d - 1);
        T aa[4], ab[4], bb[4];
        mul(a, a, aa, d - 1);
        mul(a, a + h, ab, d - 1);
        mul(a + h, a + h, bb, d - 1);
        for (int i = 0; i < h; ++i) out[i] = dom.add(dom.sub(aa[i], ab[i]), bb[i]);
    }
    bool is_unit(const T* a, int d) const {
        if (d == 0) return dom.is_unit(a[0]);
        if (tw[d - 1] == 'd') return is_unit(a, d - 1);
        T n[4];
        norm(a, n, d);
        return is_unit(n, d - 1);
    }
    void inv(const T* a, T* out, int d) const {
        if (d == 0) {
            out[0] = dom.inv(a[0]);
            return;
        }
        const int h = 1 << (d - 1);
        if (tw[d - 1] == 'd') {
            T ai[4], ai2[4], t[4];
            inv(a, ai, d - 1);
            mul(ai, ai, ai2, d - 1);
            mul(a + h, ai2, t, d - 1);
            for (int i = 0; i < h; ++i) {
                out[i] = ai[i];
                out[h + i] = dom.neg(t[i]);
            }
        } else {
            T n[4]{}, ni[4]{}, c0[4], t0[4], t1[4];
            norm(a, n, d);
            inv(n, ni, d - 1);
            sub(a, a + h, c0, d - 1);
            mul(c0, ni, t0, d - 1);
            mul(a + h, ni, t1, d - 1);
            for (int i = 0; i < h; ++i) {
                out[i] = t0[i];
                out[h + i] = dom.neg(t1[i]);
            }
        }
    }
};

struct Parser {
    std::string_view s;
    size_t i = 0;
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(std::string_view tok) {
        ws();
        if (s.substr(i, tok.size()) == tok) {
            i += tok.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw SpecError("malformed ring spec '" + std::string(s) + "': " + why);
    }
    Ring parse() {
        ws();
        if (eat("dual(")) return wrap(Ring::dual);
        if (eat("omega(")) return wrap(Ring::omega);
        if (eat("residue(")) return wrap(Ring::residue);
        if (eat("Zodd")) return Ring::odd_local();
        if (eat("Z/")) {
            ws();
            size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (st == i) fail("expected modulus");
            if (i - st > 18) fail("modulus too large");
            return Ring::int_mod(std::stoll(std::string(s.substr(st, i - st))));
        }
        if (eat("Z")) return Ring::integers();
        fail("unknown ring");
    }
    Ring wrap(Ring (*f)(const Ring&)) {
        Ring inner = parse();
        if (!eat(")")) fail("expected ')'");
        return f(inner);
    }
};

}  // namespace

struct RingImpl {
    Kind kind{};
    int64_t n = 0;
    Ring base;
    Ring concrete;  // residue rings delegate arithmetic here
    std::string spec;
    Mode mode{};
    Dom dom{};
    int64_t dmod = 0;
    int depth = 0;
    char tw[kMaxDepth + 1] = {};
    bool local = false;
    bool field = false;
    int rchar = 0;

    ModDom mdom() const { return ModDom{dmod}; }
    BigDom bdom() const { return BigDom{dom, mpz_class(std::to_string(dmod))}; }
    int width() const { return 1 << depth; }

    static Ring wrap(std::shared_ptr<RingImpl> p) {
        if (p->kind != Kind::Residue) {
            if (p->dom == Dom::Mod && p->depth <= 2 && p->dmod <= (int64_t(1) << 62))
                p->mode = Mode::SmallMod;
            else if (p->depth == 0 && p->dom == Dom::Int)
                p->mode = Mode::SmallInt;
            else if (p->depth == 0 && p->dom == Dom::Frac)
                p->mode = Mode::SmallFrac;
            else
                p->mode = Mode::Big;
        }
        return Ring(std::move(p));
    }

    const RingImpl& ar() const { return kind == Kind::Residue ? *concrete.impl() : *this; }

    std::vector<mpq_class> coeffs(const Value& v) const {
        std::vector<mpq_class> out(width());
        switch (mode) {
            case Mode::SmallMod:
                for (int i = 0; i < width(); ++i) out[i] = mpq_class(mpz_class(std::to_string(v.c[i])));
                break;
            case Mode::SmallInt:
                out[0] = v.big ? (*v.big)[0] : mpq_class(mpz_class(std::to_string(v.c[0])));
                break;
            case Mode::SmallFrac:
                if (v.big) out[0] = (*v.big)[0];
                else {
                    out[0] = mpq_class(mpz_class(std::to_string(v.c[0])), mpz_class(std::to_string(v.c[1])));
                    out[0].canonicalize();
                }
                break;
            case Mode::Big: out = *v.big; break;
        }
        return out;
    }

    Value from_coeffs(std::vector<mpq_class> cs) const {
        Value v;
        switch (mode) {
            case Mode::SmallMod:
                for (int i = 0; i < width(); ++i) {
                    mpz_class r = cs[i].get_num() % mpz_class(std::to_string(dmod));
                    if (r < 0) r += mpz_class(std::to_string(dmod));
                    v.c[i] = r.get_si();
                }
                return v;
            case Mode::SmallInt: return small_int(cs[0].get_num());
            case Mode::SmallFrac: return small_frac(cs[0]);
            case Mode::Big: {
                BigDom bd = bdom();
                for (auto& x : cs) bd.fix(x);
                v.big = std::make_shared<const std::vector<mpq_class>>(std::move(cs));
                return v;
            }
        }
        return v;
    }

    static Value small_int(const mpz_class& z) {
        Value v;
        if (z.fits_slong_p()) v.c[0] = z.get_si();
        else v.big = std::make_shared<const std::vector<mpq_class>>(1, mpq_class(z));
        return v;
    }
    static Value small_frac(mpq_class q) {
        q.canonicalize();
        Value v;
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
            v.c[0] = q.get_num().get_si();
            v.c[1] = q.get_den().get_si();
        } else {
            v.big = std::make_shared<const std::vector<mpq_class>>(1, q);
        }
        return v;
    }
    static Value frac_from128(__int128 num, __int128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
        if (fits64(num) && fits64(den)) {
            Value v;
            v.c[0] = static_cast<int64_t>(num);
            v.c[1] = static_cast<int64_t>(den);
            return v;
        }
        mpq_class q(to_mpz(num), to_mpz(den));
        return small_frac(q);
    }

    Value zero() const {
        Value v;
        if (mode == Mode::SmallFrac) v.c[1] = 1;
        if (mode == Mode::Big) v.big = std::make_shared<const std::vector<mpq_class>>(width());
        return v;
    }

    Value vint(int64_t x) const {
        const RingImpl& a = ar();
        if (&a != this) return a.vint(x);
        Value v = zero();
        switch (mode) {
            case Mode::SmallMod: v.c[0] = mod_norm(x, dmod); break;
            case Mode::SmallInt: v.c[0] = x; break;
            case Mode::SmallFrac: v.c[0] = x; v.c[1] = 1; break;
            case Mode::Big: {
                std::vector<mpq_class> cs(width());
                cs[0] = mpq_class(mpz_class(std::to_string(x)));
                return from_coeffs(std::move(cs));
            }
        }
        return v;
    }

    Value add(const Value& a, const Value& b) const {
        switch (mode) {
            case Mode::SmallMod: {
                Value r;
                ModDom d = mdom();
                for (int i = 0; i < width(); ++i) r.c[i] = d.add(a.c[i], b.c[i]);
                return r;
            }
            case Mode::SmallInt:
                if (!a.big && !b.big) {
                    int64_t s;
                    if (!__builtin_add_overflow(a.c[0], b.c[0], &s)) {
                        Value r;
                        r.c[0] = s;
                        return r;
                    }
                }
                return small_int(coeffs(a)[0].get_num() + coeffs(b)[0].get_num());
            case Mode::SmallFrac:
                if (!a.big && !b.big) {
                    __int128 num = static_cast<__int128>(a.c[0]) * b.c[1] + static_cast<__int128>(b.c[0]) * a.c[1];
                    __int128 den = static_cast<__int128>(a.c[1]) * b.c[1];
                    return frac_from128(num, den);
                }
                return small_frac(coeffs(a)[0] + coeffs(b)[0]);
            case Mode::Big: {
                BigDom d = bdom();
                std::vector<mpq_class> out(width());
                const auto& x = *a.big;
                const auto& y = *b.big;
                for (int i = 0; i < width(); ++i) out[i] = d.add(x[i], y[i]);
                Value r;
                r.big = std::make_shared<const std::vector<mpq_class>>(std::move(out));
                return r;
            }
        }
        return {};
    }

    Value neg(const Value& a) const {
        switch (mode) {
            case Mode::SmallMod: {
                Value r;
                ModDom d = mdom();
                for (int i = 0; i < width(); ++i) r.c[i] = d.neg(a.c[i]);
                return r;
            }
            case Mode::SmallInt:
                if (!a.big && a.c[0] != INT64_MIN) {
                    Value r;
                    r.c[0] = -a.c[0];
                    return r;
                }
                return small_int(-coeffs(a)[0].get_num());
            case Mode::SmallFrac:
                if (!a.big && a.c[0] != INT64_MIN) {
                    Value r;
                    r.c[0] = -a.c[0];
                    r.c[1] = a.c[1];
                    return r;
                }
                return small_frac(-coeffs(a)[0]);
            case Mode::Big: {
                BigDom d = bdom();
                std::vector<mpq_class> out(width());
                for (int i = 0; i < width(); ++i) out[i] = d.neg((*a.big)[i]);
                Value r;
                r.big = std::make_shared<const std::vector<mpq_class>>(std::move(out));
                return r;
            }
        }
        return {};
    }

    Value mul(const Value& a, const Value& b) const {
        switch (mode) {
            case Mode::SmallMod: {
                Value r;
                ModDom d = mdom();
                if (depth == 0) {
                    r.c[0] = d.mul(a.c[0], b.c[0]);
                    return r;
                }
                Tower<ModDom> t{d, tw};
                t.mul(a.c.data(), b.c.data(), r.c.data(), depth);
                return r;
            }
            case Mode::SmallInt:
                if (!a.big && !b.big) {
                    int64_t s;
                    if (!__builtin_mul_overflow(a.c[0], b.c[0], &s)) {
                        Value r;
                        r.c[0] = s;
                        return r;
                    }
                }
                return small_int(coeffs(a)[0].get_num() * coeffs(b)[0].get_num());
            case Mode::SmallFrac:
                if (!a.big && !b.big) {
                    __int128 num = static_cast<__int128>(a.c[0]) * b.c[0];
                    __int128 den = static_cast<__int128>(a.c[1]) * b.c[1];
                    return frac_from128(num, den);
                }
                return small_frac(coeffs(a)[0] * coeffs(b)[0]);
            case Mode::Big: {
                BigDom d = bdom();
                Tower<BigDom> t{d, tw};
                std::vector<mpq_class> out(width());
                t.mul(a.big->data(), b.big->data(), out.data(), depth);
                Value r;
                r.big = std::make_shared<const std::vector<mpq_class>>(std::move(out));
                return r;
            }
        }
        return {};
    }

    bool is_zero(const Value& a) const {
        switch (mode) {
            case Mode::SmallMod:
                for (int i = 0; i < width(); ++i)
                    if (a.c[i] != 0) return false;
                return true;
            case Mode::SmallInt:
            case Mode::SmallFrac: return !a.big && a.c[0] == 0;
            case Mode::Big:
                for (const auto& x : *a.big)
                    if (sgn(x) != 0) return false;
                return true;
        }
        return false;
    }

    bool equal(const Value& a, const Value& b) const {
        switch (mode) {
            case Mode::SmallMod:
                for (int i = 0; i < width(); ++i)
                    if (a.c[i] != b.c[i]) return false;
                return true;
            case Mode::SmallInt:
                if (!a.big && !b.big) return a.c[0] == b.c[0];
                if (a.big && b.big) return (*a.big)[0] == (*b.big)[0];
                return false;
            case Mode::SmallFrac:
                if (!a.big && !b.big) return a.c[0] == b.c[0] && a.c[1] == b.c[1];
                if (a.big && b.big) return (*a.big)[0] == (*b.big)[0];
                return false;
            case Mode::Big: return *a.big == *b.big;
        }
        return false;
    }

    bool is_unit(const Value& a) const {
        switch (mode) {
            case Mode::SmallMod: {
                ModDom d = mdom();
                Tower<ModDom> t{d, tw};
                return t.is_unit(a.c.data(), depth);
            }
            case Mode::SmallInt: return !a.big && (a.c[0] == 1 || a.c[0] == -1);
            case Mode::SmallFrac:
                if (!a.big) return (a.c[0] & 1) != 0;
                return mpz_odd_p((*a.big)[0].get_num_mpz_t()) != 0;
            case Mode::Big: {
                BigDom d = bdom();
                Tower<BigDom> t{d, tw};
                return t.is_unit(a.big->data(), depth);
            }
        }
        return false;
    }

    Value inv(const Value& a) const {
        if (!is_unit(a)) throw NonUnit("element " + format(a) + " is not a unit in " + spec);
        switch (mode) {
            case Mode::SmallMod: {
                ModDom d = mdom();
                Tower<ModDom> t{d, tw};
                Value r;
                t.inv(a.c.data(), r.c.data(), depth);
                return r;
            }
            case Mode::SmallInt: return a;
            case Mode::SmallFrac: {
                if (!a.big) return frac_from128(a.c[1], a.c[0]);
                mpq_class q = 1 / (*a.big)[0];
                return small_frac(q);
            }
            case Mode::Big: {
                BigDom d = bdom();
                Tower<BigDom> t{d, tw};
                std::vector<mpq_class> out(width());
                t.inv(a.big->data(), out.data(), depth);
                Value r;
                r.big = std::make_shared<const std::vector<mpq_class>>(std::move(out));
                return r;
            }
        }
        return {};
    }

    // Residues of the base-domain coefficients, collapsed level by level.
    std::vector<int64_t> collapse(const std::vector<int64_t>& v, int d) const {
        if (d == 0) return v;
        const size_t h = v.size() / 2;
        std::vector<int64_t> lo(v.begin(), v.begin() + static_cast<long>(h));
        std::vector<int64_t> hi(v.begin() + static_cast<long>(h), v.end());
        lo = collapse(lo, d - 1);
        if (tw[d - 1] == 'd') return lo;
        hi = collapse(hi, d - 1);
        if (rchar == 3) {
            for (size_t i = 0; i < lo.size(); ++i) lo[i] = (lo[i] + hi[i]) % 3;
            return lo;
        }
        lo.insert(lo.end(), hi.begin(), hi.end());
        return lo;
    }

    Value residue_value(const Value& a) const {
        if (!local) throw NotLocal(spec + " is not local");
        if (kind == Kind::Residue) return a;
        const int p = rchar;
        std::vector<int64_t> r(width());
        if (mode == Mode::SmallMod) {
            for (int i = 0; i < width(); ++i) r[i] = a.c[i] % p;
        } else {
            auto cs = coeffs(a);
            for (int i = 0; i < width(); ++i) {
                mpz_class z = cs[i].get_num() % p;
                if (z < 0) z += p;
                r[i] = z.get_si();
            }
        }
        r = collapse(r, depth);
        Value v;
        for (size_t i = 0; i < r.size(); ++i) v.c[i] = r[i];
        return v;
    }

    json to_json_rec(const std::vector<mpq_class>& cs, size_t off, int d) const {
        if (d == 0) {
            const mpq_class& q = cs[off];
            if (dom == Dom::Frac && q.get_den() != 1) {
                json j;
                j["num"] = q.get_num().fits_slong_p() ? json(q.get_num().get_si()) : json(q.get_num().get_str());
                j["den"] = q.get_den().fits_slong_p() ? json(q.get_den().get_si()) : json(q.get_den().get_str());
                return j;
            }
            if (q.get_num().fits_slong_p()) return json(q.get_num().get_si());
            return json(q.get_num().get_str());
        }
        const size_t h = size_t(1) << (d - 1);
        json j;
        j["a"] = to_json_rec(cs, off, d - 1);
        j["b"] = to_json_rec(cs, off + h, d - 1);
        return j;
    }

    json to_json(const Value& a) const {
        if (kind == Kind::Residue) return concrete.to_json(a);
        if (mode == Mode::SmallMod && depth == 0) return json(a.c[0]);
        if (mode == Mode::SmallInt && !a.big) return json(a.c[0]);
        return to_json_rec(coeffs(a), 0, depth);
    }

    static mpq_class scalar_from_json(const json& j) {
        if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<int64_t>())));
        if (j.is_string()) {
            std::string s = j.get<std::string>();
            auto slash = s.find('/');
            try {
                if (slash == std::string::npos) return mpq_class(mpz_class(s));
                mpq_class q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
                if (q.get_den() == 0) throw SpecError("zero denominator");
                q.canonicalize();
                return q;
            } catch (const std::invalid_argument&) {
                throw SpecError("cannot parse element '" + s + "'");
            }
        }
        if (j.is_object() && j.contains("num")) {
            mpq_class q(scalar_from_json(j.at("num")).get_num(), scalar_from_json(j.value("den", json(1))).get_num());
            if (q.get_den() == 0) throw SpecError("zero denominator");
            q.canonicalize();
            return q;
        }
        throw SpecError("cannot parse element " + j.dump());
    }

    void from_json_rec(const json& j, std::vector<mpq_class>& cs, size_t off, int d) const {
        if (d == 0) {
            cs[off] = scalar_from_json(j);
            return;
        }
        const size_t h = size_t(1) << (d - 1);
        if (j.is_object() && j.contains("a")) {
            from_json_rec(j.at("a"), cs, off, d - 1);
            from_json_rec(j.value("b", json(0)), cs, off + h, d - 1);
        } else {
            from_json_rec(j, cs, off, d - 1);
        }
    }

    Value from_json(const json& j) const {
        if (kind == Kind::Residue) return concrete.from_json(j);
        std::vector<mpq_class> cs(width());
        from_json_rec(j, cs, 0, depth);
        // Fractions are accepted in any ring where the denominator is a unit.
        std::vector<mpq_class> ints(width());
        Value acc = zero();
        for (int i = 0; i < width(); ++i) {
            if (dom == Dom::Frac && mpz_even_p(cs[i].get_den_mpz_t()))
                throw SpecError(cs[i].get_str() + " has an even denominator");
            if (cs[i].get_den() == 1 || dom == Dom::Frac) continue;
            Value den = vint_mpz(cs[i].get_den());
            Value num = vint_mpz(cs[i].get_num());
            std::vector<mpq_class> unit(width());
            unit[i] = 1;
            Value basis = from_coeffs(unit);
            acc = add(acc, mul(mul(num, inv(den)), basis));
            cs[i] = 0;
        }
        return add(acc, from_coeffs(std::move(cs)));
    }

    Value vint_mpz(const mpz_class& z) const {
        std::vector<mpq_class> cs(width());
        cs[0] = mpq_class(z);
        return from_coeffs(std::move(cs));
    }

    std::string format_rec(const std::vector<mpq_class>& cs, size_t off, int d) const {
        if (d == 0) return cs[off].get_str();
        const size_t h = size_t(1) << (d - 1);
        return "[" + format_rec(cs, off, d - 1) + "," + format_rec(cs, off + h, d - 1) + "]";
    }

    std::string format(const Value& a) const {
        if (kind == Kind::Residue) return concrete.format(a);
        return format_rec(coeffs(a), 0, depth);
    }
};

namespace {

int64_t prime_base(int64_t n) {
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int64_t m = n;
            while (m % p == 0) m /= p;
            return m == 1 ? p : 0;
        }
    }
    return n;
}

Ring concrete_field(const Ring& r) {
    switch (r.kind()) {
        case Kind::IntMod: return Ring::int_mod(prime_base(r.modulus()));
        case Kind::OddLocal: return Ring::int_mod(2);
        case Kind::Dual: return concrete_field(r.base());
        case Kind::Omega: {
            Ring k = concrete_field(r.base());
            if (r.characteristic_of_residue() == 3) return k;
            return Ring::omega(k);
        }
        case Kind::Residue: return r.impl()->concrete;
        case Kind::Integers: break;
    }
    throw NotLocal(r.spec() + " is not local");
}

}  // namespace

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

Ring Ring::make(std::string_view spec) {
    Parser p{spec};
    Ring r = p.parse();
    p.ws();
    if (p.i != spec.size()) p.fail("trailing characters");
    return r;
}

Ring Ring::integers() {
    auto p = std::make_shared<RingImpl>();
    p->kind = Kind::Integers;
    p->spec = "Z";
    p->dom = Dom::Int;
    return RingImpl::wrap(p);
}

Ring Ring::int_mod(int64_t n) {
    if (n < 2) throw SpecError("Z/n requires n >= 2");
    auto p = std::make_shared<RingImpl>();
    p->kind = Kind::IntMod;
    p->n = n;
    p->spec = "Z/" + std::to_string(n);
    p->dom = Dom::Mod;
    p->dmod = n;
    const int64_t b = prime_base(n);
    p->local = b != 0;
    p->rchar = static_cast<int>(b);
    p->field = is_prime(n);
    return RingImpl::wrap(p);
}

Ring Ring::odd_local() {
    auto p = std::make_shared<RingImpl>();
    p->kind = Kind::OddLocal;
    p->spec = "Zodd";
    p->dom = Dom::Frac;
    p->local = true;
    p->rchar = 2;
    return RingImpl::wrap(p);
}

Ring Ring::dual(const Ring& base) {
    const RingImpl& b = base.impl()->ar();
    if (b.depth >= kMaxDepth) throw SpecError("ring tower deeper than " + std::to_string(kMaxDepth));
    auto p = std::make_shared<RingImpl>();
    p->kind = Kind::Dual;
    p->base = base;
    p->spec = "dual(" + base.spec() + ")";
    p->dom = b.dom;
    p->dmod = b.dmod;
    p->depth = b.depth + 1;
    std::copy(b.tw, b.tw + b.depth, p->tw);
    p->tw[b.depth] = 'd';
    p->local = base.is_local();
    p->rchar = base.impl()->rchar;
    return RingImpl::wrap(p);
}

Ring Ring::omega(const Ring& base) {
    const RingImpl& b = base.impl()->ar();
    if (b.depth >= kMaxDepth) throw SpecError("ring tower deeper than " + std::to_string(kMaxDepth));
    auto p = std::make_shared<RingImpl>();
    p->kind = Kind::Omega;
    p->base = base;
    p->spec = "omega(" + base.spec() + ")";
    p->dom = b.dom;
    p->dmod = b.dmod;
    p->depth = b.depth + 1;
    std::copy(b.tw, b.tw + b.depth, p->tw);
    p->tw[b.depth] = 'o';
    if (base.is_local()) {
        const int ch = base.impl()->rchar;
        p->rchar = ch;
        if (ch == 3) {
            p->local = true;
        } else {
            // x^2+x+1 has no root in the residue field iff it is F_p with p = 2 mod 3
            Ring k = concrete_field(base);
            p->local = k.kind() == Kind::IntMod && ch % 3 == 2;
            if (!p->local) p->rchar = 0;
            p->field = p->local && base.is_field();
        }
    }
    return RingImpl::wrap(p);
}

Ring Ring::residue(const Ring& of) {
    if (!of.is_local()) throw NotLocal("residue of non-local ring " + of.spec());
    auto p = std::make_shared<RingImpl>();
    Ring k = concrete_field(of);
    const RingImpl& c = *k.impl();
    p->kind = Kind::Residue;
    p->base = of;
    p->concrete = k;
    p->spec = "residue(" + of.spec() + ")";
    p->mode = c.mode;
    p->dom = c.dom;
    p->dmod = c.dmod;
    p->depth = c.depth;
    std::copy(c.tw, c.tw + c.depth, p->tw);
    p->local = true;
    p->field = true;
    p->rchar = of.impl()->rchar;
    return RingImpl::wrap(p);
}

Kind Ring::kind() const { return p_->kind; }
const std::string& Ring::spec() const { return p_->spec; }
int64_t Ring::modulus() const { return p_->n; }
const Ring& Ring::base() const { return p_->base; }
bool Ring::is_local() const { return p_->local; }
bool Ring::is_field() const { return p_->field; }
bool Ring::local_without_half() const { return p_->local && p_->rchar == 2; }
int Ring::characteristic_of_residue() const { return p_->rchar; }
Ring Ring::residue_field() const {
    if (p_->kind == Kind::Residue) return *this;
    return residue(*this);
}

int64_t Ring::field_order() const {
    if (!p_->field) return 0;
    switch (p_->kind) {
        case Kind::IntMod: return p_->n;
        case Kind::Residue: return p_->concrete.field_order();
        case Kind::Omega: {
            int64_t q = p_->base.field_order();
            return q * q;
        }
        default: return 0;
    }
}

bool Ring::operator==(const Ring& o) const {
    return p_ == o.p_ || (p_ && o.p_ && p_->spec == o.p_->spec);
}

Value Ring::vzero() const { return p_->ar().zero(); }
Value Ring::vone() const { return p_->vint(1); }
Value Ring::vint(int64_t v) const { return p_->vint(v); }
Value Ring::vmpz(const mpz_class& v) const { return p_->ar().vint_mpz(v); }
Value Ring::add(const Value& a, const Value& b) const { return p_->ar().add(a, b); }
Value Ring::sub(const Value& a, const Value& b) const {
    const RingImpl& r = p_->ar();
    if (r.mode == Mode::SmallMod) {
        Value out;
        ModDom d = r.mdom();
        for (int i = 0; i < r.width(); ++i) out.c[i] = d.sub(a.c[i], b.c[i]);
        return out;
    }
    return r.add(a, r.neg(b));
}
Value Ring::neg(const Value& a) const { return p_->ar().neg(a); }
Value Ring::mul(const Value& a, const Value& b) const { return p_->ar().mul(a, b); }
void Ring::fma(Value& acc, const Value& a, const Value& b) const {
    const RingImpl& r = p_->ar();
    if (r.mode == Mode::SmallMod && r.depth == 0) {
        int64_t s = acc.c[0] + mod_mul(a.c[0], b.c[0], r.dmod);
        acc.c[0] = s >= r.dmod ? s - r.dmod : s;
        return;
    }
    acc = r.add(acc, r.mul(a, b));
}
bool Ring::is_zero(const Value& a) const { return p_->ar().is_zero(a); }
bool Ring::equal(const Value& a, const Value& b) const { return p_->ar().equal(a, b); }
bool Ring::is_unit(const Value& a) const { return p_->ar().is_unit(a); }
Value Ring::inv(const Value& a) const { return p_->ar().inv(a); }
bool Ring::in_radical(const Value& a) const {
    if (!p_->local) throw NotLocal(p_->spec + " is not local");
    return !is_unit(a);
}
Value Ring::residue_value(const Value& a) const { return p_->residue_value(a); }
json Ring::to_json(const Value& a) const { return p_->to_json(a); }
Value Ring::from_json(const json& j) const { return p_->from_json(j); }
std::string Ring::format(const Value& a) const { return p_->format(a); }
bool Ring::as_integer(const Value& a, mpz_class& out) const {
    const RingImpl& r = p_->ar();
    if (r.depth != 0) return false;
    mpq_class q = r.coeffs(a)[0];
    if (q.get_den() != 1) return false;
    out = q.get_num();
    return true;
}

Element Ring::zero() const { return Element(*this, vzero()); }
Element Ring::one() const { return Element(*this, vone()); }
Element Ring::from_int(int64_t v) const { return Element(*this, vint(v)); }
Element Ring::from_mpz(const mpz_class& v) const { return Element(*this, vmpz(v)); }

Element Ring::xi() const {
    const RingImpl& r = p_->ar();
    if (r.depth == 0 || r.tw[r.depth - 1] != 'o') throw SpecError(p_->spec + " has no omega generator");
    std::vector<mpq_class> cs(r.width());
    cs[r.width() / 2] = 1;
    return Element(*this, r.from_coeffs(std::move(cs)));
}

Element Ring::random(std::mt19937_64& rng) const {
    const RingImpl& r = p_->ar();
    std::vector<mpq_class> cs(r.width());
    for (auto& c : cs) {
        switch (r.dom) {
            case Dom::Mod: {
                std::uniform_int_distribution<int64_t> d(0, r.dmod - 1);
                c = mpq_class(mpz_class(std::to_string(d(rng))));
                break;
            }
            case Dom::Int: {
                std::uniform_int_distribution<int> d(-9, 9);
                c = d(rng);
                break;
            }
            case Dom::Frac: {
                std::uniform_int_distribution<int> dn(-30, 30), dd(0, 14);
                c = mpq_class(dn(rng), 2 * dd(rng) + 1);
                c.canonicalize();
                break;
            }
        }
    }
    return Element(*this, r.from_coeffs(std::move(cs)));
}

Element Ring::random_unit(std::mt19937_64& rng) const {
    for (;;) {
        Element e = random(rng);
        if (e.is_unit()) return e;
    }
}

Element Ring::random_radical(std::mt19937_64& rng) const {
    if (!is_local()) throw NotLocal(spec() + " is not local");
    for (int k = 0; k < 256; ++k) {
        Element e = random(rng);
        if (!e.is_unit()) return e;
    }
    return zero();
}

Element Ring::parse(const json& j) const { return Element(*this, from_json(j)); }

Element Ring::parse(std::string_view text) const {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) j = json(std::string(text));
    return parse(j);
}

void Element::check(const Element& o) const {
    if (ring_ != o.ring_) throw RingMismatch("elements of " + ring_.spec() + " and " + o.ring_.spec());
}

Element Element::operator+(const Element& o) const {
    check(o);
    return Element(ring_, ring_.add(v_, o.v_));
}
Element Element::operator-(const Element& o) const {
    check(o);
    return Element(ring_, ring_.sub(v_, o.v_));
}
Element Element::operator*(const Element& o) const {
    check(o);
    return Element(ring_, ring_.mul(v_, o.v_));
}
Element Element::operator-() const { return Element(ring_, ring_.neg(v_)); }
bool Element::operator==(const Element& o) const { return ring_ == o.ring_ && ring_.equal(v_, o.v_); }
Element Element::inverse() const { return Element(ring_, ring_.inv(v_)); }
Element Element::pow(int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    Element r = ring_.one(), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}
Element Element::residue() const { return Element(ring_.residue_field(), ring_.residue_value(v_)); }

Element arith(const Element& a, const Element& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
    }
    return a;
}

}  // namespace chevkit
