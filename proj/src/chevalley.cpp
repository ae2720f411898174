#include "chevkit/chevalley.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace chevkit {

StructureConstants::StructureConstants(const RootSystem& sys)
    : sys_(sys), nr_(sys.num_roots()), table_(static_cast<size_t>(nr_) * nr_, 0) {
    for (int a = 0; a < nr_; ++a)
        for (int b = 0; b < nr_; ++b)
            if (sys_.sum(a, b)) compute(a, b);
}

const StructureConstants& StructureConstants::of(const RootSystem& sys) {
    static std::mutex mu;
    static std::map<const RootSystem*, std::unique_ptr<StructureConstants>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[&sys];
    if (!slot) slot = std::make_unique<StructureConstants>(sys);
    return *slot;
}

// Extraspecial-pair recursion: N is +1 on each extraspecial pair, and the
// remaining signs follow from the standard identities.
int StructureConstants::compute(int a, int b) {
    int& slot = table_[a * nr_ + b];
    if (slot != 0) return slot;
    auto x = sys_.sum(a, b);
    if (!x) return 0;
    const bool pa = RootSystem::is_positive(a), pb = RootSystem::is_positive(b);
    int v = 0;
    if (pa && pb) {
        if (a > b) {
            v = -compute(b, a);
        } else {
            int ga = -1, de = -1;
            for (int g = 0; g < nr_; g += 2) {
                Coords2 d = sys_.root(*x);
                for (size_t k = 0; k < d.size(); ++k) d[k] -= sys_.root(g)[k];
                auto di = sys_.index_of(d);
                if (di && RootSystem::is_positive(*di)) {
                    ga = g;
                    de = *di;
                    break;
                }
            }
            if (ga == a) {
                v = 1;
            } else {
                const int A = a, B = b, C = RootSystem::neg(ga), D = RootSystem::neg(de);
                auto nn = [&](int u, int w) { return sys_.sum(u, w) ? compute(u, w) : 0; };
                v = nn(B, C) * nn(A, D) + nn(C, A) * nn(B, D);
            }
        }
    } else if (!pa && !pb) {
        v = -compute(RootSystem::neg(a), RootSystem::neg(b));
    } else if (pa) {
        if (RootSystem::is_positive(*x)) v = compute(*x, RootSystem::neg(b));
        else v = -compute(RootSystem::neg(a), RootSystem::neg(b));
    } else {
        v = -compute(b, a);
    }
    slot = v;
    return v;
}

std::vector<int64_t> bracket(const RootSystem& sys, int i, int j) {
    const int n = sys.dim(), nr = sys.num_roots();
    std::vector<int64_t> out(n, 0);
    const auto& N = StructureConstants::of(sys);
    if (i >= nr && j >= nr) return out;
    if (i >= nr) {
        auto v = bracket(sys, j, i);
        for (auto& x : v) x = -x;
        return v;
    }
    // i is a root vector x_a
    if (j >= nr) {
        // [x_a, h_k] = -<a, alpha_k> x_a
        out[i] = -sys.pairing(i, sys.simple_root(j - nr + 1));
        return out;
    }
    if (j == RootSystem::neg(i)) {
        const auto& c = sys.simple_coefficients(i);
        for (int k = 0; k < sys.rank(); ++k) out[nr + k] = c[k];
        return out;
    }
    if (auto s = sys.sum(i, j)) out[*s] = N(i, j);
    return out;
}

Matrix ad_matrix(const RootSystem& sys, int alpha) {
    const int n = sys.dim();
    Ring z = Ring::integers();
    Matrix m(z, n, n);
    for (int j = 0; j < n; ++j) {
        auto col = bracket(sys, alpha, j);
        for (int i = 0; i < n; ++i)
            if (col[i] != 0) m.set_int(i, j, col[i]);
    }
    return m;
}

Matrix divided_power(const Matrix& m, int k) {
    if (m.ring().kind() != Kind::Integers) throw std::invalid_argument("divided_power expects an integer matrix");
    if (k < 0) throw std::invalid_argument("negative divided power");
    Matrix p = m.pow(k);
    mpz_class fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    if (fact == 1) return p;
    Matrix out(m.ring(), p.rows(), p.cols());
    mpz_class z;
    for (size_t i = 0; i < p.rows(); ++i)
        for (size_t j = 0; j < p.cols(); ++j) {
            p.ring().as_integer(p.at(i, j), z);
            if (z % fact != 0)
                throw DivisibilityViolation("entry (" + std::to_string(i) + "," + std::to_string(j) + ") of M^" + std::to_string(k) +
                                            " is not divisible by " + fact.get_str());
            if (z != 0) out.at(i, j) = out.ring().vmpz(z / fact);
        }
    return out;
}

const std::vector<IntEntry>& ad_power_entries(const RootSystem& sys, int alpha, int k) {
    static std::mutex mu;
    static std::map<std::tuple<const RootSystem*, int, int>, std::vector<IntEntry>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({&sys, alpha, k});
        if (it != cache.end()) return it->second;
    }
    Matrix d = divided_power(ad_matrix(sys, alpha), k);
    std::vector<IntEntry> e;
    mpz_class z;
    for (size_t i = 0; i < d.rows(); ++i)
        for (size_t j = 0; j < d.cols(); ++j) {
            d.ring().as_integer(d.at(i, j), z);
            if (z != 0) e.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), z.get_si()});
        }
    if (k == 3 && !e.empty()) throw std::logic_error("ad x_a is not nilpotent of degree 3");
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_tuple(&sys, alpha, k), std::move(e)).first->second;
}

Matrix x_elem(const Ring& r, const RootSystem& sys, int alpha, const Element& t) {
    if (t.ring() != r) throw RingMismatch("parameter ring differs from matrix ring");
    Matrix m = Matrix::identity(r, sys.dim());
    if (t.is_zero()) return m;
    Element tk = t;
    for (int k = 1; k <= 2; ++k) {
        for (const auto& e : ad_power_entries(sys, alpha, k)) {
            Value c = r.mul(r.vint(e.v), tk.value());
            m.at(e.row, e.col) = r.add(m.at(e.row, e.col), c);
        }
        tk = tk * t;
    }
    return m;
}

Matrix x_elem(const Ring& r, const RootSystem& sys, int alpha, int64_t t) { return x_elem(r, sys, alpha, r.from_int(t)); }

Matrix w_elem(const Ring& r, const RootSystem& sys, int alpha, const Element& t) {
    Element ti = t.inverse();
    return x_elem(r, sys, alpha, t) * x_elem(r, sys, RootSystem::neg(alpha), -ti) * x_elem(r, sys, alpha, t);
}

Matrix w_elem(const Ring& r, const RootSystem& sys, int alpha, int64_t t) { return w_elem(r, sys, alpha, r.from_int(t)); }

Matrix h_elem(const Ring& r, const RootSystem& sys, int alpha, const Element& t) {
    // w_a(1)^{-1} = w_a(-1)
    Matrix h = w_elem(r, sys, alpha, t) * w_elem(r, sys, alpha, -1);
    if (!h.is_diagonal()) throw std::logic_error("h_a(t) is not diagonal");
    return h;
}

Matrix h_closed_form(const Ring& r, const RootSystem& sys, int alpha, const Element& t) {
    Matrix h = Matrix::identity(r, sys.dim());
    for (int b = 0; b < sys.num_roots(); ++b) h.set(b, b, t.pow(sys.pairing(b, alpha)));
    return h;
}

Matrix q_elem(const Ring& r, const RootSystem& sys, int alpha) { return w_elem(r, sys, alpha, 1) * x_elem(r, sys, alpha, 1); }

Matrix wij_elem(const Ring& r, const RootSystem& sys, const OrthogonalSequence& seq, int i, int j) {
    if (i == j) throw std::invalid_argument("w_ij needs i != j");
    const int c = seq.connector(i, j);
    Matrix wc = w_elem(r, sys, c, 1);
    return wc * w_elem(r, sys, seq.gammas.at(i), 1) * w_elem(r, sys, seq.gammas.at(j), 1) * wc;
}

}  // namespace chevkit
