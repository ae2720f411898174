#include "chevkit/linsolve.hpp"

#include <algorithm>
#include <numeric>

namespace chevkit {

size_t BitVec::next(size_t from) const {
    if (from >= n_) return n_;
    size_t k = from >> 6;
    uint64_t w = w_[k] & (~uint64_t(0) << (from & 63));
    while (true) {
        if (w) {
            size_t i = (k << 6) + static_cast<size_t>(__builtin_ctzll(w));
            return i < n_ ? i : n_;
        }
        if (++k >= w_.size()) return n_;
        w = w_[k];
    }
}

std::vector<size_t> BitVec::ones() const {
    std::vector<size_t> out;
    for (size_t i = next(0); i < n_; i = next(i + 1)) out.push_back(i);
    return out;
}

Gf2Echelon gf2_echelon(std::vector<BitVec> rows, size_t nvars) {
    Gf2Echelon e;
    e.nvars = nvars;
    size_t r = 0;
    for (size_t c = 0; c < nvars && r < rows.size(); ++c) {
        size_t p = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (rows[i].get(c)) {
                p = i;
                break;
            }
        if (p == rows.size()) continue;
        // Keep the remaining equations in their original relative order.
        if (p != r) std::rotate(rows.begin() + static_cast<long>(r), rows.begin() + static_cast<long>(p), rows.begin() + static_cast<long>(p) + 1);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
        e.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    e.rows = std::move(rows);
    return e;
}

std::vector<BitVec> Gf2Echelon::nullspace() const {
    std::vector<char> is_piv(nvars, 0);
    for (size_t c : pivots) is_piv[c] = 1;
    std::vector<BitVec> basis;
    for (size_t f = 0; f < nvars; ++f) {
        if (is_piv[f]) continue;
        BitVec v(nvars);
        v.set(f);
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].get(f)) v.set(pivots[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool Gf2Echelon::contains(const BitVec& v) const {
    BitVec w = v;
    for (size_t i = 0; i < rows.size(); ++i)
        if (w.get(pivots[i])) w ^= rows[i];
    return !w.any();
}

void Gf2Echelon::insert(BitVec v) {
    for (size_t i = 0; i < rows.size(); ++i)
        if (v.get(pivots[i])) v ^= rows[i];
    size_t c = v.next(0);
    if (c >= nvars) return;
    for (auto& row : rows)
        if (row.get(c)) row ^= v;
    auto pos = std::lower_bound(pivots.begin(), pivots.end(), c) - pivots.begin();
    pivots.insert(pivots.begin() + pos, c);
    rows.insert(rows.begin() + pos, std::move(v));
}

std::vector<BitVec> gf2_nullspace(std::vector<BitVec> rows, size_t nvars) { return gf2_echelon(std::move(rows), nvars).nullspace(); }

size_t gf2_rank(const std::vector<BitVec>& rows, size_t nvars) { return gf2_echelon(rows, nvars).rank(); }

std::vector<std::vector<Value>> field_nullspace(const Ring& f, const std::vector<SparseRow>& sparse, size_t nvars) {
    std::vector<std::vector<Value>> rows;
    rows.reserve(sparse.size());
    for (const auto& s : sparse) {
        std::vector<Value> d(nvars, f.vzero());
        for (const auto& [c, v] : s) d[c] = f.add(d[c], v);
        rows.push_back(std::move(d));
    }
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < nvars && r < rows.size(); ++c) {
        size_t p = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (!f.is_zero(rows[i][c])) {
                p = i;
                break;
            }
        if (p == rows.size()) continue;
        if (p != r) std::rotate(rows.begin() + static_cast<long>(r), rows.begin() + static_cast<long>(p), rows.begin() + static_cast<long>(p) + 1);
        Value inv = f.inv(rows[r][c]);
        for (size_t j = c; j < nvars; ++j)
            if (!f.is_zero(rows[r][j])) rows[r][j] = f.mul(rows[r][j], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || f.is_zero(rows[i][c])) continue;
            Value k = f.neg(rows[i][c]);
            for (size_t j = c; j < nvars; ++j)
                if (!f.is_zero(rows[r][j])) f.fma(rows[i][j], k, rows[r][j]);
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<char> is_piv(nvars, 0);
    for (size_t c : piv) is_piv[c] = 1;
    std::vector<std::vector<Value>> basis;
    for (size_t fr = 0; fr < nvars; ++fr) {
        if (is_piv[fr]) continue;
        std::vector<Value> v(nvars, f.vzero());
        v[fr] = f.vone();
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(rows[i][fr]);
        basis.push_back(std::move(v));
    }
    return basis;
}

size_t field_rank(const Ring& f, std::vector<std::vector<Value>> rows) {
    if (rows.empty()) return 0;
    const size_t nc = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < nc && r < rows.size(); ++c) {
        size_t p = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (!f.is_zero(rows[i][c])) {
                p = i;
                break;
            }
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Value inv = f.inv(rows[r][c]);
        for (size_t i = r + 1; i < rows.size(); ++i) {
            if (f.is_zero(rows[i][c])) continue;
            Value k = f.neg(f.mul(rows[i][c], inv));
            for (size_t j = c; j < nc; ++j)
                if (!f.is_zero(rows[r][j])) f.fma(rows[i][j], k, rows[r][j]);
        }
        ++r;
    }
    return r;
}

std::vector<std::vector<mpq_class>> rational_nullspace(const std::vector<QRow>& sparse, size_t nvars) {
    std::vector<std::vector<mpq_class>> rows;
    for (const auto& s : sparse) {
        std::vector<mpq_class> d(nvars);
        for (const auto& [c, v] : s) d[c] += v;
        rows.push_back(std::move(d));
    }
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < nvars && r < rows.size(); ++c) {
        size_t p = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (sgn(rows[i][c]) != 0) {
                p = i;
                break;
            }
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        mpq_class inv = 1 / rows[r][c];
        for (size_t j = c; j < nvars; ++j) rows[r][j] *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            mpq_class k = rows[i][c];
            for (size_t j = c; j < nvars; ++j)
                if (sgn(rows[r][j]) != 0) rows[i][j] -= k * rows[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<char> is_piv(nvars, 0);
    for (size_t c : piv) is_piv[c] = 1;
    std::vector<std::vector<mpq_class>> basis;
    for (size_t fr = 0; fr < nvars; ++fr) {
        if (is_piv[fr]) continue;
        std::vector<mpq_class> v(nvars);
        v[fr] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][fr];
        basis.push_back(std::move(v));
    }
    return basis;
}

UnionFind::UnionFind(size_t n) : p_(n) { std::iota(p_.begin(), p_.end(), size_t(0)); }

size_t UnionFind::find(size_t x) {
    while (p_[x] != x) {
        p_[x] = p_[p_[x]];
        x = p_[x];
    }
    return x;
}

void UnionFind::unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) p_[std::max(a, b)] = std::min(a, b);
}

}  // namespace chevkit
