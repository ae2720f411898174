#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chevkit/ring.hpp"

namespace chevkit {

// Dense bit vector over GF(2).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    size_t size() const { return n_; }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }
    void clear(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    BitVec& operator^=(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    // Lowest set index >= from, or size() if none.
    size_t next(size_t from) const;
    std::vector<size_t> ones() const;

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

// Reduced row echelon form over GF(2) with pivots chosen by increasing
// unknown id and, within a column, the lowest remaining equation.
struct Gf2Echelon {
    size_t nvars = 0;
    std::vector<BitVec> rows;     // reduced pivot rows
    std::vector<size_t> pivots;   // pivot column of each row
    size_t rank() const { return rows.size(); }
    std::vector<BitVec> nullspace() const;
    bool contains(const BitVec& v) const;  // v in the row space
    void insert(BitVec v);                  // incremental insert, keeps full reduction
};

Gf2Echelon gf2_echelon(std::vector<BitVec> rows, size_t nvars);
std::vector<BitVec> gf2_nullspace(std::vector<BitVec> rows, size_t nvars);
size_t gf2_rank(const std::vector<BitVec>& rows, size_t nvars);

// Sparse rows over an arbitrary field given as a Ring handle.
using SparseRow = std::vector<std::pair<uint32_t, Value>>;
std::vector<std::vector<Value>> field_nullspace(const Ring& field, const std::vector<SparseRow>& rows, size_t nvars);
size_t field_rank(const Ring& field, std::vector<std::vector<Value>> rows);

// Rational nullspace basis in reduced form: each basis vector has a 1 at its
// free unknown and 0 at the other free unknowns.
using QRow = std::vector<std::pair<uint32_t, mpq_class>>;
std::vector<std::vector<mpq_class>> rational_nullspace(const std::vector<QRow>& rows, size_t nvars);

// Disjoint-set forest used for component splitting.
class UnionFind {
public:
    explicit UnionFind(size_t n);
    size_t find(size_t x);
    void unite(size_t a, size_t b);

private:
    std::vector<size_t> p_;
};

}  // namespace chevkit
