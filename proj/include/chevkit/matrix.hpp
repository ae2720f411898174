#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chevkit/ring.hpp"

namespace chevkit {

struct SingularMatrix : std::domain_error {
    using std::domain_error::domain_error;
};

// Dense row-major matrix over a ring.
class Matrix {
public:
    Matrix() = default;
    Matrix(Ring r, size_t rows, size_t cols);

    static Matrix zero(const Ring& r, size_t n) { return Matrix(r, n, n); }
    static Matrix identity(const Ring& r, size_t n);
    static Matrix from_ints(const Ring& r, const std::vector<std::vector<int64_t>>& rows);

    const Ring& ring() const { return ring_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t n() const { return rows_; }
    bool square() const { return rows_ == cols_; }

    const Value& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    Value& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    Element get(size_t i, size_t j) const { return Element(ring_, at(i, j)); }
    void set(size_t i, size_t j, const Element& e);
    void set_int(size_t i, size_t j, int64_t v) { at(i, j) = ring_.vint(v); }
    bool is_zero_at(size_t i, size_t j) const { return ring_.is_zero(at(i, j)); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Element& s) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix pow(int64_t k) const;
    Matrix inverse() const;
    Element det() const;
    Matrix transpose() const;
    Matrix sub(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const;
    Matrix sub(const std::vector<size_t>& idx) const { return sub(idx, idx); }

    bool is_identity() const;
    bool is_zero() const;
    bool is_diagonal() const;
    size_t nonzeros() const;

    // Entrywise image in another ring; entries must be integers (or the rings coincide).
    Matrix change_ring(const Ring& target) const;
    Matrix residue() const;
    // Rank over a field via elimination.
    size_t rank() const;
    // Rank of the residue matrix of a matrix over a local ring.
    size_t residue_rank() const { return residue().rank(); }

    json to_json() const;
    static Matrix from_json(const json& j);
    static Matrix from_json(const json& j, const Ring& r);
    std::string str() const;

    // Per-row column indices of nonzero entries.
    std::vector<std::vector<uint32_t>> row_support() const;

private:
    Ring ring_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Value> a_;
};

void check_same_ring(const Matrix& a, const Matrix& b);

Matrix commutator(const Matrix& a, const Matrix& b, const Matrix& a_inv, const Matrix& b_inv);

}  // namespace chevkit
