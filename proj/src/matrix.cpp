#include "chevkit/matrix.hpp"

#include <sstream>

namespace chevkit {

Matrix::Matrix(Ring r, size_t rows, size_t cols)
    : ring_(std::move(r)), rows_(rows), cols_(cols), a_(rows * cols, ring_.vzero()) {}

Matrix Matrix::identity(const Ring& r, size_t n) {
    Matrix m(r, n, n);
    Value one = r.vone();
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
}

Matrix Matrix::from_ints(const Ring& r, const std::vector<std::vector<int64_t>>& rows) {
    const size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
    Matrix m(r, nr, nc);
    for (size_t i = 0; i < nr; ++i) {
        if (rows[i].size() != nc) throw std::invalid_argument("ragged matrix rows");
        for (size_t j = 0; j < nc; ++j)
            if (rows[i][j] != 0) m.at(i, j) = r.vint(rows[i][j]);
    }
    return m;
}

void check_same_ring(const Matrix& a, const Matrix& b) {
    if (a.ring() != b.ring()) throw RingMismatch("matrices over " + a.ring().spec() + " and " + b.ring().spec());
}

void Matrix::set(size_t i, size_t j, const Element& e) {
    if (e.ring() != ring_) throw RingMismatch("element of " + e.ring().spec() + " into matrix over " + ring_.spec());
    at(i, j) = e.value();
}

std::vector<std::vector<uint32_t>> Matrix::row_support() const {
    std::vector<std::vector<uint32_t>> s(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!ring_.is_zero(at(i, j))) s[i].push_back(static_cast<uint32_t>(j));
    return s;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same_ring(*this, o);
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix c(ring_, rows_, o.cols_);
    auto bs = o.row_support();
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const Value& aik = at(i, k);
            if (ring_.is_zero(aik)) continue;
            for (uint32_t j : bs[k]) ring_.fma(c.at(i, j), aik, o.at(k, j));
        }
    }
    return c;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_ring(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix c(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) c.a_[k] = ring_.add(a_[k], o.a_[k]);
    return c;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_ring(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix c(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) c.a_[k] = ring_.sub(a_[k], o.a_[k]);
    return c;
}

Matrix Matrix::operator-() const {
    Matrix c(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) c.a_[k] = ring_.neg(a_[k]);
    return c;
}

Matrix Matrix::scaled(const Element& s) const {
    if (s.ring() != ring_) throw RingMismatch("scalar ring mismatch");
    Matrix c(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) c.a_[k] = ring_.mul(s.value(), a_[k]);
    return c;
}

bool Matrix::operator==(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t k = 0; k < a_.size(); ++k)
        if (!ring_.equal(a_[k], o.a_[k])) return false;
    return true;
}

Matrix Matrix::pow(int64_t k) const {
    if (!square()) throw std::invalid_argument("pow of non-square matrix");
    if (k < 0) return inverse().pow(-k);
    Matrix r = identity(ring_, rows_), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool Matrix::is_identity() const {
    if (!square()) return false;
    Value one = ring_.vone();
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (i == j ? !ring_.equal(at(i, j), one) : !ring_.is_zero(at(i, j))) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& v : a_)
        if (!ring_.is_zero(v)) return false;
    return true;
}

bool Matrix::is_diagonal() const {
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (i != j && !ring_.is_zero(at(i, j))) return false;
    return true;
}

size_t Matrix::nonzeros() const {
    size_t c = 0;
    for (const auto& v : a_)
        if (!ring_.is_zero(v)) ++c;
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::sub(const std::vector<size_t>& r, const std::vector<size_t>& c) const {
    Matrix s(ring_, r.size(), c.size());
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < c.size(); ++j) s.at(i, j) = at(r[i], c[j]);
    return s;
}

Matrix Matrix::change_ring(const Ring& target) const {
    if (target == ring_) return *this;
    Matrix m(target, rows_, cols_);
    mpz_class z;
    for (size_t k = 0; k < a_.size(); ++k) {
        if (ring_.is_zero(a_[k])) continue;
        if (!ring_.as_integer(a_[k], z))
            throw RingMismatch("entry " + ring_.format(a_[k]) + " is not an integer");
        m.a_[k] = target.vmpz(z);
    }
    return m;
}

Matrix Matrix::residue() const {
    Ring k = ring_.residue_field();
    Matrix m(k, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = ring_.residue_value(a_[i]);
    return m;
}

namespace {

// Gauss-Jordan on [A | I] choosing unit pivots; works over fields and local rings.
Matrix invert_unit_pivot(const Matrix& a) {
    const Ring& r = a.ring();
    const size_t n = a.rows();
    Matrix m = a, inv = Matrix::identity(r, n);
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t i = c; i < n; ++i)
            if (r.is_unit(m.at(i, c))) {
                p = i;
                break;
            }
        if (p == n) throw SingularMatrix("matrix is not invertible over " + r.spec());
        if (p != c)
            for (size_t j = 0; j < n; ++j) {
                std::swap(m.at(p, j), m.at(c, j));
                std::swap(inv.at(p, j), inv.at(c, j));
            }
        Value pinv = r.inv(m.at(c, c));
        for (size_t j = 0; j < n; ++j) {
            m.at(c, j) = r.mul(m.at(c, j), pinv);
            inv.at(c, j) = r.mul(inv.at(c, j), pinv);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || r.is_zero(m.at(i, c))) continue;
            Value f = r.neg(m.at(i, c));
            for (size_t j = 0; j < n; ++j) {
                if (!r.is_zero(m.at(c, j))) r.fma(m.at(i, j), f, m.at(c, j));
                if (!r.is_zero(inv.at(c, j))) r.fma(inv.at(i, j), f, inv.at(c, j));
            }
        }
    }
    return inv;
}

// Exact rational Gauss-Jordan; returns false if singular.
bool rational_inverse(std::vector<mpq_class>& m, std::vector<mpq_class>& inv, size_t n) {
    inv.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t i = c; i < n; ++i)
            if (sgn(m[i * n + c]) != 0) {
                p = i;
                break;
            }
        if (p == n) return false;
        if (p != c)
            for (size_t j = 0; j < n; ++j) {
                std::swap(m[p * n + j], m[c * n + j]);
                std::swap(inv[p * n + j], inv[c * n + j]);
            }
        mpq_class pv = m[c * n + c];
        for (size_t j = 0; j < n; ++j) {
            m[c * n + j] /= pv;
            inv[c * n + j] /= pv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || sgn(m[i * n + c]) == 0) continue;
            mpq_class f = m[i * n + c];
            for (size_t j = 0; j < n; ++j) {
                if (sgn(m[c * n + j]) != 0) m[i * n + j] -= f * m[c * n + j];
                if (sgn(inv[c * n + j]) != 0) inv[i * n + j] -= f * inv[c * n + j];
            }
        }
    }
    return true;
}

}  // namespace

Matrix Matrix::inverse() const {
    if (!square()) throw std::invalid_argument("inverse of non-square matrix");
    if (ring_.kind() == Kind::Integers) {
        std::vector<mpq_class> m(rows_ * rows_), inv;
        mpz_class z;
        for (size_t k = 0; k < a_.size(); ++k) {
            ring_.as_integer(a_[k], z);
            m[k] = z;
        }
        if (!rational_inverse(m, inv, rows_)) throw SingularMatrix("matrix is singular");
        Matrix out(ring_, rows_, rows_);
        for (size_t k = 0; k < inv.size(); ++k) {
            if (inv[k].get_den() != 1) throw SingularMatrix("matrix is not invertible over Z");
            out.a_[k] = ring_.vmpz(inv[k].get_num());
        }
        return out;
    }
    return invert_unit_pivot(*this);
}

Element Matrix::det() const {
    if (!square()) throw std::invalid_argument("det of non-square matrix");
    const size_t n = rows_;
    // Berkowitz: division-free, valid over any commutative ring.
    std::vector<Value> c{ring_.vone(), ring_.neg(at(0, 0))};
    if (n == 0) return ring_.one();
    for (size_t r = 1; r < n; ++r) {
        // Toeplitz column built from the leading r x r block.
        std::vector<Value> col(r + 2, ring_.vzero());
        col[0] = ring_.vone();
        col[1] = ring_.neg(at(r, r));
        std::vector<Value> vec(r);
        for (size_t i = 0; i < r; ++i) vec[i] = at(i, r);
        for (size_t k = 2; k <= r + 1; ++k) {
            Value s = ring_.vzero();
            for (size_t i = 0; i < r; ++i) ring_.fma(s, at(r, i), vec[i]);
            col[k] = ring_.neg(s);
            std::vector<Value> nv(r, ring_.vzero());
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < r; ++j) ring_.fma(nv[i], at(i, j), vec[j]);
            vec.swap(nv);
        }
        std::vector<Value> nc(r + 2, ring_.vzero());
        for (size_t i = 0; i < r + 2; ++i)
            for (size_t j = 0; j <= i && j < c.size(); ++j) ring_.fma(nc[i], col[i - j], c[j]);
        c.swap(nc);
    }
    Value d = c[n];
    if (n % 2 == 1) d = ring_.neg(d);
    return Element(ring_, d);
}

size_t Matrix::rank() const {
    if (!ring_.is_field()) throw std::domain_error("rank requires a field, got " + ring_.spec());
    Matrix m = *this;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t p = rows_;
        for (size_t i = r; i < rows_; ++i)
            if (!ring_.is_zero(m.at(i, c))) {
                p = i;
                break;
            }
        if (p == rows_) continue;
        if (p != r)
            for (size_t j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(r, j));
        Value pinv = ring_.inv(m.at(r, c));
        for (size_t i = r + 1; i < rows_; ++i) {
            if (ring_.is_zero(m.at(i, c))) continue;
            Value f = ring_.neg(ring_.mul(m.at(i, c), pinv));
            for (size_t j = c; j < cols_; ++j)
                if (!ring_.is_zero(m.at(r, j))) ring_.fma(m.at(i, j), f, m.at(r, j));
        }
        ++r;
    }
    return r;
}

json Matrix::to_json() const {
    json rows = json::array();
    for (size_t i = 0; i < rows_; ++i) {
        json row = json::array();
        for (size_t j = 0; j < cols_; ++j) row.push_back(ring_.to_json(at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"ring", ring_.spec()}, {"n", rows_}, {"entries", std::move(rows)}};
}

Matrix Matrix::from_json(const json& j) { return from_json(j, Ring::make(j.at("ring").get<std::string>())); }

Matrix Matrix::from_json(const json& j, const Ring& r) {
    const json& e = j.at("entries");
    const size_t nr = e.size();
    const size_t nc = nr ? e[0].size() : 0;
    if (j.contains("n") && j.at("n").get<size_t>() != nr) throw std::invalid_argument("matrix 'n' does not match entries");
    Matrix m(r, nr, nc);
    for (size_t i = 0; i < nr; ++i) {
        if (e[i].size() != nc) throw std::invalid_argument("ragged matrix rows");
        for (size_t k = 0; k < nc; ++k) m.at(i, k) = r.from_json(e[i][k]);
    }
    return m;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << ring_.format(at(i, j));
        os << '\n';
    }
    return os.str();
}

Matrix commutator(const Matrix& a, const Matrix& b, const Matrix& a_inv, const Matrix& b_inv) {
    return a * b * a_inv * b_inv;
}

}  // namespace chevkit
