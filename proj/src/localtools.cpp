#include "chevkit/localtools.hpp"

namespace chevkit {

namespace {

void require_order3(const Matrix& a, const char* what) {
    if (!a.square()) throw std::invalid_argument(std::string(what) + " is not square");
    if (!a.pow(3).is_identity()) throw Order3Violation(std::string(what) + " does not satisfy a^3 = 1");
}

Element inverse_of_three(const Ring& r) {
    if (!r.is_local()) throw NotLocal(r.spec() + " is not local");
    Element three = r.from_int(3);
    if (!three.is_unit()) throw NonUnit("3 is not invertible in " + r.spec());
    return three.inverse();
}

}  // namespace

IdempotentSplit order3_split(const Matrix& a) {
    const Ring& r = a.ring();
    Element inv3 = inverse_of_three(r);
    require_order3(a, "matrix");
    const Matrix id = Matrix::identity(r, a.rows());
    IdempotentSplit s;
    s.e = (id + a + a * a).scaled(inv3);
    if (s.e * s.e != s.e) throw std::logic_error("(1 + a + a^2)/3 is not idempotent");
    s.rank0 = s.e.residue_rank();
    s.rank1 = (id - s.e).residue_rank();
    return s;
}

Matrix conjugacy_witness(const Matrix& a, const Matrix& b) {
    check_same_ring(a, b);
    const Ring& r = a.ring();
    Element inv3 = inverse_of_three(r);
    require_order3(a, "a");
    require_order3(b, "b");
    if (a.residue() != b.residue()) throw NotCongruent("matrices differ modulo the radical");
    const Matrix ainv = a * a;
    const Matrix t = (Matrix::identity(r, a.rows()) + b * ainv + b * b * a).scaled(inv3);
    if (t * a != b * t) throw std::logic_error("averaged operator does not intertwine");
    return t;
}

Matrix random_order3(const Ring& r, size_t n, std::mt19937_64& rng) {
    Matrix d(r, n, n);
    size_t i = 0;
    std::bernoulli_distribution coin(0.6);
    while (i < n) {
        if (i + 1 < n && coin(rng)) {
            d.set_int(i, i + 1, -1);
            d.set_int(i + 1, i, 1);
            d.set_int(i + 1, i + 1, -1);
            i += 2;
        } else {
            d.set_int(i, i, 1);
            ++i;
        }
    }
    Matrix u = Matrix::identity(r, n);
    for (size_t p = 0; p < n; ++p)
        for (size_t q = p + 1; q < n; ++q) u.set(p, q, r.random(rng));
    return u * d * u.inverse();
}

}  // namespace chevkit
