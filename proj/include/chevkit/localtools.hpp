#pragma once

#include <optional>

#include "chevkit/matrix.hpp"

namespace chevkit {

struct Order3Violation : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotCongruent : std::domain_error {
    using std::domain_error::domain_error;
};

// e = (1 + a + a^2) / 3 projects onto the part fixed by a.
struct IdempotentSplit {
    Matrix e;
    size_t rank0 = 0;  // residue rank of e
    size_t rank1 = 0;  // residue rank of 1 - e
};

IdempotentSplit order3_split(const Matrix& a);

// T with T a T^{-1} = b for order-3 matrices congruent modulo the radical.
// T = (1 + b a^{-1} + b^2 a^{-2}) / 3 sends each basis vector to a lift of
// itself, so T is congruent to 1 and invertible.
Matrix conjugacy_witness(const Matrix& a, const Matrix& b);

// Random order-3 matrix: blocks [[0,-1],[1,-1]] and 1x1 identities on the
// diagonal, conjugated by a random unipotent upper-triangular matrix.
Matrix random_order3(const Ring& r, size_t n, std::mt19937_64& rng);

}  // namespace chevkit
