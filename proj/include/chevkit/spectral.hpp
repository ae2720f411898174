#pragma once

#include <string>
#include <vector>

#include "chevkit/matrix.hpp"
#include "chevkit/rootsys.hpp"

namespace chevkit {

struct SingularTransition : std::domain_error {
    using std::domain_error::domain_error;
};

struct Diagonalization {
    Matrix P;  // P * Q * P^{-1} = D
    Matrix D;
    int mult_one = 0, mult_xi = 0, mult_xi2 = 0;
};

// Diagonalize an order-3 matrix over omega(B) with 3 invertible in B,
// using the eigenprojectors (1 + l^{-1} Q + l^{-2} Q^2) / 3.
Diagonalization diagonalize_order3(const Matrix& q);
Diagonalization diagonalize_q(const Ring& r, const RootSystem& sys, int alpha);

// Positions (i, j) where some matrix commuting with all knowns is nonzero.
class Support {
public:
    explicit Support(size_t n = 0) : n_(n), bits_(n * n, 0) {}
    size_t n() const { return n_; }
    bool operator()(size_t i, size_t j) const { return bits_[i * n_ + j] != 0; }
    void set(size_t i, size_t j) { bits_[i * n_ + j] = 1; }
    size_t count() const;
    bool subset_of(const Support& o) const;
    bool operator==(const Support& o) const { return bits_ == o.bits_; }

private:
    size_t n_;
    std::vector<char> bits_;
};

// The commutation system is solved over the given field; known matrices over
// a local ring are first reduced to its residue field. When the residue field
// is F_2 and the target field is F_2 or omega(F_2) the support is computed by
// GF(2) elimination, since an F_2-linear system has the same solution support
// over any extension field.
Support centralizer_pattern(const Ring& field, const std::vector<Matrix>& knowns);
size_t commutant_dimension(const Ring& field, const std::vector<Matrix>& knowns);
// Basis of {C : CK = KC for all knowns} over the field; n fixes the size when knowns is empty.
std::vector<Matrix> commutant_basis(const Ring& field, const std::vector<Matrix>& knowns, size_t n);

struct BlockPartition {
    std::vector<std::vector<int>> parts;  // sorted basis indices, parts sorted by first index
    std::vector<std::string> labels;
};

BlockPartition block_partition(const Support& s);

// Parts as sets of names ("e1-e2", "h" for every Cartan line) for order-free comparison.
std::vector<std::vector<std::string>> named_parts(const RootSystem& sys, const BlockPartition& p);

struct BlockSpec {
    std::string id, system, target, source;
    std::vector<std::string> commutes_with_q;  // roots whose Q-elements are the knowns
    std::vector<std::vector<std::string>> parts;
};

BlockSpec load_block_spec(const std::string& id);
std::vector<std::string> block_spec_ids();

struct BlockReport {
    std::string id;
    bool match = false;
    size_t computed_parts = 0, expected_parts = 0;
    std::vector<std::vector<std::string>> computed;
    std::vector<std::vector<std::string>> missing;  // expected parts not produced
};

BlockPartition computed_blocks(const BlockSpec& spec);
BlockReport compare_blocks(const BlockSpec& spec);

}  // namespace chevkit
