#pragma once

#include <vector>

#include "chevkit/matrix.hpp"
#include "chevkit/rootsys.hpp"

namespace chevkit {

struct DivisibilityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class StructureConstants {
public:
    explicit StructureConstants(const RootSystem& sys);
    static const StructureConstants& of(const RootSystem& sys);

    // N_{a,b} for summable pairs, 0 otherwise.
    int operator()(int a, int b) const { return table_[a * nr_ + b]; }
    const RootSystem& system() const { return sys_; }

private:
    int compute(int a, int b);
    const RootSystem& sys_;
    int nr_;
    std::vector<int> table_;
};

// Sparse integer matrix entry list used for divided powers of ad x_a.
struct IntEntry {
    uint32_t row, col;
    int64_t v;
};

Matrix ad_matrix(const RootSystem& sys, int alpha);
Matrix divided_power(const Matrix& m, int k);

// Cached nonzero entries of ad(x_a)^k / k! for k = 1, 2.
const std::vector<IntEntry>& ad_power_entries(const RootSystem& sys, int alpha, int k);

Matrix x_elem(const Ring& r, const RootSystem& sys, int alpha, const Element& t);
Matrix x_elem(const Ring& r, const RootSystem& sys, int alpha, int64_t t);
Matrix w_elem(const Ring& r, const RootSystem& sys, int alpha, const Element& t);
Matrix w_elem(const Ring& r, const RootSystem& sys, int alpha, int64_t t = 1);
Matrix h_elem(const Ring& r, const RootSystem& sys, int alpha, const Element& t);
Matrix q_elem(const Ring& r, const RootSystem& sys, int alpha);
Matrix wij_elem(const Ring& r, const RootSystem& sys, const OrthogonalSequence& seq, int i, int j);

// Diagonal closed form of h_a(t): t^<b,a> on x_b lines, 1 on the Cartan lines.
Matrix h_closed_form(const Ring& r, const RootSystem& sys, int alpha, const Element& t);

// Lie bracket of basis vectors over Z, as a coefficient vector of length n.
std::vector<int64_t> bracket(const RootSystem& sys, int i, int j);

}  // namespace chevkit
