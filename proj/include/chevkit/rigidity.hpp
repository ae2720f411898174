#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chevkit/linsolve.hpp"
#include "chevkit/matrix.hpp"
#include "chevkit/rootsys.hpp"
#include "chevkit/spectral.hpp"

namespace chevkit {

struct ConditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// constant + sum terms[id] * z_id over a field.
struct AffineExpr {
    Value constant;
    SparseRow terms;  // sorted by id, no zero coefficients
};

struct UnknownId {
    int slot;
    uint32_t row, col;
};

// An unknown perturbation W of a base matrix; positions outside `allowed`
// are fixed to zero and get no id.
struct SymbolicMatrix {
    std::string name;
    Matrix base;        // over the field
    Support allowed;
    std::vector<int64_t> ids;  // row-major, -1 where forced zero
    int64_t id(size_t i, size_t j) const { return ids[i * base.rows() + j]; }
};

struct UnknownRegistry {
    std::vector<SymbolicMatrix> slots;
    std::vector<UnknownId> ids;
    int add(std::string name, Matrix base, const Support& allowed);
    size_t size() const { return ids.size(); }
    std::string label(size_t id) const;
};

// Product expression over named matrices: names, parenthesized groups, ^k powers.
struct Expr {
    enum class Op { Name, Product, Power } op = Op::Name;
    std::string name;
    int exponent = 1;
    std::vector<Expr> args;
};

Expr parse_expr(const std::string& text);
std::string format_expr(const Expr& e);

struct ConditionWord {
    std::string text;
    Expr lhs;
    Expr rhs;
    bool rhs_zero = false;
};

ConditionWord parse_condition(const std::string& text);  // "lhs = rhs" or "lhs = 0"

// Matrix that is affine in the registered unknowns: c + sum P W_slot S.
struct LinearMatrix {
    Matrix c;
    struct Term {
        Matrix P;
        int slot;
        Matrix S;
    };
    std::vector<Term> terms;
    static LinearMatrix constant(Matrix m);
    static LinearMatrix unknown(const Matrix& base, int slot);
    LinearMatrix operator*(const LinearMatrix& o) const;  // drops products of two unknowns
    LinearMatrix operator-(const LinearMatrix& o) const;
    LinearMatrix pow(int k) const;  // negative k uses (c + L)^{-1} = c^{-1} - c^{-1} L c^{-1}
};

struct LinearSystem {
    Ring field;
    size_t nvars = 0;
    std::vector<AffineExpr> rows;
    std::vector<size_t> word_of_row;
    // Rows whose constant is nonzero: the base point violates the word.
    size_t inconsistent_rows() const;
};

// Builds one affine row per matrix position per word.
LinearSystem linearize(const std::vector<ConditionWord>& words, const UnknownRegistry& reg,
                       const std::map<std::string, Matrix>& knowns,
                       const std::map<std::string, Expr>& derived,
                       const std::map<std::string, int>& unknown_slots);

struct SolutionSpace {
    size_t nvars = 0;
    std::vector<std::vector<Value>> basis;
    size_t dim() const { return basis.size(); }
};

// Homogeneous solution space; pivots by lowest equation then lowest unknown id.
SolutionSpace solve(const LinearSystem& sys);

std::vector<std::vector<Value>> gauge_space(const Ring& field, const std::vector<Matrix>& knowns,
                                            const UnknownRegistry& reg, size_t* leaked = nullptr);

// A transcribed set of conditions on one basis part.
struct ConditionSet {
    std::string id, source, system;
    std::vector<size_t> basis;  // Chevalley basis indices, in fixture order
    std::vector<std::string> basis_names;
    std::map<std::string, Matrix> knowns;  // over Z, restricted to the basis
    std::vector<std::string> known_order;
    struct Unknown {
        std::string name, base;
        std::vector<std::string> commutes_with;
    };
    std::vector<Unknown> unknowns;
    std::vector<std::pair<std::string, Expr>> derived;
    std::vector<ConditionWord> relations;
    std::vector<std::string> gauge_knowns;
    std::string sign_known;  // known scaled by mu in the sign sweep
    size_t expected_solution_dim = 0;
    bool expect_solution_dim = false;
};

ConditionSet load_condition_set(const std::string& id);
std::vector<std::string> condition_set_ids();

// Builds the generator matrix described by a JSON spec ({"op": "w", "root": "e1-e2"} ...).
Matrix generator_matrix(const Ring& r, const RootSystem& sys, const json& spec);
// Restriction to a list of basis indices; throws if the span is not invariant.
Matrix restrict_to(const Matrix& m, const std::vector<size_t>& idx);

struct RigidityReport {
    std::string id, field;
    int mu = 1;
    size_t n = 0, unknowns = 0, equations = 0, inconsistent = 0;
    size_t solution_dim = 0, gauge_dim = 0, commutant_dim = 0, gauge_leaked = 0;
    bool contained = false, gauge_in_solutions = false;
    size_t solution_support = 0;  // unknowns nonzero in some solution
    json to_json() const;
};

RigidityReport rigidity_check(const ConditionSet& cs, const Ring& field, int mu = 1);

// The unipotent family commuting with the pinned elements of the A5 second-type part.
struct CentralizerReport {
    std::string ring;
    size_t rational_rank = 0;
    std::vector<Matrix> family;  // integral basis
    size_t enumerated = 0, survivors = 0, invertible_survivors = 0;
    size_t matching_x_alpha1 = 0;  // survivors equal to some x_{a1}(s)
    bool collapses = false;        // survivors are exactly {x_{a1}(s)}
    bool originals_satisfy = false;
    std::vector<std::vector<int64_t>> survivor_params;
    json to_json() const;
};

CentralizerReport unipotent_centralizer(const Ring& r, const ConditionSet& cs);

struct MatrixUnitReport {
    Matrix m;
    size_t support = 0;
    size_t row = 0, col = 0;
    Element scalar;
    std::string row_label, col_label;
};

MatrixUnitReport matrix_unit_extract(const Ring& r, const RootSystem& sys);

}  // namespace chevkit
