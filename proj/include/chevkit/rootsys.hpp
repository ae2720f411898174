#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chevkit {

enum class Family { A, D, E };

struct UnsupportedSystem : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Coordinates are doubled so that E-series half-integers stay integral.
using Coords2 = std::vector<int>;

struct OrthogonalSequence {
    std::vector<int> gammas;                   // root indices
    std::map<std::pair<int, int>, int> connectors;  // (i, j) positions in gammas -> root index
    int connector(int i, int j) const;
};

class RootSystem {
public:
    static const RootSystem& get(Family f, int rank);
    static const RootSystem& parse(const std::string& name);  // "A3", "D4", "E8"

    Family family() const { return family_; }
    int rank() const { return rank_; }
    std::string name() const;
    int ambient() const { return ambient_; }

    // Roots in Chevalley basis order: index 2k is the k-th positive root, 2k+1 its negative.
    int num_roots() const { return static_cast<int>(roots_.size()); }
    int num_positive() const { return num_roots() / 2; }
    int dim() const { return num_roots() + rank_; }  // n = l + 2m
    const Coords2& root(int i) const { return roots_[i]; }
    const std::vector<int>& simple() const { return simple_; }
    int simple_root(int k) const { return simple_.at(k - 1); }  // 1-based
    static int neg(int i) { return i ^ 1; }
    static bool is_positive(int i) { return (i & 1) == 0; }
    int h_index(int k) const { return num_roots() + k - 1; }  // basis index of h_k, 1-based

    std::optional<int> index_of(const Coords2& c) const;
    int pairing(int b, int a) const { return pair_[b * num_roots() + a]; }
    std::optional<int> sum(int a, int b) const;
    int height(int i) const;
    // Coefficients of a root in the simple roots (negative for negative roots).
    const std::vector<int>& simple_coefficients(int i) const { return coef_[i]; }
    Coords2 reflect(const Coords2& beta, int alpha) const;

    std::string root_name(int i) const;
    std::string basis_label(int k) const;
    int parse_root(const std::string& s) const;

    OrthogonalSequence orthogonal_sequence() const;
    // A root pairing to -1 with both arguments, preferring positives in basis order.
    std::optional<int> connector(int a, int b) const;

private:
    RootSystem(Family f, int rank);
    Family family_;
    int rank_;
    int ambient_;
    std::vector<Coords2> roots_;
    std::vector<std::vector<int>> coef_;
    std::vector<int> simple_;
    std::vector<int> pair_;
    std::vector<int> sum_;
    std::map<Coords2, int> index_;
};

int dot2(const Coords2& a, const Coords2& b);  // plain dot of doubled coordinates
Family parse_family(char c);

}  // namespace chevkit
