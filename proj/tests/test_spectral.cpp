#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chevkit/chevalley.hpp"
#include "chevkit/rigidity.hpp"
#include "chevkit/spectral.hpp"

using namespace chevkit;

namespace {

Matrix first4_q1(const Ring& r) {
    const RootSystem& a3 = RootSystem::parse("A3");
    std::vector<size_t> idx = {0, 1, static_cast<size_t>(a3.h_index(1)), static_cast<size_t>(a3.h_index(2))};
    return restrict_to(q_elem(r, a3, 0), idx);
}

}  // namespace

TEST_CASE("first-form block diagonalizes to xi, xi^2, 1, 1") {
    Ring w = Ring::make("omega(Z/4)");
    auto d = diagonalize_order3(first4_q1(w));
    CHECK(d.D.is_diagonal());
    CHECK(d.P * first4_q1(w) * d.P.inverse() == d.D);
    CHECK(d.mult_xi == 1);
    CHECK(d.mult_xi2 == 1);
    CHECK(d.mult_one == 2);
}

TEST_CASE("third-type block has no fixed vectors") {
    Ring w = Ring::make("omega(Z/4)");
    const RootSystem& a5 = RootSystem::parse("A5");
    std::vector<size_t> idx;
    for (const char* nm : {"e2-e3", "e3-e2", "e1-e3", "e3-e1", "e2-e4", "e4-e2", "e1-e4", "e4-e1"})
        idx.push_back(static_cast<size_t>(a5.parse_root(nm)));
    Matrix q = restrict_to(q_elem(w, a5, a5.parse_root("e1-e2")) * q_elem(w, a5, a5.parse_root("e3-e4")), idx);
    auto d = diagonalize_order3(q);
    CHECK(d.D.is_diagonal());
    CHECK(d.mult_xi == d.mult_xi2);
}

TEST_CASE("diagonalization needs omega") {
    CHECK_THROWS(diagonalize_order3(first4_q1(Ring::make("Z/4"))));
}

TEST_CASE("xi and xi^2 multiplicities agree") {
    Ring w = Ring::make("omega(Z/4)");
    for (const char* name : {"A3", "A5", "D4", "E6"}) {
        const RootSystem& s = RootSystem::parse(name);
        auto d = diagonalize_q(w, s, s.simple_root(1));
        CHECK(d.mult_xi == d.mult_xi2);
        CHECK(d.mult_one + d.mult_xi + d.mult_xi2 == s.dim());
    }
}

TEST_CASE("centralizer pattern") {
    Ring z2 = Ring::make("Z/2"), f4 = Ring::make("omega(Z/2)");
    const RootSystem& a5 = RootSystem::parse("A5");
    std::vector<Matrix> knowns;
    for (int g : a5.orthogonal_sequence().gammas) knowns.push_back(q_elem(z2, a5, g));
    Support s = centralizer_pattern(f4, knowns);
    CHECK_FALSE(s(static_cast<size_t>(a5.parse_root("e1-e2")), static_cast<size_t>(a5.parse_root("e3-e5"))));

    Support all = centralizer_pattern(f4, {Matrix::identity(z2, 6)});
    CHECK(all.count() == 36);

    std::vector<Matrix> more = knowns;
    auto seq = a5.orthogonal_sequence();
    more.push_back(wij_elem(z2, a5, seq, 0, 1) * knowns[0] * wij_elem(z2, a5, seq, 0, 1));
    CHECK(centralizer_pattern(f4, more).subset_of(s));
}

TEST_CASE("commutant of scalars is everything") {
    Ring f2 = Ring::make("Z/2");
    CHECK(commutant_dimension(f2, {Matrix::identity(f2, 5)}) == 25);
    auto basis = commutant_basis(f2, {first4_q1(f2)}, 4);
    for (const auto& c : basis) CHECK(c * first4_q1(f2) == first4_q1(f2) * c);
}

TEST_CASE("block partitions cover the commutant support") {
    Ring z2 = Ring::make("Z/2"), f4 = Ring::make("omega(Z/2)");
    for (const char* id : {"a5-x1", "a5-x2", "d4"}) {
        BlockSpec spec = load_block_spec(id);
        const RootSystem& sys = RootSystem::parse(spec.system);
        std::vector<Matrix> knowns;
        for (const auto& g : spec.commutes_with_q) knowns.push_back(q_elem(z2, sys, sys.parse_root(g)));
        Support s = centralizer_pattern(f4, knowns);
        BlockPartition p = computed_blocks(spec);
        std::vector<int> part_of(sys.dim(), -1);
        for (size_t k = 0; k < p.parts.size(); ++k)
            for (int i : p.parts[k]) {
                CHECK(part_of[i] == -1);
                part_of[i] = static_cast<int>(k);
            }
        CHECK(std::count(part_of.begin(), part_of.end(), -1) == 0);
        for (int i = 0; i < sys.dim(); ++i)
            for (int j = 0; j < sys.dim(); ++j)
                if (s(i, j)) CHECK(part_of[i] == part_of[j]);
        for (const auto& part : named_parts(sys, p))
            for (const auto& nm : part)
                if (nm[0] != 'h') {
                    const int r = sys.parse_root(nm);
                    CHECK(part_of[r] == part_of[RootSystem::neg(r)]);
                }
    }
}

TEST_CASE("shipped block lists load") {
    auto ids = block_spec_ids();
    CHECK(ids.size() == 5);
    for (const auto& id : ids) {
        auto spec = load_block_spec(id);
        CHECK_FALSE(spec.parts.empty());
        CHECK_FALSE(spec.source.empty());
    }
}
