#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chevkit/chevalley.hpp"
#include "chevkit/localtools.hpp"
#include "chevkit/spectral.hpp"

using namespace chevkit;

namespace {

Matrix bl_block(const Ring& r) { return Matrix::from_ints(r, {{0, -1, 0}, {1, -1, 0}, {0, 0, 1}}); }

}  // namespace

TEST_CASE("identity splits trivially") {
    Ring z4 = Ring::make("Z/4");
    auto s = order3_split(Matrix::identity(z4, 5));
    CHECK(s.e.is_identity());
    CHECK(s.rank0 == 5);
    CHECK(s.rank1 == 0);
}

TEST_CASE("rotation block contributes two") {
    Ring z4 = Ring::make("Z/4");
    Matrix a = bl_block(z4);
    REQUIRE(a.pow(3).is_identity());
    auto s = order3_split(a);
    CHECK(s.e * s.e == s.e);
    CHECK(s.rank0 == 1);
    CHECK(s.rank1 == 2);
}

TEST_CASE("Q split matches the spectrum") {
    Ring z4 = Ring::make("Z/4");
    const RootSystem& a3 = RootSystem::parse("A3");
    auto s = order3_split(q_elem(z4, a3, 0));
    auto d = diagonalize_q(Ring::make("omega(Z/4)"), a3, 0);
    CHECK(s.rank1 % 2 == 0);
    CHECK(s.rank1 == static_cast<size_t>(d.mult_xi + d.mult_xi2));
    CHECK(s.rank0 == static_cast<size_t>(d.mult_one));
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(order3_split(Matrix::from_ints(Ring::make("Z/4"), {{0, 1}, {1, 0}})), Order3Violation);
    CHECK_THROWS_AS(order3_split(bl_block(Ring::make("Z/9"))), NonUnit);
    CHECK_THROWS_AS(order3_split(bl_block(Ring::make("Z/6"))), NotLocal);
}

TEST_CASE("random splits are idempotent") {
    std::mt19937_64 rng(21);
    for (const char* spec : {"Z/4", "dual(Z/2)"}) {
        Ring r = Ring::make(spec);
        for (int k = 0; k < 50; ++k) {
            Matrix a = random_order3(r, 2 + k % 7, rng);
            REQUIRE(a.pow(3).is_identity());
            auto s = order3_split(a);
            CHECK(s.e * s.e == s.e);
            CHECK(s.rank0 + s.rank1 == a.rows());
            // residue of e equals the split of the residue matrix
            auto sr = order3_split(a.residue());
            CHECK(s.e.residue() == sr.e);
        }
    }
}

TEST_CASE("conjugacy witness") {
    Ring d = Ring::make("dual(Z/2)");
    std::mt19937_64 rng(17);
    Matrix a = random_order3(d, 5, rng);
    Matrix t0 = conjugacy_witness(a, a);
    CHECK(t0 * a == a * t0);

    for (int k = 0; k < 20; ++k) {
        const size_t n = 2 + k % 6;
        Matrix a1 = random_order3(d, n, rng);
        Matrix nrad(d, n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) nrad.set(i, j, d.random_radical(rng));
        Matrix u = Matrix::identity(d, n) + nrad;
        Matrix b = u * a1 * u.inverse();
        Matrix t = conjugacy_witness(a1, b);
        CHECK(t.det().is_unit());
        CHECK(t * a1 * t.inverse() == b);
    }

    Ring z4 = Ring::make("Z/4");
    CHECK_THROWS_AS(conjugacy_witness(bl_block(z4), Matrix::identity(z4, 3)), NotCongruent);
}
