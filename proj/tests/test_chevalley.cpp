#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chevkit/chevalley.hpp"

using namespace chevkit;

TEST_CASE("structure constants") {
    const RootSystem& a3 = RootSystem::parse("A3");
    const auto& n3 = StructureConstants::of(a3);
    for (int a = 0; a < a3.num_roots(); ++a)
        for (int b = 0; b < a3.num_roots(); ++b)
            if (a3.sum(a, b)) CHECK(std::abs(n3(a, b)) == 1);
    const RootSystem& d4 = RootSystem::parse("D4");
    const auto& n4 = StructureConstants::of(d4);
    for (int a = 0; a < d4.num_roots(); ++a)
        for (int b = 0; b < d4.num_roots(); ++b) CHECK(n4(b, a) == -n4(a, b));
}

TEST_CASE("Jacobi identity in E6") {
    const RootSystem& e6 = RootSystem::parse("E6");
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(0, e6.dim() - 1);
    auto br = [&](const std::vector<int64_t>& u, const std::vector<int64_t>& v) {
        std::vector<int64_t> out(e6.dim(), 0);
        for (int i = 0; i < e6.dim(); ++i)
            if (u[i])
                for (int j = 0; j < e6.dim(); ++j)
                    if (v[j]) {
                        auto b = bracket(e6, i, j);
                        for (int k = 0; k < e6.dim(); ++k) out[k] += u[i] * v[j] * b[k];
                    }
        return out;
    };
    auto unit = [&](int i) {
        std::vector<int64_t> v(e6.dim(), 0);
        v[i] = 1;
        return v;
    };
    for (int k = 0; k < 100; ++k) {
        auto x = unit(pick(rng)), y = unit(pick(rng)), z = unit(pick(rng));
        auto s1 = br(x, br(y, z)), s2 = br(y, br(z, x)), s3 = br(z, br(x, y));
        for (int i = 0; i < e6.dim(); ++i) CHECK(s1[i] + s2[i] + s3[i] == 0);
    }
}

TEST_CASE("adjoint action") {
    const RootSystem& a3 = RootSystem::parse("A3");
    const int a = a3.simple_root(1);
    Matrix ad = ad_matrix(a3, a);
    // column of x_{-a} is h_a = h_1
    for (int k = 0; k < a3.dim(); ++k) CHECK(ad.get(k, RootSystem::neg(a)) == Ring::integers().from_int(k == a3.h_index(1) ? 1 : 0));
    for (int b = 0; b < a3.num_roots(); ++b)
        if (b != RootSystem::neg(a) && a3.pairing(a, b) >= 0)
            for (int k = 0; k < a3.dim(); ++k) CHECK(ad.is_zero_at(k, b));
    for (int r = 0; r < a3.num_roots(); ++r) CHECK(ad_matrix(a3, r).pow(4).is_zero());
}

TEST_CASE("divided powers") {
    const RootSystem& a3 = RootSystem::parse("A3");
    const int a = a3.simple_root(1);
    Matrix ad = ad_matrix(a3, a);
    CHECK(divided_power(ad, 0).is_identity());
    CHECK(divided_power(ad, 1) == ad);
    CHECK(divided_power(ad, 2).get(a, RootSystem::neg(a)) == Ring::integers().from_int(-1));
}

TEST_CASE("root elements") {
    const RootSystem& a3 = RootSystem::parse("A3");
    Ring z8 = Ring::make("Z/8");
    CHECK(x_elem(z8, a3, 0, 0).is_identity());
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
        Element t = z8.random(rng), s = z8.random(rng);
        CHECK(x_elem(z8, a3, 2, t) * x_elem(z8, a3, 2, s) == x_elem(z8, a3, 2, t + s));
    }
}

TEST_CASE("Q has order three") {
    Ring z4 = Ring::make("Z/4");
    const RootSystem& a3 = RootSystem::parse("A3");
    for (int a = 0; a < a3.num_roots(); ++a) CHECK(q_elem(z4, a3, a).pow(3).is_identity());
    CHECK_FALSE(q_elem(z4, a3, 0).is_identity());
}

TEST_CASE("torus conjugation over Zodd") {
    Ring zodd = Ring::make("Zodd");
    const RootSystem& a3 = RootSystem::parse("A3");
    std::mt19937_64 rng(13);
    for (int k = 0; k < 30; ++k) {
        const int a = static_cast<int>(rng() % 12), b = static_cast<int>(rng() % 12);
        Element t = zodd.random_unit(rng), s = zodd.random(rng);
        const int p = a3.pairing(b, a);
        Element tp = p >= 0 ? t.pow(p) : t.inverse().pow(-p);
        CHECK(h_elem(zodd, a3, a, t) * x_elem(zodd, a3, b, s) * h_elem(zodd, a3, a, t.inverse()) == x_elem(zodd, a3, b, tp * s));
        CHECK(h_elem(zodd, a3, a, t) == h_closed_form(zodd, a3, a, t));
    }
}

TEST_CASE("w_ij in A5") {
    Ring z4 = Ring::make("Z/4");
    const RootSystem& a5 = RootSystem::parse("A5");
    auto seq = a5.orthogonal_sequence();
    Matrix w13 = wij_elem(z4, a5, seq, 0, 1), w35 = wij_elem(z4, a5, seq, 1, 2);
    CHECK((w13 * w13).is_identity());
    CHECK(w13 * q_elem(z4, a5, seq.gammas[0]) * w13 == q_elem(z4, a5, seq.gammas[1]));
    CHECK((w13 * w35).pow(3).is_identity());
}

TEST_CASE("Weyl elements permute root lines") {
    Ring z = Ring::integers();
    const RootSystem& d4 = RootSystem::parse("D4");
    Matrix w = w_elem(z, d4, d4.simple_root(2));
    for (int b = 0; b < d4.num_roots(); ++b) {
        size_t nz = 0;
        for (int k = 0; k < d4.dim(); ++k) nz += !w.is_zero_at(k, b);
        CHECK(nz == 1);
    }
}
