#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chevkit/rootsys.hpp"

using namespace chevkit;

TEST_CASE("root counts and dimensions") {
    const RootSystem& a3 = RootSystem::parse("A3");
    CHECK(a3.num_roots() == 12);
    CHECK(a3.dim() == 15);
    CHECK(a3.basis_label(a3.h_index(3)) == "h3");
    CHECK(RootSystem::parse("D4").num_roots() == 24);
    CHECK(RootSystem::parse("D4").dim() == 28);
    CHECK(RootSystem::parse("E6").num_roots() == 72);
    CHECK(RootSystem::parse("E7").num_roots() == 126);
    const RootSystem& e8 = RootSystem::parse("E8");
    CHECK(e8.num_roots() == 240);
    CHECK(e8.dim() == 248);
    CHECK_THROWS_AS(RootSystem::parse("B3"), UnsupportedSystem);
    CHECK_THROWS_AS(RootSystem::parse("E9"), UnsupportedSystem);
    CHECK_THROWS_AS(RootSystem::parse("D3"), UnsupportedSystem);
}

TEST_CASE("A3 basis order") {
    const RootSystem& a3 = RootSystem::parse("A3");
    const char* pos[] = {"e1-e2", "e2-e3", "e3-e4", "e1-e3", "e2-e4", "e1-e4"};
    for (int k = 0; k < 6; ++k) {
        CHECK(a3.root_name(2 * k) == pos[k]);
        CHECK(a3.parse_root(pos[k]) == 2 * k);
        CHECK(RootSystem::neg(2 * k) == 2 * k + 1);
    }
    CHECK(a3.root_name(1) == "-e1+e2");
}

TEST_CASE("pairings and sums") {
    const RootSystem& a3 = RootSystem::parse("A3");
    const int a = a3.parse_root("e1-e2"), b = a3.parse_root("e2-e3"), c = a3.parse_root("e3-e4");
    CHECK(a3.pairing(a, b) == -1);
    CHECK(a3.pairing(a, a) == 2);
    CHECK(a3.pairing(a, c) == 0);
    REQUIRE(a3.sum(a, b).has_value());
    CHECK(a3.root_name(*a3.sum(a, b)) == "e1-e3");
    CHECK_FALSE(a3.sum(a, c).has_value());
    CHECK_FALSE(a3.sum(a, RootSystem::neg(a)).has_value());
}

TEST_CASE("reflections permute the roots") {
    for (const char* name : {"A4", "D5", "E6", "E8"}) {
        const RootSystem& s = RootSystem::parse(name);
        for (int a : s.simple())
            for (int b = 0; b < s.num_roots(); ++b) {
                auto img = s.index_of(s.reflect(s.root(b), a));
                REQUIRE(img.has_value());
                CHECK(s.index_of(s.reflect(s.root(*img), a)) == b);
            }
    }
}

TEST_CASE("E8 roots have norm 2") {
    const RootSystem& e8 = RootSystem::parse("E8");
    int half = 0;
    for (int i = 0; i < e8.num_roots(); ++i) {
        CHECK(dot2(e8.root(i), e8.root(i)) == 8);
        half += std::abs(e8.root(i)[0]) == 1;
    }
    CHECK(half == 128);
}

TEST_CASE("orthogonal sequences") {
    auto names = [](const RootSystem& s) {
        std::vector<std::string> out;
        for (int g : s.orthogonal_sequence().gammas) out.push_back(s.root_name(g));
        return out;
    };
    CHECK(names(RootSystem::parse("A5")) == std::vector<std::string>{"e1-e2", "e3-e4", "e5-e6"});
    CHECK(names(RootSystem::parse("D4")) == std::vector<std::string>{"e1-e2", "e3-e4", "e1+e2", "e3+e4"});
    const RootSystem& a5 = RootSystem::parse("A5");
    auto seq = a5.orthogonal_sequence();
    CHECK(a5.root_name(seq.connector(0, 1)) == "e2-e3");
    CHECK(a5.root_name(seq.connector(1, 2)) == "e4-e5");
    CHECK(a5.root_name(seq.connector(0, 2)) == "e2-e5");
}

TEST_CASE("simple coefficients have one sign") {
    const RootSystem& e7 = RootSystem::parse("E7");
    for (int i = 0; i < e7.num_roots(); ++i) {
        const auto& c = e7.simple_coefficients(i);
        const bool pos = RootSystem::is_positive(i);
        for (int v : c) CHECK((pos ? v >= 0 : v <= 0));
    }
}
