#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chevkit/ring.hpp"

using namespace chevkit;

TEST_CASE("parsing ring specs") {
    Ring z4 = Ring::make("Z/4");
    CHECK(z4.kind() == Kind::IntMod);
    CHECK(z4.is_local());
    CHECK(z4.local_without_half());
    CHECK(z4.from_int(2).in_radical());
    CHECK_FALSE(z4.from_int(1).in_radical());
    CHECK(z4.from_int(2) * z4.from_int(2) == z4.zero());

    Ring k = Ring::make("residue(Z/4)");
    CHECK(k.is_field());
    CHECK(k.field_order() == 2);

    Ring d = Ring::make("dual(residue(Z/2))");
    CHECK(d.is_local());
    CHECK_FALSE(d.is_field());
    CHECK(d.from_int(3).is_unit());
    CHECK(d.from_int(3) == d.one());

    CHECK(Ring::make("residue(Zodd)").field_order() == 2);
    CHECK_FALSE(Ring::make("omega(Z)").is_local());
    CHECK(Ring::make("omega(Z/4)").is_local());
    CHECK(Ring::make("dual(Zodd)").is_local());
}

TEST_CASE("rejected specs") {
    CHECK_THROWS_AS(Ring::make("Z/"), SpecError);
    CHECK_THROWS_AS(Ring::make("Z/1"), SpecError);
    CHECK_THROWS_AS(Ring::make("Q"), SpecError);
    CHECK_THROWS_AS(Ring::make("dual(Z/4"), SpecError);
    CHECK_FALSE(Ring::make("Z/6").is_local());
    CHECK_FALSE(Ring::make("omega(Z/7)").is_local());
}

TEST_CASE("units and inverses") {
    Ring z4 = Ring::make("Z/4");
    CHECK(z4.from_int(3).inverse() == z4.from_int(3));
    CHECK_THROWS_AS(z4.from_int(2).inverse(), NonUnit);

    Ring zodd = Ring::make("Zodd");
    CHECK(zodd.parse(std::string_view("3/5")).is_unit());
    CHECK_FALSE(zodd.from_int(2).is_unit());
    CHECK(zodd.from_int(2).in_radical());
    CHECK_THROWS_AS(zodd.parse(std::string_view("1/2")), SpecError);
    CHECK_THROWS_AS(z4.parse(std::string_view("1/2")), NonUnit);
    CHECK(z4.parse(std::string_view("1/3")) == z4.from_int(3));
}

TEST_CASE("xi in omega(Z/4)") {
    Ring w = Ring::make("omega(Z/4)");
    Element xi = w.xi();
    Element xi2 = xi * xi;
    CHECK(xi2 == w.from_int(3) + w.from_int(3) * xi);
    CHECK(xi * xi2 == w.one());
    CHECK(xi2 + xi + w.one() == w.zero());
    CHECK(xi.inverse() == xi2);
}

TEST_CASE("residue maps") {
    Ring z4 = Ring::make("Z/4");
    CHECK(z4.from_int(3).residue() == z4.residue_field().one());
    CHECK(z4.residue_field().field_order() == 2);
    Ring d = Ring::make("dual(Z/2)");
    Element eps = d.parse(json{{"a", 0}, {"b", 1}});
    CHECK(eps.in_radical());
    CHECK((d.one() + eps).residue() == d.residue_field().one());
    Ring zodd = Ring::make("Zodd");
    CHECK(zodd.parse(std::string_view("7/3")).residue() == zodd.residue_field().one());
}

TEST_CASE("serialization round trip") {
    std::mt19937_64 rng(11);
    for (const char* spec : {"Z", "Z/8", "Zodd", "dual(Z/2)", "omega(Z/4)", "dual(omega(Z/2))", "omega(dual(Z/2))"}) {
        Ring r = Ring::make(spec);
        for (int k = 0; k < 50; ++k) {
            Element a = r.random(rng);
            CHECK(r.parse(a.to_json()) == a);
        }
    }
}

TEST_CASE("field axioms on small fields") {
    for (const char* spec : {"Z/2", "Z/3", "omega(Z/2)", "residue(omega(Z/4))"}) {
        Ring f = Ring::make(spec);
        REQUIRE(f.is_field());
        std::mt19937_64 rng(3);
        for (int k = 0; k < 100; ++k) {
            Element a = f.random(rng);
            if (a.is_zero()) continue;
            CHECK(a.is_unit());
            CHECK(a * a.inverse() == f.one());
        }
    }
}

TEST_CASE("mixing rings is an error") {
    CHECK_THROWS_AS(Ring::make("Z/4").one() + Ring::make("Z/8").one(), RingMismatch);
}
