#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skl/field.hpp"
#include "skl/rng.hpp"

using namespace skl;

TEST_CASE("modulus validation") {
    CHECK_NOTHROW(PrimeField(1000003));
    CHECK_NOTHROW(PrimeField(1000033));
    CHECK_NOTHROW(PrimeField(7)); // smallest usable: odd prime, 1 mod 3
    CHECK_THROWS_AS(PrimeField(1000004), UsageError); // composite
    CHECK_THROWS_AS(PrimeField(1000037), UsageError); // 2 mod 3
    CHECK_THROWS_AS(PrimeField(5), UsageError);       // 2 mod 3
    CHECK_THROWS_AS(PrimeField(3), UsageError);       // 0 mod 3
    CHECK_THROWS_AS(PrimeField(2147483659u), UsageError); // above 2^31
}

TEST_CASE("primitive cube root of unity") {
    for (std::uint32_t p : {1000003u, 1000033u, 7u}) {
        PrimeField f(p);
        auto w = f.omega();
        CHECK(w != f.one());
        CHECK(f.pow(w, 3) == f.one());
        CHECK(f.add(f.add(f.mul(w, w), w), f.one()) == f.zero());
    }
}

TEST_CASE("field axioms on random elements") {
    PrimeField f(1000003);
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        auto a = f.from_int(static_cast<long long>(rng.below(f.modulus())));
        auto b = f.from_int(static_cast<long long>(rng.below(f.modulus())));
        CHECK(f.add(a, f.neg(a)) == f.zero());
        CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
        if (!f.is_zero(a)) {
            CHECK(f.mul(a, f.inv(a)) == f.one());
            CHECK(f.pow(a, f.modulus() - 1) == f.one()); // Fermat
        }
        CHECK(f.mul(a, b) == f.mul(b, a));
    }
    CHECK_THROWS_AS(f.inv(0), DegeneracyError);
}

TEST_CASE("from_int reduces signed values") {
    PrimeField f(7);
    CHECK(f.from_int(8) == 1);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.from_int(-14) == 0);
    CHECK(f.from_int(7ll * 1000000007ll + 3) == 3);
}

TEST_CASE("rational arithmetic stays reduced") {
    RationalField q;
    auto half = q.inv(q.from_int(2));
    CHECK(half.num == 1);
    CHECK(half.den == 2);
    auto third = q.inv(q.from_int(3));
    auto sum = q.add(half, third);
    CHECK(sum.num == 5);
    CHECK(sum.den == 6);
    CHECK(q.mul(sum, q.from_int(6)) == q.from_int(5));
    CHECK(q.sub(sum, sum) == q.zero());
    CHECK_THROWS_AS(q.inv(q.zero()), DegeneracyError);
}

TEST_CASE("rational overflow raises a resource error") {
    RationalField q;
    auto big = q.from_int(1ll << 62);
    CHECK_THROWS_AS(q.mul(big, big), ResourceError);
    CHECK_THROWS_AS(q.add(big, big), ResourceError);
}

TEST_CASE("deterministic rng streams") {
    Rng a = Rng::stream(1, "tag");
    Rng b = Rng::stream(1, "tag");
    Rng c = Rng::stream(1, "other");
    bool distinct = false;
    for (int i = 0; i < 16; ++i) {
        auto va = a.next();
        CHECK(va == b.next());
        if (va != c.next()) distinct = true;
    }
    CHECK(distinct);
    Rng d(9);
    for (int i = 0; i < 100; ++i) CHECK(d.below(13) < 13);
}
