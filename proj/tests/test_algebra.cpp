#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skl/algebra.hpp"

#include "skl/rng.hpp"

#include <algorithm>
#include <map>

using namespace skl;
using Elt = PrimeField::Elt;

static Presentation generic_pres(std::uint32_t p = 1000003) {
    PrimeField f(p);
    return Presentation(f, f.from_int(1), f.from_int(2), f.from_int(3));
}

// Direct oracle: eliminate the full degree-n span u * r * v over all 3^n
// words (columns in plain numeric = deg-lex order), with no recursion.
struct DirectContext {
    std::vector<Word> standard_words;
    std::map<Word, FVec> nf; // every word -> coordinates over standard_words
    std::uint32_t rank = 0;
};

static DirectContext direct_context(const Presentation& pres, int n) {
    const PrimeField& f = pres.f;
    FMat m;
    m.ncols = kPow3[n];
    for (const auto& rel : pres.relations)
        for (int i = 0; i + 2 <= n; ++i)
            for (Word u = 0; u < kPow3[i]; ++u)
                for (Word v = 0; v < kPow3[n - 2 - i]; ++v) {
                    FVec row;
                    for (auto& [w2, coef] : rel.terms)
                        row.terms.push_back(
                            {u * kPow3[n - i] + w2 * kPow3[n - 2 - i] + v, coef});
                    std::sort(row.terms.begin(), row.terms.end());
                    m.rows.push_back(std::move(row));
                }
    auto ech = rref(f, m);

    DirectContext out;
    out.rank = ech.rank();
    std::vector<std::uint32_t> col_to_std(kPow3[n], UINT32_MAX);
    for (Word w = 0; w < kPow3[n]; ++w)
        if (!std::binary_search(ech.pivots.begin(), ech.pivots.end(), w)) {
            col_to_std[w] = static_cast<std::uint32_t>(out.standard_words.size());
            out.standard_words.push_back(w);
        }
    for (Word w = 0; w < kPow3[n]; ++w) {
        FVec unit;
        unit.terms.push_back({w, f.one()});
        FVec resid = ech.reduce(f, unit);
        FVec coords;
        for (auto& [col, val] : resid.terms) coords.terms.push_back({col_to_std[col], val});
        out.nf[w] = std::move(coords);
    }
    return out;
}

TEST_CASE("recursive contexts match direct full-span elimination") {
    Presentation pres = generic_pres();
    Algebra alg(pres, 5);
    for (int n = 2; n <= 5; ++n) {
        DirectContext oracle = direct_context(pres, n);
        const DegreeContext& ctx = alg.context(n);
        REQUIRE(ctx.standard_words == oracle.standard_words);
        CHECK(ctx.relation_span_rank == oracle.rank);
        for (Word w = 0; w < kPow3[n]; ++w) {
            FVec got = alg.nf_word(w, n);
            CHECK(got.terms == oracle.nf[w].terms);
        }
    }
}

TEST_CASE("hilbert function matches the commutative polynomial count") {
    Algebra alg(generic_pres(), 9);
    for (int n = 0; n <= 9; ++n)
        CHECK(alg.dim(n) == static_cast<std::uint32_t>((n + 2) * (n + 1) / 2));
}

TEST_CASE("dimensions are prime independent") {
    Algebra a1(generic_pres(1000003), 6);
    Algebra a2(generic_pres(1000033), 6);
    for (int n = 0; n <= 6; ++n) CHECK(a1.dim(n) == a2.dim(n));
}

TEST_CASE("defining relations collapse to zero") {
    Presentation pres = generic_pres();
    Algebra alg(pres, 4);
    for (const auto& rel : pres.relations) {
        FVec image;
        for (auto& [w, coef] : rel.terms)
            axpy(pres.f, image, coef, alg.nf_word(w, 2));
        CHECK(image.empty());
    }
}

TEST_CASE("normal forms of standard words are unit vectors") {
    Algebra alg(generic_pres(), 5);
    for (int n = 0; n <= 5; ++n) {
        const auto& ctx = alg.context(n);
        for (std::uint32_t j = 0; j < ctx.dim(); ++j) {
            FVec v = alg.nf_word(ctx.standard_words[j], n);
            REQUIRE(v.terms.size() == 1);
            CHECK(v.terms[0] == std::pair<std::uint32_t, Elt>{j, alg.field().one()});
        }
    }
}

TEST_CASE("concatenation normal form agrees with whole-word normal form") {
    Algebra alg(generic_pres(), 7);
    Rng rng(5);
    for (int it = 0; it < 300; ++it) {
        int a = 1 + static_cast<int>(rng.below(3));
        int b = 1 + static_cast<int>(rng.below(3));
        Word wu = static_cast<Word>(rng.below(kPow3[a]));
        Word wv = static_cast<Word>(rng.below(kPow3[b]));
        FVec lhs = alg.nf_concat(alg.nf_word(wu, a), a, alg.nf_word(wv, b), b);
        FVec rhs = alg.nf_word(concat_words(wu, wv, b), a + b);
        CHECK(lhs.terms == rhs.terms);
    }
}

TEST_CASE("full space products and powers") {
    Algebra alg(generic_pres(), 6);
    const PrimeField& f = alg.field();
    GradedSubspace s1 = alg.full_space(1);
    CHECK(alg.mult(s1, s1).dim() == 6);
    auto pow = alg.closure(s1, 4);
    CHECK(pow[0].dim() == 3);
    CHECK(pow[1].dim() == 6);
    CHECK(pow[2].dim() == 10);
    CHECK(pow[3].dim() == 15);
    CHECK(pow[1].space.equals(f, alg.full_space(2).space));

    FVec x;
    x.terms.push_back({0, f.one()});
    auto xp = alg.closure(alg.span_of(1, {x}), 4);
    for (const auto& layer : xp) CHECK(layer.dim() == 1);
}

TEST_CASE("multiplication is associative on random subspaces") {
    Algebra alg(generic_pres(), 6);
    const PrimeField& f = alg.field();
    Rng rng(6);
    auto rand_space = [&](int deg, int gens) {
        std::vector<FVec> v;
        for (int i = 0; i < gens; ++i) {
            std::vector<Elt> dense(alg.dim(deg), 0);
            for (auto& e : dense) e = static_cast<Elt>(rng.below(f.modulus()));
            v.push_back(to_sparse(f, dense));
        }
        return alg.span_of(deg, v);
    };
    for (int it = 0; it < 10; ++it) {
        GradedSubspace u = rand_space(1, 2), v = rand_space(2, 2), w = rand_space(1, 1);
        GradedSubspace lhs = alg.mult(alg.mult(u, v), w);
        GradedSubspace rhs = alg.mult(u, alg.mult(v, w));
        CHECK(lhs.space.equals(f, rhs.space));
    }
}

TEST_CASE("transporter basics") {
    Algebra alg(generic_pres(), 5);
    const PrimeField& f = alg.field();
    GradedSubspace s1 = alg.full_space(1);

    // everything transports into the full target
    GradedSubspace all = alg.transporter(s1, alg.full_space(3), 2, Side::right);
    CHECK(all.dim() == alg.dim(2));

    // no zero divisors: nothing transports into {0}
    FVec x;
    x.terms.push_back({0, f.one()});
    GradedSubspace zero2{3, FSub(f, FMat{alg.dim(3), {}})};
    GradedSubspace none = alg.transporter(alg.span_of(1, {x}), zero2, 2, Side::right);
    CHECK(none.dim() == 0);

    // degree mismatch is a usage error
    CHECK_THROWS_AS(alg.transporter(s1, alg.full_space(4), 2, Side::right), UsageError);

    // left and right transporters are both full here but run different code
    GradedSubspace left = alg.transporter(s1, alg.full_space(3), 2, Side::left);
    CHECK(left.dim() == alg.dim(2));
}

TEST_CASE("centrality test") {
    Algebra alg(generic_pres(), 4);
    const PrimeField& f = alg.field();
    FVec x;
    x.terms.push_back({0, f.one()});
    CHECK_FALSE(alg.is_central(alg.span_of(1, {x})));
    CHECK_THROWS_AS(alg.is_central(alg.full_space(1)), UsageError);
}

TEST_CASE("opposite invariance of the relation span") {
    Presentation pres = generic_pres();
    CHECK(anti_invariant(pres.f, pres.relations));
    CHECK(Algebra(pres, 3).opposite_invariant());

    // empty relation set: vacuously invariant
    CHECK(anti_invariant(pres.f, {}));

    // xx + xy maps to yy + xy under reverse-then-swap, which leaves the span
    FVec r;
    r.terms.push_back({0, pres.f.one()});
    r.terms.push_back({1, pres.f.one()});
    CHECK_FALSE(anti_invariant(pres.f, {r}));
}

TEST_CASE("perturbed presentations lose the generic dimension") {
    Presentation pres = generic_pres();
    Presentation bad = pres.perturbed(0, 0, pres.f.from_int(1));
    Algebra alg(bad, 3);
    CHECK(alg.dim(2) == 6);
    CHECK(alg.dim(3) == 9); // generic is 10
}

TEST_CASE("degree cap and argument validation") {
    Presentation pres = generic_pres();
    Algebra alg(pres, 4);
    CHECK_THROWS_AS(alg.context(5), ResourceError);
    CHECK_THROWS_AS(alg.context(-1), UsageError);
    CHECK_THROWS_AS(Algebra(pres, 13), UsageError);
    CHECK_THROWS_AS(Algebra(pres, -1), UsageError);

    CHECK_THROWS_AS(Presentation(pres.f, pres.f.zero(), pres.f.one(), pres.f.one()),
                    DegeneracyError);

    FVec bad_word;
    bad_word.terms.push_back({9, pres.f.one()});
    CHECK_THROWS_AS(Presentation::with_relations(pres.f, {bad_word}), UsageError);

    CHECK(alg.index_of_word(2, 3) == 0); // yx is the first standard degree-2 word
    CHECK_THROWS_AS(alg.index_of_word(2, 0), UsageError); // xx rewrites away

    GradedSubspace s1 = alg.full_space(1);
    CHECK_THROWS_AS(alg.quotient_dim(s1, alg.full_space(2)), UsageError);
}
