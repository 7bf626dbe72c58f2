#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualramsey/cantor.hpp"
#include "dualramsey/types.hpp"
#include "oracles.hpp"

#include <random>

using namespace dualramsey;

namespace {

Point pt(const char* s) { return Point::parse(s); }

FiniteMap fm(std::size_t cod, std::vector<Value> images) {
    const std::size_t dom = images.size();
    return FiniteMap(dom, cod, std::move(images));
}

std::vector<Point> all_points(std::size_t m) {
    std::vector<Point> out;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k)
        out.emplace_back(m, k);
    return out;
}

} // namespace

TEST_CASE("Point encoding") {
    const Point p = pt("0101");
    CHECK(p.width() == 4);
    CHECK_FALSE(p.bit(0));
    CHECK(p.bit(1));
    CHECK(p.to_string() == "0101");
    const int bits[] = {1, 1, 0};
    CHECK(Point::from_bits(bits) == pt("110"));
    CHECK_THROWS_AS(Point::parse("01a"), std::invalid_argument);
    CHECK_THROWS_AS(Point::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Point(2, 4), std::invalid_argument);
}

TEST_CASE("powerset_apply") {
    for (auto& x : all_points(3))
        CHECK(powerset_apply(FiniteMap::identity(3), x) == x);
    CHECK(powerset_apply(fm(2, {0, 1, 0, 1}), pt("01")) == pt("0101"));
    CHECK(powerset_apply(fm(1, {0, 0}), pt("1")) == pt("11"));
    CHECK_THROWS_AS(powerset_apply(fm(2, {0, 1}), pt("011")), std::invalid_argument);

    SUBCASE("is preimage on subsets") {
        for (auto& s : oracle::all_sequences(4, 3)) {
            const FiniteMap h(4, 3, s);
            for (auto& x : all_points(3)) {
                const auto a = oracle::as_set(x);
                std::set<std::size_t> pre;
                for (std::size_t i = 0; i < 4; ++i)
                    if (a.count(h(i)))
                        pre.insert(i);
                CHECK(oracle::as_set(powerset_apply(h, x)) == pre);
            }
        }
    }
    SUBCASE("contravariant in the map") {
        for (std::size_t a = 1; a <= 4; ++a)
            for (std::size_t b = 1; b <= 4 - (a == 4); ++b)
                for (std::size_t c = 1; c <= 3; ++c)
                    for (auto& s1 : oracle::all_sequences(a, b))
                        for (auto& s2 : oracle::all_sequences(b, c)) {
                            const FiniteMap h1(a, b, s1), h2(b, c, s2);
                            for (auto& x : all_points(c))
                                CHECK(powerset_apply(compose(h2, h1), x) ==
                                      powerset_apply(h1, powerset_apply(h2, x)));
                        }
    }
    SUBCASE("injective for surjective maps") {
        for (std::size_t M = 1; M <= 4; ++M)
            for (std::size_t m = 1; m <= M; ++m)
                for (auto& s : oracle::all_sequences(M, m)) {
                    if (std::set<Value>(s.begin(), s.end()).size() != m)
                        continue;
                    const FiniteMap h(M, m, s);
                    std::set<std::uint64_t> images;
                    for (auto& x : all_points(m))
                        images.insert(powerset_apply(h, x).key());
                    CHECK(images.size() == (std::size_t{1} << m));
                }
    }
}

TEST_CASE("lex_compare") {
    CHECK(lex_compare(pt("01"), pt("10")) == std::strong_ordering::less);
    CHECK(lex_compare(pt("011"), pt("011")) == std::strong_ordering::equal);
    CHECK(lex_compare(pt("00"), pt("01")) == std::strong_ordering::less);
    CHECK(lex_compare(pt("10"), pt("01")) == std::strong_ordering::greater);
    CHECK_THROWS_AS(lex_compare(pt("0"), pt("01")), std::invalid_argument);

    SUBCASE("first-differing-bit rule agrees with the set definition") {
        for (std::size_t m = 1; m <= 4; ++m)
            for (auto& x : all_points(m))
                for (auto& y : all_points(m))
                    CHECK((lex_compare(x, y) != std::strong_ordering::greater) == oracle::lex_leq_by_sets(x, y));
    }
    SUBCASE("total order extending the coordinatewise order") {
        for (std::size_t m = 1; m <= 4; ++m) {
            const auto pts = all_points(m);
            for (auto& x : pts)
                for (auto& y : pts) {
                    const auto xy = lex_compare(x, y);
                    CHECK((xy == std::strong_ordering::equal) == (x == y));
                    CHECK(lex_compare(y, x) == 0 <=> xy);
                    if (poset_leq(x, y))
                        CHECK(xy != std::strong_ordering::greater);
                    for (auto& z : pts)
                        if (xy != std::strong_ordering::greater && lex_compare(y, z) != std::strong_ordering::greater)
                            CHECK(lex_compare(x, z) != std::strong_ordering::greater);
                }
        }
    }
}

TEST_CASE("poset, graph and Boolean operations") {
    CHECK(poset_leq(pt("01"), pt("11")));
    CHECK_FALSE(poset_leq(pt("01"), pt("10")));
    CHECK(poset_leq(pt("101"), pt("101")));

    CHECK(graph_adjacent(pt("110"), pt("011")));
    CHECK_FALSE(graph_adjacent(pt("10"), pt("01")));
    CHECK_FALSE(graph_adjacent(pt("11"), pt("11")));

    CHECK(join(pt("01"), pt("10")) == pt("11"));
    CHECK(meet(pt("011"), pt("110")) == pt("010"));
    CHECK(complement(bot(3)) == top(3));
    for (auto& x : all_points(3)) {
        CHECK(meet(x, complement(x)) == bot(3));
        CHECK(join(x, complement(x)) == top(3));
        CHECK(complement(complement(x)) == x);
    }
    CHECK_THROWS_AS(meet(pt("0"), pt("00")), std::invalid_argument);
    CHECK_THROWS_AS(graph_adjacent(pt("0"), pt("00")), std::invalid_argument);
}

TEST_CASE("transpose") {
    const PointFamily single(1, {pt("1")});
    CHECK(transpose(single) == single);

    const PointFamily f(2, {pt("10"), pt("01")});
    CHECK(transpose(f) == f);

    const PointFamily g(3, {pt("110"), pt("011")});
    const PointFamily tg = transpose(g);
    CHECK(tg.arity() == 3);
    CHECK(tg.width() == 2);
    CHECK(tg[0] == pt("10"));
    CHECK(tg[1] == pt("11"));
    CHECK(tg[2] == pt("01"));

    SUBCASE("involution on random rectangular families") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t arity = 1 + rng() % 7;
            const std::size_t width = 1 + rng() % 7;
            std::vector<Point> entries;
            for (std::size_t a = 0; a < arity; ++a)
                entries.emplace_back(width, rng() & ((std::uint64_t{1} << width) - 1));
            const PointFamily r(width, entries);
            CHECK(transpose(transpose(r)) == r);
        }
    }
    SUBCASE("transpose lemma, exhaustive over widths up to 3") {
        for (std::size_t a = 1; a <= 3; ++a)
            for (std::size_t b = 1; b <= 3; ++b)
                for (std::uint64_t i = 0; i < family_count(b, a); ++i) {
                    const PointFamily fam = family_unrank(b, a, i);
                    for (auto& s : oracle::all_sequences(a, a)) {
                        const FiniteMap h(a, a, s);
                        CHECK(transpose(powerset_apply(h, fam)) == reindex(transpose(fam), h));
                    }
                }
    }
    CHECK_THROWS_AS(PointFamily(2, {pt("10"), pt("1")}), std::invalid_argument);
}

TEST_CASE("check_claim1") {
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t M = m; M <= 5; ++M)
            for (const auto& h : enumerate_rsurj(M, m))
                CHECK(check_claim1(h));
    CHECK(check_claim1(RigidSurjection::identity(4)));

    // h = [0,1,0,1], A = {1}: min h^{-1}(A) = 1.
    const FiniteMap h = fm(2, {0, 1, 0, 1});
    const Point g = powerset_apply(h, pt("01"));
    CHECK(g == pt("0101"));
    CHECK_FALSE(g.bit(0));
    CHECK(g.bit(1));
}

TEST_CASE("check_structure_embedding") {
    SUBCASE("every structure, every rigid h with m <= 3, M <= 5") {
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t M = m; M <= 5; ++M)
                for (const auto& h : enumerate_rsurj(M, m))
                    for (Structure s : all_structures)
                        CHECK(check_structure_embedding(h.map(), s));
    }
    SUBCASE("a non-rigid surjection breaks lex") {
        CHECK_FALSE(check_structure_embedding(fm(2, {1, 0}), Structure::Lex));
        // Order-free structures only see the set-level operations.
        CHECK(check_structure_embedding(fm(2, {1, 0}), Structure::B));
        CHECK(check_structure_embedding(fm(2, {1, 0}), Structure::G));
    }
    SUBCASE("least non-rigid counterexample for lex, found by enumeration") {
        std::optional<FiniteMap> least;
        for (std::size_t M = 1; M <= 3 && !least; ++M)
            for (std::size_t m = 1; m <= M && !least; ++m)
                for (auto& s : oracle::all_sequences(M, m)) {
                    const FiniteMap h(M, m, s);
                    if (std::set<Value>(s.begin(), s.end()).size() == m && !is_rigid_surjection(h) &&
                        !check_structure_embedding(h, Structure::Lex)) {
                        least = h;
                        break;
                    }
                }
        REQUIRE(least);
        CHECK(*least == fm(2, {1, 0}));
    }
    SUBCASE("non-surjective maps are not injective on points") {
        CHECK_FALSE(check_structure_embedding(fm(3, {0, 1}), Structure::Q));
    }
    CHECK_THROWS_AS(parse_structure("XYZ"), std::invalid_argument);
    for (Structure s : all_structures)
        CHECK(parse_structure(structure_name(s)) == s);
}

TEST_CASE("enumerate_emb") {
    CHECK(enumerate_emb(1, 1).size() == 2);
    CHECK(enumerate_emb(2, 2).size() == 6);
    auto full = enumerate_emb(8, 3);
    REQUIRE(full.size() == 1);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(full[0][i].key() == i);
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= (std::size_t{1} << m); ++n)
            CHECK(enumerate_emb(n, m).size() == oracle::binomial(std::uint64_t{1} << m, n));
    CHECK_THROWS_AS(enumerate_emb(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(LexTuple(PointFamily(2, {pt("01"), pt("01")})), std::invalid_argument);
    CHECK_THROWS_AS(LexTuple(PointFamily(2, {pt("10"), pt("01")})), std::invalid_argument);
}

TEST_CASE("substructures and their embeddings") {
    CHECK_THROWS_AS(Substructure(Structure::B, {pt("01")}), std::invalid_argument);
    CHECK_THROWS_AS(Substructure(Structure::L, {pt("01"), pt("10")}), std::invalid_argument);
    CHECK_THROWS_AS(Substructure(Structure::Q, {pt("01"), pt("01")}), std::invalid_argument);

    SUBCASE("the chain gives the lex tuples") {
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t m = 1; m <= 3; ++m) {
                if (n > (std::size_t{1} << m))
                    continue;
                std::vector<PointFamily> tuples;
                for (auto& t : enumerate_emb(n, m))
                    tuples.push_back(t.family());
                CHECK(enumerate_embeddings(Substructure::chain(n), m) == tuples);
            }
    }
    SUBCASE("the two-element Boolean algebra embeds one way") {
        const Substructure two(Structure::B, {pt("0"), pt("1")});
        const auto e = enumerate_embeddings(two, 3);
        REQUIRE(e.size() == 1);
        CHECK(e[0] == PointFamily(3, {bot(3), top(3)}));
    }
    SUBCASE("the four-element Boolean algebra into 2^3: choose an atom split") {
        // Injective homomorphisms 2^2 -> 2^3 send the two atoms to a
        // complementary pair of nonempty proper subsets: 6 ordered choices.
        const Substructure four(Structure::B, {pt("00"), pt("01"), pt("10"), pt("11")});
        CHECK(enumerate_embeddings(four, 3).size() == 6);
        const Substructure four_lex(Structure::EB, {pt("00"), pt("01"), pt("10"), pt("11")});
        // With lex added the atom 01 must land below 10: 3 of the 6.
        CHECK(enumerate_embeddings(four_lex, 3).size() == 3);
    }
    SUBCASE("embeddings compose with P(h) for rigid h") {
        const Substructure sub(Structure::OG, {pt("011"), pt("110"), pt("100")});
        for (std::size_t m = 3; m <= 4; ++m)
            for (const auto& e : enumerate_embeddings(sub, m))
                for (std::size_t M = m; M <= 5; ++M)
                    for (const auto& h : enumerate_rsurj(M, m))
                        CHECK(is_embedding(sub, powerset_apply(h.map(), e)));
    }
}
