#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sd/core.hpp"

using namespace sd;

namespace {

std::mt19937_64 rng(7);

Element random_element(const GroupTag& tag) {
    std::uniform_int_distribution<long long> d(-5, 5);
    switch (tag.kind) {
        case Group::Zd: {
            std::vector<Int> c;
            for (int i = 0; i < tag.dim; ++i) c.push_back(d(rng));
            return Element(tag, ZdCoords{std::move(c)});
        }
        case Group::Heis: return Element(HeisCoords{d(rng), d(rng), d(rng)});
        case Group::Fib: return Element(FibCoords{d(rng), d(rng), d(rng) % 3});
        case Group::Bs12: {
            std::uniform_int_distribution<long long> e(0, 3);
            return Element(BsCoords{d(rng), e(rng), d(rng) % 3});
        }
    }
    throw std::logic_error("bad tag");
}

const GroupTag kZ1{Group::Zd, 1};
const GroupTag kZ2{Group::Zd, 2};
const GroupTag kHeis{Group::Heis};
const GroupTag kFib{Group::Fib};
const GroupTag kBs{Group::Bs12};

FiniteSubset parse_set(const GroupTag& tag, const std::vector<std::string>& lits) {
    std::vector<Element> elems;
    for (const auto& s : lits) elems.push_back(parse_element(tag, s));
    return FiniteSubset::from_elements(std::move(elems));
}

}  // namespace

TEST_CASE("group axioms hold on random elements") {
    for (const GroupTag& tag : {kZ2, kHeis, kFib, kBs}) {
        CAPTURE(to_string(tag));
        Element e = identity(tag);
        for (int t = 0; t < 200; ++t) {
            Element g = random_element(tag), h = random_element(tag), x = random_element(tag);
            CHECK(mul(mul(g, h), x) == mul(g, mul(h, x)));
            CHECK(mul(g, e) == g);
            CHECK(mul(e, g) == g);
            CHECK(is_identity(mul(g, inv(g))));
            CHECK(inv(mul(g, h)) == mul(inv(h), inv(g)));
        }
    }
}

TEST_CASE("power agrees with repeated multiplication") {
    for (const GroupTag& tag : {kHeis, kFib, kBs}) {
        for (int t = 0; t < 30; ++t) {
            Element g = random_element(tag);
            Element acc = identity(tag);
            for (long long n = 0; n <= 8; ++n) {
                CHECK(power(g, n) == acc);
                CHECK(power(g, -n) == inv(acc));
                acc = mul(acc, g);
            }
        }
    }
    CHECK(power(Element(BsCoords{1, 0, 0}), 1000) == Element(BsCoords{1000, 0, 0}));
}

TEST_CASE("conjugation and commutators") {
    for (const GroupTag& tag : {kHeis, kFib, kBs}) {
        for (int t = 0; t < 100; ++t) {
            Element g = random_element(tag), x = random_element(tag), y = random_element(tag);
            CHECK(conjugate(conjugate(g, x), y) == conjugate(g, mul(x, y)));
            CHECK(mul(y, commutator(y, g)) == conjugate(y, g));  // y [y,g] = y^g
            CHECK(commute(g, g));
            CHECK(commute(g, power(g, 3)));
        }
    }
}

TEST_CASE("subsets sort, deduplicate and reject mixtures") {
    FiniteSubset S = parse_set(kHeis, {"H(1,0,0)", "H(0,1,0)", "H(1,0,0)", "H(0,0,1)"});
    CHECK(S.size() == 3);
    for (std::size_t i = 0; i + 1 < S.size(); ++i)
        CHECK(compare(S[i], S[i + 1]) == Ordering::LT);
    CHECK(S.contains(parse_element(kHeis, "H(0,1,0)")));
    CHECK(!S.contains(identity(kHeis)));
    CHECK(S.min() == parse_element(kHeis, "H(0,0,1)"));  // central c is least here
    CHECK_THROWS_AS(FiniteSubset::from_elements({}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteSubset::from_elements({identity(kHeis), identity(kFib)}),
                    MixedGroupError);
}

TEST_CASE("product sets against the oracle models") {
    for (const GroupTag& tag : {kHeis, kFib, kBs}) {
        CAPTURE(to_string(tag));
        for (int t = 0; t < 40; ++t) {
            std::vector<Element> elems;
            std::uniform_int_distribution<int> size(1, 5);
            int n = size(rng);
            for (int i = 0; i < n; ++i) elems.push_back(random_element(tag));
            FiniteSubset S = FiniteSubset::from_elements(std::move(elems));
            CHECK(square(S).size() == oracle::square_size(S));
        }
    }
}

TEST_CASE("singleton and two-element squares") {
    FiniteSubset one = parse_set(kFib, {"F(2,-1;1)"});
    CHECK(square(one).size() == 1);
    FiniteSubset two = parse_set(kBs, {"B(0;-1)", "B(1;0)"});
    CHECK(square(two).size() == 4);  // free-ish pair: all four products distinct
}

TEST_CASE("doubling report on K6") {
    FiniteSubset K6 =
        parse_set(kZ2, {"(0,0)", "(1,0)", "(2,0)", "(0,1)", "(0,2)", "(1,1)"});
    DoublingReport r = doubling_report(K6);
    CHECK(r.k == 6);
    CHECK(r.square_size == 15);
    CHECK(r.exactly_3k_minus_3);
    CHECK(!r.meets_3k_minus_4);
    CHECK(r.pairwise_commuting);
    CHECK(oracle::square_size(K6) == 15);
}

TEST_CASE("doubling report on a BS12 progression") {
    // {b, ba, ba^2, ba^3}: |S^2| = 3k-2 = 10
    FiniteSubset S = parse_set(kBs, {"B(0;-1)", "B(1/2^1;-1)", "B(1;-1)", "B(3/2^1;-1)"});
    DoublingReport r = doubling_report(S);
    CHECK(r.k == 4);
    CHECK(r.square_size == 10);
    CHECK(r.exactly_3k_minus_2);
    CHECK(!r.pairwise_commuting);
    CHECK(oracle::square_size(S) == 10);
}

TEST_CASE("pairwise commuting detection") {
    CHECK(!pairwise_commuting(parse_set(kHeis, {"H(2,0,0)", "H(0,2,0)"})));
    CHECK(pairwise_commuting(parse_set(kHeis, {"H(0,0,1)", "H(0,0,4)", "H(2,0,0)"})));
    CHECK(pairwise_commuting(parse_set(kZ2, {"(1,2)", "(3,4)"})));
    CHECK(!pairwise_commuting(parse_set(kFib, {"F(1,0;0)", "F(0,0;1)"})));
}
