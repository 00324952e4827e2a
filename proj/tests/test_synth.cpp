#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "lia/Errors.h"
#include "synth/InvariantSynth.h"
#include "synth/Qualifiers.h"

using namespace seglex;

namespace {

std::vector<Int> pt(std::initializer_list<int> xs) {
    std::vector<Int> v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

// 1-D affine c0*x0 + c.
AffineExpr ax(int c0, int c) {
    AffineExpr e;
    e.addTerm(preVar(0), c0);
    e.constant = c;
    return e;
}

Halfspace hs(int c0, int c) { return Halfspace::normalized(ax(c0, c)); }

bool contains(const std::vector<Halfspace>& pool, const Halfspace& h) {
    return std::find(pool.begin(), pool.end(), h) != pool.end();
}

Valuation envOf(const std::vector<Int>& p) {
    Valuation env;
    for (uint32_t i = 0; i < p.size(); ++i) env[preVar(i)] = p[i];
    return env;
}

} // namespace

TEST_CASE("interval qualifiers from the four running endpoints") {
    std::vector<std::vector<Int>> pts = {pt({1}), pt({0}), pt({-2}), pt({-1})};
    auto pool = generateQualifiers(pts, QualifierFamily::Intervals);

    // x - a >= 0 for a in {1, 0, -2, -1} plus the complement splits x - (a-1) >= 0.
    CHECK(pool.size() == 5);
    for (int c : {-2, -1, 0, 1, 2}) CHECK(contains(pool, hs(1, c)));

    CHECK(std::is_sorted(pool.begin(), pool.end()));
    CHECK(std::adjacent_find(pool.begin(), pool.end()) == pool.end());
}

TEST_CASE("octagon qualifiers through a single 2-D point") {
    auto pool = generateQualifiers({pt({0, 0})}, QualifierFamily::Octagons);

    // 4 axis splits plus 4 diagonal splits, all normalized.
    CHECK(pool.size() == 8);
    AffineExpr sum, diff;
    sum.addTerm(preVar(0), 1);
    sum.addTerm(preVar(1), 1);
    diff.addTerm(preVar(0), 1);
    diff.addTerm(preVar(1), -1);
    CHECK(contains(pool, Halfspace::normalized(sum)));
    CHECK(contains(pool, Halfspace::normalized(diff)));
    CHECK(contains(pool, hs(1, 0)));
}

TEST_CASE("qualifier generation edge cases") {
    CHECK(generateQualifiers({}, QualifierFamily::Intervals).empty());
    CHECK(generateQualifiers({}, QualifierFamily::Octagons).empty());

    auto pool = generateQualifiers({pt({3}), pt({3})}, QualifierFamily::Intervals);
    CHECK(pool.size() == 2); // duplicates collapse
    CHECK(contains(pool, hs(1, -3)));
    CHECK(contains(pool, hs(1, -4)));

    CHECK_THROWS_AS(generateQualifiers({pt({1}), pt({1, 2})}, QualifierFamily::Intervals),
                    Error);
}

TEST_CASE("qualifier preference order") {
    AffineExpr two;
    two.addTerm(preVar(0), 1);
    two.addTerm(preVar(1), 1);
    Halfspace wide = Halfspace::normalized(two);

    CHECK(qualifierPreferred(hs(1, 0), wide));     // fewer coefficients
    CHECK(qualifierPreferred(hs(1, 0), hs(1, 2))); // smaller |constant|
    CHECK(qualifierPreferred(hs(1, 0), hs(1, -2)));
    CHECK(qualifierPreferred(hs(1, -1), hs(1, 1))); // |c| tie: total order
    CHECK_FALSE(qualifierPreferred(hs(1, 1), hs(1, -1)));
    CHECK_FALSE(qualifierPreferred(hs(1, 0), hs(1, 0)));
}

TEST_CASE("separates tests opposite sides") {
    CHECK(separates(hs(1, 0), pt({1}), pt({-2})));
    CHECK(separates(hs(1, 0), pt({-2}), pt({1})));
    CHECK_FALSE(separates(hs(1, 0), pt({1}), pt({0})));
    CHECK_FALSE(separates(hs(1, 0), pt({-1}), pt({-2})));
}

TEST_CASE("invariant synthesis: no negatives gives the constant-true leaf") {
    auto pool = generateQualifiers({pt({3})}, QualifierFamily::Intervals);
    auto t = synthInvariant({pt({3})}, {}, pool);

    CHECK(t->isLeaf());
    CHECK(t->verdict);
    CHECK(t->classify(pt({3})));
    CHECK(t->classify(pt({-7})));
    CHECK(evalFormula(boolTreeFormula(*t), envOf(pt({3}))));
    CHECK(evalFormula(boolTreeFormula(*t), envOf(pt({-7}))));
}

TEST_CASE("invariant synthesis: one-sided cut") {
    std::set<std::vector<Int>> pos = {pt({1}), pt({2})};
    std::set<std::vector<Int>> neg = {pt({-1})};
    auto pool = generateQualifiers({pt({1}), pt({2}), pt({-1})}, QualifierFamily::Intervals);
    auto t = synthInvariant(pos, neg, pool);

    // x >= 0 and x >= 1 both separate perfectly; the tie-break takes x >= 0.
    REQUIRE_FALSE(t->isLeaf());
    CHECK(t->test->expr == ax(1, 0));
    CHECK(t->ge->isLeaf());
    CHECK(t->lt->isLeaf());
    CHECK(t->depth() == 1);
    for (const auto& p : pos) CHECK(t->classify(p));
    for (const auto& p : neg) CHECK_FALSE(t->classify(p));
}

TEST_CASE("invariant synthesis: two-sided cut") {
    std::set<std::vector<Int>> pos = {pt({3})};
    std::set<std::vector<Int>> neg = {pt({0}), pt({4})};
    auto pool = generateQualifiers({pt({3}), pt({0}), pt({4})}, QualifierFamily::Intervals);
    auto t = synthInvariant(pos, neg, pool);

    // No single interval separates {3} from {0, 4}; the tree needs two tests.
    REQUIRE_FALSE(t->isLeaf());
    CHECK(t->depth() == 2);
    FormulaPtr f = boolTreeFormula(*t);
    for (int x : {1, 2, 3}) CHECK(evalFormula(f, envOf(pt({x}))));
    for (int x : {-1, 0, 4, 5}) CHECK_FALSE(evalFormula(f, envOf(pt({x}))));
}

TEST_CASE("invariant synthesis error paths") {
    auto pool = generateQualifiers({pt({5})}, QualifierFamily::Intervals);
    CHECK_THROWS_AS(synthInvariant({pt({5})}, {pt({5})}, pool), Inseparable);
    CHECK_THROWS_AS(synthInvariant({pt({1})}, {pt({2})}, {}), NoSeparatingQualifier);

    auto empty = synthInvariant({}, {}, {});
    CHECK(empty->isLeaf());
    CHECK_FALSE(empty->verdict);
    CHECK_FALSE(empty->classify(pt({0})));
}

TEST_CASE("invariant tree printing is non-empty") {
    auto pool = generateQualifiers({pt({1}), pt({2}), pt({-1})}, QualifierFamily::Intervals);
    auto t = synthInvariant({pt({1}), pt({2})}, {pt({-1})}, pool);
    std::string s = printBoolTree(*t);
    CHECK_FALSE(s.empty());
    CHECK(s.find(">= 0") != std::string::npos);
}

TEST_CASE("invariant synthesis fuzz: consistency and depth bound") {
    std::mt19937 rng(20260818);
    std::uniform_int_distribution<int> coord(-10, 10);
    std::uniform_int_distribution<int> count(1, 6);

    for (int round = 0; round < 40; ++round) {
        std::set<std::vector<Int>> pos, neg;
        for (int i = count(rng); i > 0; --i) pos.insert(pt({coord(rng), coord(rng)}));
        for (int i = count(rng); i > 0; --i) {
            auto p = pt({coord(rng), coord(rng)});
            if (!pos.count(p)) neg.insert(p);
        }
        std::vector<std::vector<Int>> all(pos.begin(), pos.end());
        all.insert(all.end(), neg.begin(), neg.end());
        auto family = round % 2 ? QualifierFamily::Octagons : QualifierFamily::Intervals;
        auto t = synthInvariant(pos, neg, generateQualifiers(all, family));

        CHECK(t->depth() <= all.size());
        FormulaPtr f = boolTreeFormula(*t);
        for (const auto& p : pos) {
            CHECK(t->classify(p));
            CHECK(evalFormula(f, envOf(p)));
        }
        for (const auto& p : neg) {
            CHECK_FALSE(t->classify(p));
            CHECK_FALSE(evalFormula(f, envOf(p)));
        }
    }
}
