#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "TestSupport.h"
#include "store/ExampleStore.h"
#include "lia/Errors.h"

using namespace seglex;
using seglex::test::solverConfig;

namespace {

const PredVarId kRel{"R", 2};
const PredVarId kInv{"I", 1};

GroundApp rel(int a, int b) { return {kRel, {Int(a), Int(b)}}; }
GroundApp inv(int a) { return {kInv, {Int(a)}}; }

ExampleClause unit(GroundApp a) { return {{{std::move(a)}}, {}}; }

ExampleStore freshStore() { return ExampleStore(solverConfig(), {"R"}); }

const PredExamples& examplesOf(const ExamplePartition& p, const PredVarId& pred) {
    static const PredExamples kEmpty;
    auto it = p.byPred.find(pred);
    return it == p.byPred.end() ? kEmpty : it->second;
}

// read the partition back as a partial assignment and evaluate the clause
bool clauseHolds(const ExampleClause& c, const ExamplePartition& p) {
    auto value = [&](const GroundApp& a) -> int {
        const PredExamples& ex = examplesOf(p, a.pred);
        if (ex.pos.count(a.args)) return 1;
        if (ex.neg.count(a.args)) return 0;
        return -1;
    };
    for (const auto& group : c.positives) {
        bool all = true;
        for (const GroundApp& a : group)
            if (value(a) != 1) all = false;
        if (all) return true;
    }
    for (const GroundApp& a : c.negatives)
        if (value(a) == 0) return true;
    return false;
}

} // namespace

TEST_CASE("adding the same clause twice grows the store once") {
    ExampleStore store = freshStore();
    store.addExample(unit(rel(1, 0)));
    store.addExample(unit(rel(1, 0)));
    CHECK(store.size() == 1);
    store.addExample(unit(rel(-2, -1)));
    CHECK(store.size() == 2);

    // literal order does not make a clause new
    store.addExample({{{inv(0)}}, {rel(0, 1), rel(1, 1)}});
    store.addExample({{{inv(0)}}, {rel(1, 1), rel(0, 1)}});
    CHECK(store.size() == 3);
}

TEST_CASE("positive unit clauses extract to positive examples") {
    ExampleStore store = freshStore();
    store.addExample(unit(rel(1, 0)));
    auto out = store.extractPosNeg();
    auto* part = std::get_if<ExamplePartition>(&out);
    REQUIRE(part);
    CHECK(examplesOf(*part, kRel).pos ==
          std::set<std::vector<Int>>{{Int(1), Int(0)}});
    CHECK(examplesOf(*part, kRel).neg.empty());

    store.addExample(unit(rel(-2, -1)));
    out = store.extractPosNeg();
    part = std::get_if<ExamplePartition>(&out);
    REQUIRE(part);
    CHECK(examplesOf(*part, kRel).pos ==
          std::set<std::vector<Int>>{{Int(1), Int(0)}, {Int(-2), Int(-1)}});
    CHECK(examplesOf(*part, kRel).neg.empty());
}

TEST_CASE("unit propagation fixes forced literals") {
    ExampleStore store = freshStore();
    store.addExample({{{inv(0)}, {inv(1)}}, {}}); // I(0) \/ I(1)
    store.addExample({{}, {inv(0)}});             // ~I(0)
    auto out = store.extractPosNeg();
    auto* part = std::get_if<ExamplePartition>(&out);
    REQUIRE(part);
    CHECK(examplesOf(*part, kInv).pos.count({Int(1)}));
    CHECK(examplesOf(*part, kInv).neg.count({Int(0)}));
    for (const ExampleClause& c : store.clauses()) CHECK(clauseHolds(c, *part));
}

TEST_CASE("a direct contradiction yields an unsat witness with both clauses") {
    ExampleStore store = freshStore();
    store.addExample(unit(rel(0, 0)));
    store.addExample({{}, {rel(0, 0)}});
    auto out = store.extractPosNeg();
    auto* w = std::get_if<UnsatWitness>(&out);
    REQUIRE(w);
    CHECK(w->coreClauses == std::vector<size_t>{0, 1});
}

TEST_CASE("free literals of well-founded predicates come out positive") {
    ExampleStore store = freshStore();
    store.addExample({{{rel(1, 0)}}, {rel(0, 1)}}); // R(1,0) \/ ~R(0,1)
    auto out = store.extractPosNeg();
    auto* part = std::get_if<ExamplePartition>(&out);
    REQUIRE(part);
    // whatever the model, the bias pass settles on the positive support
    CHECK(examplesOf(*part, kRel).pos ==
          std::set<std::vector<Int>>{{Int(1), Int(0)}});
    CHECK(examplesOf(*part, kRel).neg.empty());
}

TEST_CASE("an all-negative clause keeps exactly one negative example") {
    ExampleStore store = freshStore();
    store.addExample({{}, {rel(0, 1), rel(1, 1)}});
    auto out = store.extractPosNeg();
    auto* part = std::get_if<ExamplePartition>(&out);
    REQUIRE(part);
    CHECK(examplesOf(*part, kRel).pos.empty());
    CHECK(examplesOf(*part, kRel).neg.size() == 1);
}

TEST_CASE("rejecting a sign pattern blocks it from later extractions") {
    ExampleStore store = freshStore();
    store.addExample({{{rel(1, 0)}, {rel(0, 1)}}, {}}); // R(1,0) \/ R(0,1)
    store.rejectPartition({{rel(1, 0), true}, {rel(0, 1), true}});

    // the blocking clause is stored verbatim: ~R(1,0) \/ ~R(0,1)
    const ExampleClause& block = store.clauses().back();
    CHECK(block.positives.empty());
    REQUIRE(block.negatives.size() == 2);
    CHECK(block.negatives[0] == rel(1, 0));
    CHECK(block.negatives[1] == rel(0, 1));

    auto out = store.extractPosNeg();
    auto* part = std::get_if<ExamplePartition>(&out);
    REQUIRE(part);
    const PredExamples& ex = examplesOf(*part, kRel);
    bool bothPositive =
        ex.pos.count({Int(1), Int(0)}) && ex.pos.count({Int(0), Int(1)});
    CHECK_FALSE(bothPositive);
    for (const ExampleClause& c : store.clauses()) CHECK(clauseHolds(c, *part));
}

TEST_CASE("rejecting a singleton core adds a unit negative clause") {
    ExampleStore store = freshStore();
    store.addExample(unit(rel(0, 0)));
    store.rejectPartition({{rel(0, 0), true}});
    CHECK(store.size() == 2);
    auto out = store.extractPosNeg();
    CHECK(std::holds_alternative<UnsatWitness>(out));
}

TEST_CASE("malformed inputs are rejected") {
    ExampleStore store = freshStore();
    CHECK_THROWS_AS(store.rejectPartition({}), Error);
    CHECK_THROWS_AS(store.addExample({}), Error);
    CHECK_THROWS_AS(store.addExample({{{}}, {}}), Error);
    CHECK_THROWS_AS(store.addExample({{{GroundApp{kRel, {Int(1)}}}}, {}}), Error);
    store.addExample(unit(rel(0, 0)));
    CHECK_THROWS_AS(store.addExample({{{GroundApp{{"R", 1}, {Int(0)}}}}, {}}), Error);
}

TEST_CASE("an empty store extracts an empty partition") {
    ExampleStore store = freshStore();
    auto out = store.extractPosNeg();
    auto* part = std::get_if<ExamplePartition>(&out);
    REQUIRE(part);
    CHECK(part->byPred.empty());
}

TEST_CASE("partition overlap is rejected") {
    ExamplePartition bad;
    bad.byPred[kInv].pos.insert({Int(3)});
    bad.byPred[kInv].neg.insert({Int(3)});
    CHECK_THROWS_AS(checkPartition(bad), Inseparable);
}

TEST_CASE("random clause sets: partitions satisfy every clause, cores re-refute") {
    std::mt19937 rng(20260818);
    std::uniform_int_distribution<int> coin(0, 1), arg(0, 2), litCount(1, 3);
    int partitions = 0, witnesses = 0;

    for (int iter = 0; iter < 25; ++iter) {
        ExampleStore store = freshStore();
        int clauses = 2 + static_cast<int>(rng() % 5);
        for (int i = 0; i < clauses; ++i) {
            ExampleClause c;
            int lits = litCount(rng);
            for (int l = 0; l < lits; ++l) {
                GroundApp a = coin(rng) ? rel(arg(rng), arg(rng))
                                        : inv(arg(rng));
                if (coin(rng))
                    c.positives.push_back({std::move(a)});
                else
                    c.negatives.push_back(std::move(a));
            }
            store.addExample(std::move(c));
        }

        auto out = store.extractPosNeg();
        if (auto* part = std::get_if<ExamplePartition>(&out)) {
            ++partitions;
            checkPartition(*part);
            for (const ExampleClause& c : store.clauses())
                CHECK(clauseHolds(c, *part));
        } else {
            ++witnesses;
            const auto& core = std::get<UnsatWitness>(out).coreClauses;
            REQUIRE_FALSE(core.empty());
            ExampleStore repro = freshStore();
            for (size_t idx : core) {
                REQUIRE(idx < store.size());
                repro.addExample(store.clauses()[idx]);
            }
            CHECK(std::holds_alternative<UnsatWitness>(repro.extractPosNeg()));
        }
    }
    CHECK(partitions > 0); // the corpus is not degenerate
}
