#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "TestSupport.h"
#include "frontend/T2Parser.h"
#include "lia/Errors.h"

using namespace seglex;
using seglex::test::solverConfig;

namespace {

const char* kRunning = R"(
START: l0;

FROM: l0;
TO: l1;

FROM: l1;
assume(x != 0 && x < 0);
x := x + 1;
TO: l1;

FROM: l1;
assume(x != 0 && !(x < 0));
x := x - 1;
TO: l1;
)";

TermPtr x() { return tVar(preVar(0)); }

} // namespace

TEST_CASE("running example parses to the three-rule loop") {
    TransitionSystem ts = parseT2(kRunning);
    CHECK(ts.varNames == std::vector<std::string>{"x"});
    CHECK(ts.locNames == std::vector<std::string>{"l0", "l1"});
    CHECK(ts.start == 0);
    REQUIRE(ts.rules.size() == 3);

    CHECK(ts.rules[0].from == 0);
    CHECK(ts.rules[0].to == 1);
    CHECK(ts.rules[0].guard->kind == FormulaKind::True);
    CHECK(ts.rules[0].updates.empty());

    const Rule& inc = ts.rules[1];
    CHECK(formulaEqual(inc.guard, fAnd({fNe(x(), tConst(0)), fLt(x(), tConst(0))})));
    REQUIRE(inc.updates.count(0));
    CHECK(termEqual(*inc.updates.at(0), tAdd({x(), tConst(1)})));

    const Rule& dec = ts.rules[2];
    CHECK(formulaEqual(dec.guard, fAnd({fNe(x(), tConst(0)), fNot(fLt(x(), tConst(0)))})));
    CHECK(termEqual(*dec.updates.at(0), tAdd({x(), tConst(-1)})));
}

TEST_CASE("START alone is a system with no rules") {
    TransitionSystem ts = parseT2("// trivial\nSTART: l0; // loop head\n");
    CHECK(ts.rules.empty());
    CHECK(ts.locNames == std::vector<std::string>{"l0"});
    auto [iota, tau] = toInitAndTransition(ts);
    CHECK(formulaEqual(iota, fEq(tVar(preVar(0)), tConst(0))));
    CHECK(tau->kind == FormulaKind::False);
}

TEST_CASE("nonlinear updates parse as products") {
    TransitionSystem ts = parseT2("START: a;\nFROM: a;\ny := y*y;\nTO: a;\n");
    REQUIRE(ts.rules.size() == 1);
    TermPtr y = tVar(preVar(0));
    CHECK(termEqual(*ts.rules[0].updates.at(0), tMul({y, y})));
    CHECK_FALSE(termIsLinear(*ts.rules[0].updates.at(0)));
    auto [iota, tau] = toInitAndTransition(ts);
    CHECK(isPredicateFree(tau));
    CHECK_FALSE(formulaIsLinear(tau));
}

TEST_CASE("single self-loop expands to the documented conjunct order") {
    TransitionSystem ts;
    ts.varNames = {"x"};
    ts.locNames = {"l0"};
    ts.start = 0;
    Rule r;
    r.from = r.to = 0;
    r.guard = fGt(x(), tConst(0));
    r.updates.emplace(0, tSub(x(), tConst(1)));
    ts.rules.push_back(r);

    auto [iota, tau] = toInitAndTransition(ts);
    VarId pc = preVar(1), pcp = postVar(1);
    CHECK(formulaEqual(iota, fEq(tVar(pc), tConst(0))));
    FormulaPtr expected = fAnd({fEq(tVar(pc), tConst(0)), fGt(x(), tConst(0)),
                                fEq(tVar(pcp), tConst(0)),
                                fEq(tVar(postVar(0)), tSub(x(), tConst(1)))});
    CHECK(formulaEqual(tau, expected));
}

TEST_CASE("running example transition formula structure") {
    TransitionSystem ts = parseT2(kRunning);
    auto [iota, tau] = toInitAndTransition(ts);
    CHECK(formulaEqual(iota, fEq(tVar(preVar(1)), tConst(0))));
    REQUIRE(tau->kind == FormulaKind::Or);
    REQUIRE(tau->args.size() == 3);

    // the increment rule: pc bookkeeping wrapped around the loop body of the
    // paper's first clause (x != 0 und x < 0, x' = x + 1)
    FormulaPtr incExpected =
        fAnd({fEq(tVar(preVar(1)), tConst(1)),
              fAnd({fNe(x(), tConst(0)), fLt(x(), tConst(0))}),
              fEq(tVar(postVar(1)), tConst(1)),
              fEq(tVar(postVar(0)), tAdd({x(), tConst(1)}))});
    CHECK(formulaEqual(tau->args[1], incExpected));

    // the entry rule emits the identity update explicitly
    FormulaPtr entryExpected =
        fAnd({fEq(tVar(preVar(1)), tConst(0)), fEq(tVar(postVar(1)), tConst(1)),
              fEq(tVar(postVar(0)), x())});
    CHECK(formulaEqual(tau->args[0], entryExpected));
}

TEST_CASE("models of tau keep the location counter in range") {
    TransitionSystem ts = parseT2(kRunning);
    auto [iota, tau] = toInitAndTransition(ts);
    SmtSession s(solverConfig());
    CHECK(s.checkSat({{"t", tau}}, false).status == SmtStatus::Sat);
    for (VarId pc : {preVar(1), postVar(1)}) {
        FormulaPtr outside = fOr({fLt(tVar(pc), tConst(0)), fGt(tVar(pc), tConst(1))});
        auto r = s.checkSat({{"t", fAnd({tau, outside})}}, false);
        CHECK(r.status == SmtStatus::Unsat);
    }
}

TEST_CASE("sequential commands compose through the environment") {
    TransitionSystem ts =
        parseT2("START: a;\nFROM: a;\nx := x + 1;\ny := x;\nassume(y >= 2);\nTO: a;\n");
    REQUIRE(ts.rules.size() == 1);
    const Rule& r = ts.rules[0];
    CHECK(termEqual(*r.updates.at(0), tAdd({x(), tConst(1)})));
    CHECK(termEqual(*r.updates.at(1), tAdd({x(), tConst(1)})));
    // the assume saw y's new value, so the guard constrains x + 1
    CHECK(formulaEqual(r.guard, fGe(tAdd({x(), tConst(1)}), tConst(2))));
}

TEST_CASE("reading a havocked variable splits the rule") {
    TransitionSystem ts = parseT2(
        "START: l0;\nFROM: l0;\nx := ?;\nassume(x >= 0);\ny := x + 1;\nTO: l1;\n");
    CHECK(ts.locNames == std::vector<std::string>{"l0", "_s0", "l1"});
    REQUIRE(ts.rules.size() == 2);

    const Rule& havoc = ts.rules[0];
    CHECK(havoc.from == 0);
    CHECK(havoc.to == 1);
    CHECK(havoc.guard->kind == FormulaKind::True);
    REQUIRE(havoc.updates.count(0));
    CHECK_FALSE(havoc.updates.at(0).has_value());

    const Rule& rest = ts.rules[1];
    CHECK(rest.from == 1);
    CHECK(rest.to == 2);
    CHECK(formulaEqual(rest.guard, fGe(x(), tConst(0))));
    CHECK(termEqual(*rest.updates.at(1), tAdd({x(), tConst(1)})));
}

TEST_CASE("an unread havoc stays a single rule") {
    TransitionSystem ts = parseT2("START: l0;\nFROM: l0;\nx := ?;\nTO: l1;\n");
    REQUIRE(ts.rules.size() == 1);
    CHECK_FALSE(ts.rules[0].updates.at(0).has_value());
    // havoc leaves the primed variable unconstrained
    auto [iota, tau] = toInitAndTransition(ts);
    SmtSession s(solverConfig());
    auto r = s.checkSat(
        {{"t", fAnd({tau, fEq(tVar(postVar(0)), tConst(12345))})}}, false);
    CHECK(r.status == SmtStatus::Sat);
}

TEST_CASE("round trips reparse to the same system") {
    for (const char* program :
         {kRunning, "START: l0;\nFROM: l0;\nx := ?;\nTO: l1;\nFROM: l1;\nassume(x > 0);\nx "
                    ":= -2*x + 9;\nTO: l1;\n",
          "START: a;\nFROM: a;\nassume(y >= 1 || (x == 0 && y != 3));\ny := y*y;\nx := x + "
          "y;\nTO: a;\n",
          "START: l0;\nFROM: l0;\nx := ?;\nassume(x >= 0);\ny := x + 1;\nTO: l1;\n",
          "START: 0;\nFROM: 0;\nz2 := 4 - z2 + 2*q;\nTO: 1;\n"}) {
        TransitionSystem once = parseT2(program);
        TransitionSystem twice = parseT2(printT2(once));
        CHECK(systemsEqual(once, twice));
    }
}

TEST_CASE("printing is the exact textual format") {
    TransitionSystem ts =
        parseT2("START: l0;\nFROM: l0;\nassume(x >= 1);\nx := x - 1;\nTO: l0;\n");
    CHECK(printT2(ts) ==
          "START: l0;\n\nFROM: l0;\nassume(x >= 1);\nx := x - 1;\nTO: l0;\n");
}

TEST_CASE("cyclic simultaneous updates print through snapshots") {
    TransitionSystem ts;
    ts.varNames = {"x", "y"};
    ts.locNames = {"a"};
    ts.start = 0;
    Rule swap;
    swap.from = swap.to = 0;
    swap.guard = fTrue();
    swap.updates.emplace(0, tVar(preVar(1)));
    swap.updates.emplace(1, tVar(preVar(0)));
    ts.rules.push_back(swap);

    TransitionSystem reparsed = parseT2(printT2(ts));
    REQUIRE(reparsed.rules.size() == 1);
    auto indexOf = [&](const std::string& name) {
        for (uint32_t i = 0; i < reparsed.numVars(); ++i)
            if (reparsed.varNames[i] == name) return i;
        REQUIRE(false);
        return 0u;
    };
    uint32_t xi = indexOf("x"), yi = indexOf("y");
    CHECK(termEqual(*reparsed.rules[0].updates.at(xi), tVar(preVar(yi))));
    CHECK(termEqual(*reparsed.rules[0].updates.at(yi), tVar(preVar(xi))));
}

TEST_CASE("keywords are case-insensitive and locations may be numeric") {
    TransitionSystem ts = parseT2("StArT: 0;\nfRoM: 0;\nAsSuMe(x >= 0);\ntO: 1;\n");
    CHECK(ts.locNames == std::vector<std::string>{"0", "1"});
    REQUIRE(ts.rules.size() == 1);
    CHECK(formulaEqual(ts.rules[0].guard, fGe(x(), tConst(0))));
}

TEST_CASE("parse errors carry positions; missing START is its own error") {
    CHECK_THROWS_AS(parseT2("FROM: a;\nTO: b;\n"), UndeclaredLocation);
    try {
        parseT2("START: l0;\nFROM l0;\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 6);
    }
    CHECK_THROWS_AS(parseT2("START: a;\nFROM: a;\nstart := 3;\nTO: a;\n"), ParseError);
    CHECK_THROWS_AS(parseT2("START: a;\nFROM: a;\nx := ;\nTO: a;\n"), ParseError);
    CHECK_THROWS_AS(parseT2("START: a;\nFROM: a;\nassume(x >= );\nTO: a;\n"), ParseError);
    CHECK_THROWS_AS(parseT2("START: a;\n@"), ParseError);
}
