#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "TestSupport.h"
#include "pcsp/Pcsp.h"
#include "lia/Errors.h"
#include "smt/SmtSession.h"

using namespace seglex;
using seglex::test::solverConfig;

namespace {

TermPtr x() { return tVar(preVar(0)); }
TermPtr xp() { return tVar(postVar(0)); }

// loop body of the running example: (x != 0 && x < 0) -> x+1, else branch -> x-1
FormulaPtr runningTau() {
    return fOr({fAnd({fNe(x(), tConst(0)), fLt(x(), tConst(0)),
                      fEq(xp(), tAdd({x(), tConst(1)}))}),
                fAnd({fNe(x(), tConst(0)), fNot(fLt(x(), tConst(0))),
                      fEq(xp(), tAdd({x(), tConst(-1)}))})});
}

bool smtValid(SmtSession& s, const FormulaPtr& f) {
    return s.checkSat({{"goal", fNot(f)}}, false).status == SmtStatus::Unsat;
}

DefinedPred pred(uint32_t arity, FormulaPtr body) { return {arity, std::move(body)}; }

} // namespace

TEST_CASE("termination encoding has the three-clause shape") {
    Pcsp p = encodeTermination(fTrue(), runningTau(), {preVar(0)});
    REQUIRE(p.clauses.size() == 3);
    REQUIRE(p.wf.size() == 1);
    CHECK(p.wf[0] == PredVarId{"R", 2});

    PredVarId inv{"I", 1};
    PredApp invPre{inv, {x()}};
    CHECK(clauseEqual(p.clauses[0], Clause{fNot(fTrue()), {{invPre}}, {}}));
    CHECK(clauseEqual(p.clauses[1],
                      Clause{fNot(runningTau()), {{PredApp{inv, {xp()}}}}, {invPre}}));
    CHECK(clauseEqual(p.clauses[2],
                      Clause{fNot(runningTau()),
                             {{PredApp{p.wf[0], {x(), xp()}}}},
                             {invPre}}));
    for (const Clause& c : p.clauses) CHECK(isPredicateFree(c.body));
}

TEST_CASE("a piecewise relation solves the running example's encoding") {
    Pcsp p = encodeTermination(fTrue(), runningTau(), {preVar(0)});
    CandidateSolution sigma;
    sigma.defs["I"] = pred(1, fTrue());
    // decreasing toward zero from either side
    TermPtr a = tVar(preVar(0)), b = tVar(preVar(1));
    sigma.defs["R"] = pred(
        2, fOr({fAnd({fGe(a, tConst(0)), fGt(a, b)}),
                fAnd({fLe(a, tConst(0)), fLt(a, b)})}));

    SmtSession s(solverConfig());
    for (const FormulaPtr& f : applySubstitution(p, sigma)) CHECK(smtValid(s, f));
}

TEST_CASE("degenerate systems admit trivial solutions") {
    SmtSession s(solverConfig());

    // no transitions: any invariant works, the empty relation ranks
    CandidateSolution noStep;
    noStep.defs["I"] = pred(1, fTrue());
    noStep.defs["R"] = pred(2, fFalse());
    Pcsp pNoStep = encodeTermination(fTrue(), fFalse(), {preVar(0)});
    for (const FormulaPtr& f : applySubstitution(pNoStep, noStep))
        CHECK(smtValid(s, f));

    // no initial states: the empty invariant discharges both step clauses
    CandidateSolution unreachable;
    unreachable.defs["I"] = pred(1, fFalse());
    unreachable.defs["R"] = pred(2, fFalse());
    Pcsp pNoInit = encodeTermination(fFalse(), fEq(xp(), x()), {preVar(0)});
    for (const FormulaPtr& f : applySubstitution(pNoInit, unreachable))
        CHECK(smtValid(s, f));
}

TEST_CASE("non-termination encoding matches the one-variable display") {
    FormulaPtr tau = fEq(xp(), tAdd({tMul({tConst(-2), x()}), tConst(9)}));
    Pcsp p = encodeNontermination(fGt(x(), tConst(0)), tau, {preVar(0)});
    REQUIRE(p.clauses.size() == 4);
    REQUIRE(p.wf.size() == 1);
    CHECK(p.wf[0] == PredVarId{"S", 2});

    PredVarId rec{"R", 1}, search{"E", 2}, step{"S", 2};
    TermPtr y = xp();
    TermPtr down = tAdd({y, tConst(-1)}), up = tAdd({y, tConst(1)});
    std::vector<PredApp> stepDown{PredApp{step, {y, down}}, PredApp{search, {x(), down}}};
    std::vector<PredApp> stepUp{PredApp{step, {y, up}}, PredApp{search, {x(), up}}};

    CHECK(clauseEqual(p.clauses[0],
                      Clause{fNot(fGt(x(), tConst(0))), {{PredApp{rec, {x()}}}}, {}}));
    CHECK(clauseEqual(p.clauses[1],
                      Clause{fFalse(),
                             {{PredApp{search, {x(), tConst(0)}}}},
                             {PredApp{rec, {x()}}}}));
    CHECK(clauseEqual(p.clauses[2],
                      Clause{tau, {stepDown, stepUp}, {PredApp{search, {x(), y}}}}));
    CHECK(clauseEqual(p.clauses[3],
                      Clause{fFalse(),
                             {{PredApp{rec, {y}}}, stepDown, stepUp},
                             {PredApp{search, {x(), y}}}}));
}

TEST_CASE("the displayed recurrent-set witness satisfies all four clauses") {
    // iota = (x > 0) would already fail the first clause at x = 1: the witness
    // set {3} only covers every initial state when the initial states are {3}.
    FormulaPtr tau = fEq(xp(), tAdd({tMul({tConst(-2), x()}), tConst(9)}));
    TermPtr a = tVar(preVar(0)), b = tVar(preVar(1));

    CandidateSolution sigma;
    sigma.defs["R"] = pred(1, fEq(a, tConst(3)));
    sigma.defs["E"] = pred(2, fAnd({fEq(a, tConst(3)), fGe(b, tConst(0)),
                                    fLe(b, tConst(3))}));
    sigma.defs["S"] = pred(2, fAnd({fEq(b, tAdd({a, tConst(1)})),
                                    fLe(b, tConst(3))}));

    SmtSession s(solverConfig());
    Pcsp exact = encodeNontermination(fEq(x(), tConst(3)), tau, {preVar(0)});
    for (const FormulaPtr& f : applySubstitution(exact, sigma)) CHECK(smtValid(s, f));

    Pcsp loose = encodeNontermination(fGt(x(), tConst(0)), tau, {preVar(0)});
    CHECK_FALSE(smtValid(s, applyToClause(loose.clauses[0], sigma)));
    for (size_t i = 1; i < 4; ++i)
        CHECK(smtValid(s, applyToClause(loose.clauses[i], sigma)));
}

TEST_CASE("two-dimensional search steps move one coordinate at a time") {
    std::vector<VarId> vars{preVar(0), preVar(1)};
    FormulaPtr tau = fAnd({fEq(tVar(postVar(0)), tVar(preVar(1))),
                           fEq(tVar(postVar(1)), tVar(preVar(0)))});
    Pcsp p = encodeNontermination(fTrue(), tau, vars);
    REQUIRE(p.clauses.size() == 4);

    const Clause& tauClause = p.clauses[2];
    const Clause& recClause = p.clauses[3];
    REQUIRE(tauClause.positives.size() == 4);  // 2n step groups
    REQUIRE(recClause.positives.size() == 5);  // R(y) plus the step groups
    CHECK(recClause.positives[0].size() == 1);
    CHECK(recClause.positives[0][0].pred == PredVarId{"R", 2});

    TermPtr y0 = tVar(postVar(0)), y1 = tVar(postVar(1));
    int g = 0;
    for (uint32_t i = 0; i < 2; ++i) {
        for (int d : {-1, +1}) {
            const std::vector<PredApp>& group = tauClause.positives[g];
            REQUIRE(group.size() == 2);
            CHECK(group[0].pred == PredVarId{"S", 4});
            CHECK(group[1].pred == PredVarId{"E", 4});
            TermPtr moved = tAdd({i == 0 ? y0 : y1, tConst(d)});
            // S(y, y[i += d]): argument i of the second half is the move
            CHECK(termEqual(group[0].args[0], y0));
            CHECK(termEqual(group[0].args[1], y1));
            CHECK(termEqual(group[0].args[2 + i], moved));
            CHECK(termEqual(group[0].args[2 + (1 - i)], i == 0 ? y1 : y0));
            // E(x, y[i += d]) keeps the source state in the first half
            CHECK(termEqual(group[1].args[0], tVar(preVar(0))));
            CHECK(termEqual(group[1].args[1], tVar(preVar(1))));
            CHECK(termEqual(group[1].args[2 + i], moved));
            CHECK(clauseEqual(Clause{fTrue(), {group}, {}},
                              Clause{fTrue(), {recClause.positives[g + 1]}, {}}));
            ++g;
        }
    }
}

TEST_CASE("substitution reproduces the hand-evaluated counterexamples") {
    // else-branch clause with the relation bound to the empty relation
    FormulaPtr tau2 = fAnd({fNot(fLt(x(), tConst(0))),
                            fEq(xp(), tAdd({x(), tConst(-1)}))});
    Clause c2{fNot(tau2), {{PredApp{{"R", 2}, {x(), xp()}}}}, {}};
    CandidateSolution bottom;
    bottom.defs["R"] = pred(2, fFalse());
    FormulaPtr f2 = applyToClause(c2, bottom);
    CHECK(isPredicateFree(f2));
    CHECK_FALSE(evalFormula(f2, {{preVar(0), 5}, {postVar(0), 4}}));
    CHECK(evalFormula(f2, {{preVar(0), 5}, {postVar(0), 5}}));

    // then-branch clause with the too-narrow relation x > x' && x >= 0
    FormulaPtr tau1 = fAnd({fNe(x(), tConst(0)), fLt(x(), tConst(0)),
                            fEq(xp(), tAdd({x(), tConst(1)}))});
    Clause c1{fNot(tau1), {{PredApp{{"R", 2}, {x(), xp()}}}}, {}};
    CandidateSolution narrow;
    narrow.defs["R"] =
        pred(2, fAnd({fGt(tVar(preVar(0)), tVar(preVar(1))),
                      fGe(tVar(preVar(0)), tConst(0))}));
    FormulaPtr f1 = applyToClause(c1, narrow);
    CHECK_FALSE(evalFormula(f1, {{preVar(0), -2}, {postVar(0), -1}}));

    CHECK(applySubstitution(Pcsp{}, bottom).empty());
}

TEST_CASE("missing or misbound predicates are rejected") {
    Pcsp p = encodeTermination(fTrue(), fEq(xp(), x()), {preVar(0)});
    CandidateSolution sigma;
    sigma.defs["I"] = pred(1, fTrue());
    CHECK_THROWS_AS(applySubstitution(p, sigma), MissingPredicate);
    sigma.defs["R"] = pred(1, fFalse()); // arity 2 expected
    CHECK_THROWS_AS(applySubstitution(p, sigma), MissingPredicate);
    CHECK_THROWS_AS(
        applyDefined(pred(1, fGe(tVar(preVar(3)), tConst(0))), {tConst(0)}), Error);
}

TEST_CASE("encoder input validation") {
    CHECK_THROWS_AS(encodeTermination(fTrue(), fTrue(), {postVar(0)}), Error);
    CHECK_THROWS_AS(encodeTermination(fTrue(), fTrue(), {preVar(0), preVar(0)}), Error);
    CHECK_THROWS_AS(encodeTermination(fGe(tVar(preVar(1)), tConst(0)), fTrue(),
                                      {preVar(0)}),
                    Error);
    CHECK_THROWS_AS(encodeTermination(fTrue(), fEq(tVar(postVar(7)), x()), {preVar(0)}),
                    Error);
    CHECK_THROWS_AS(
        encodeTermination(fPred("P", {x()}), fTrue(), {preVar(0)}), Error);
}

TEST_CASE("structural validation catches malformed problems") {
    Pcsp p;
    p.clauses.push_back({fTrue(), {{PredApp{{"P", 1}, {x()}}}}, {}});
    validatePcsp(p);

    Pcsp oddWf = p;
    oddWf.wf = {PredVarId{"P", 1}};
    CHECK_THROWS_AS(validatePcsp(oddWf), Error);

    Pcsp ghostWf = p;
    ghostWf.wf = {PredVarId{"Q", 2}};
    CHECK_THROWS_AS(validatePcsp(ghostWf), Error);

    Pcsp emptyGroup = p;
    emptyGroup.clauses[0].positives.push_back({});
    CHECK_THROWS_AS(validatePcsp(emptyGroup), Error);

    Pcsp badArity = p;
    badArity.clauses[0].positives[0][0].args.push_back(x());
    CHECK_THROWS_AS(validatePcsp(badArity), Error);

    Pcsp predBody = p;
    predBody.clauses[0].body = fPred("Q", {x()});
    CHECK_THROWS_AS(validatePcsp(predBody), Error);

    Pcsp twoArities = p;
    twoArities.clauses.push_back({fTrue(), {{PredApp{{"P", 2}, {x(), xp()}}}}, {}});
    CHECK_THROWS_AS(validatePcsp(twoArities), Error);
}

TEST_CASE("debug dump mentions every predicate") {
    Pcsp p = encodeNontermination(fTrue(), fEq(xp(), x()), {preVar(0)});
    std::string dump = printPcsp(p);
    CHECK(dump.find("(wf S)") != std::string::npos);
    CHECK(dump.find("(R ") != std::string::npos);
    CHECK(dump.find("(E ") != std::string::npos);
}
