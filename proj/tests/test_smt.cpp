#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "TestSupport.h"
#include "lia/Errors.h"

using namespace seglex;
using seglex::test::solverConfig;

namespace {

TermPtr v0() { return tVar(preVar(0)); }
TermPtr v1() { return tVar(preVar(1)); }
TermPtr v2() { return tVar(preVar(2)); }

} // namespace

TEST_CASE("checkSat basics") {
    SmtSession s(solverConfig());

    // contradictory strict bounds, with a sound core
    auto r1 = s.checkSat({{"a", fGt(v0(), tConst(0))}, {"b", fLt(v0(), tConst(0))}}, true);
    REQUIRE(r1.status == SmtStatus::Unsat);
    REQUIRE(!r1.core.empty());
    std::vector<Labeled> coreOnly;
    for (const std::string& label : r1.core) {
        if (label == "a") coreOnly.push_back({"a", fGt(v0(), tConst(0))});
        if (label == "b") coreOnly.push_back({"b", fLt(v0(), tConst(0))});
    }
    REQUIRE(coreOnly.size() == r1.core.size());
    CHECK(s.checkSat(coreOnly, false).status == SmtStatus::Unsat);

    // the -2x + 9 fixed point
    auto r2 = s.checkSat({{"c", fEq(v0(), tAdd({tMul({tConst(-2), v0()}), tConst(9)}))}}, false);
    REQUIRE(r2.status == SmtStatus::Sat);
    CHECK(r2.model.at(preVar(0)) == 3);

    // queries are isolated: the earlier assertions must not leak
    auto r3 = s.checkSat({{"d", fLt(v0(), tConst(0))}}, false);
    CHECK(r3.status == SmtStatus::Sat);

    // models cover every queried symbol, even unconstrained ones
    auto r4 = s.checkSat({{"e", fEq(v0(), tConst(3))}, {"f", fEq(v1(), v1())}}, false);
    REQUIRE(r4.status == SmtStatus::Sat);
    CHECK(r4.model.count(preVar(0)) == 1);
    CHECK(r4.model.count(preVar(1)) == 1);
}

TEST_CASE("nonlinear queries may be unsat or unknown, never a bogus model") {
    SmtSession s(solverConfig("QF_NIA"));
    auto r = s.checkSat({{"sq", fEq(tMul({v1(), v1()}), tConst(2))}}, false);
    CHECK(r.status != SmtStatus::Sat);
}

TEST_CASE("maxSat conventions and the opposing-slope template") {
    SmtSession s(solverConfig());

    auto empty = s.maxSat({}, {});
    CHECK(empty.count == 0);
    CHECK_FALSE(empty.hasModel);

    auto one = s.maxSat({}, {fGe(v0(), tConst(3))});
    CHECK(one.count == 1);
    REQUIRE(one.hasModel);
    CHECK(one.model.at(preVar(0)) >= 3);

    // f(x) = a x + b must decrease on both (1,0) and (-2,-1): the first forces
    // a > 0, the second a < 0, so only one is achievable at a time
    TermPtr a = v0(), b = v1();
    FormulaPtr dec10 = fGt(tAdd({a, b}), b);
    FormulaPtr decm2m1 =
        fGt(tAdd({tMul({tConst(-2), a}), b}), tAdd({tNeg(a), b}));
    auto m = s.maxSat({}, {dec10, decm2m1});
    CHECK(m.count == 1);

    // hard contradiction is the caller's bug
    CHECK_THROWS_AS(s.maxSat({fGt(v0(), tConst(0)), fLt(v0(), tConst(0))}, {fTrue()}),
                    HardUnsat);
}

TEST_CASE("minimize achieves exact optima") {
    SmtSession s(solverConfig());

    // |a| with a >= 3: bound variable b >= |a|, minimize b
    std::vector<FormulaPtr> absDefs{fGe(v1(), v0()), fGe(v1(), tNeg(v0()))};
    AffineExpr objB;
    objB.addTerm(preVar(1), 1);
    auto r1 = s.minimize(objB, absDefs, {{"lo", fGe(v0(), tConst(3))}});
    REQUIRE(r1.status == SmtStatus::Sat);
    CHECK(r1.objective == 3);
    CHECK(r1.model.at(preVar(0)) == 3);

    // |a| + |b| with a + b >= 2 and a >= b: optimum 2
    TermPtr a = v0(), b = v1();
    std::vector<FormulaPtr> defs{fGe(v2(), a), fGe(v2(), tNeg(a)),
                                 fGe(tVar(preVar(3)), b), fGe(tVar(preVar(3)), tNeg(b))};
    AffineExpr objSum;
    objSum.addTerm(preVar(2), 1);
    objSum.addTerm(preVar(3), 1);
    auto r2 = s.minimize(objSum, defs,
                         {{"s", fGe(tAdd({a, b}), tConst(2))}, {"o", fGe(a, b)}});
    REQUIRE(r2.status == SmtStatus::Sat);
    CHECK(r2.objective == 2);
    Int av = r2.model.at(preVar(0)), bv = r2.model.at(preVar(1));
    CHECK(av + bv >= 2);
    CHECK(av >= bv);
    CHECK(abs(av) + abs(bv) == 2);

    // unconstrained objective over its defs floor: all zeros
    auto r3 = s.minimize(objB, absDefs, {});
    REQUIRE(r3.status == SmtStatus::Sat);
    CHECK(r3.objective == 0);

    // infeasible constraints surface as Unsat with a core
    auto r4 = s.minimize(objB, absDefs,
                         {{"p", fGt(v0(), tConst(0))}, {"n", fLt(v0(), tConst(0))}});
    CHECK(r4.status == SmtStatus::Unsat);
    CHECK(!r4.core.empty());
}

namespace {

FormulaPtr boxConstraint(int nVars, int lo, int hi) {
    std::vector<FormulaPtr> cs;
    for (int i = 0; i < nVars; ++i) {
        cs.push_back(fGe(tVar(preVar(i)), tConst(lo)));
        cs.push_back(fLe(tVar(preVar(i)), tConst(hi)));
    }
    return fAnd(std::move(cs));
}

// random affine comparison over nVars unknowns with small coefficients
FormulaPtr randomAtom(std::mt19937& rng, int nVars) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> cst(-6, 6);
    std::uniform_int_distribution<int> shape(0, 2);
    std::vector<TermPtr> sum;
    for (int i = 0; i < nVars; ++i)
        sum.push_back(tMul({tConst(coeff(rng)), tVar(preVar(i))}));
    TermPtr lhs = tAdd(std::move(sum));
    TermPtr rhs = tConst(cst(rng));
    switch (shape(rng)) {
        case 0: return fGe(lhs, rhs);
        case 1: return fLe(lhs, rhs);
        default: return fNe(lhs, rhs);
    }
}

void forAllBoxPoints(int nVars, int lo, int hi, const std::function<void(const Valuation&)>& fn) {
    Valuation v;
    std::function<void(int)> rec = [&](int i) {
        if (i == nVars) {
            fn(v);
            return;
        }
        for (int x = lo; x <= hi; ++x) {
            v[preVar(i)] = x;
            rec(i + 1);
        }
    };
    rec(0);
}

} // namespace

TEST_CASE("maxSat matches exhaustive enumeration on desk-scale instances") {
    SmtSession s(solverConfig());
    std::mt19937 rng(777);
    const int nVars = 3, lo = -10, hi = 10;
    for (int inst = 0; inst < 4; ++inst) {
        std::vector<FormulaPtr> soft;
        for (int i = 0; i < 9; ++i) soft.push_back(randomAtom(rng, nVars));
        size_t best = 0;
        forAllBoxPoints(nVars, lo, hi, [&](const Valuation& v) {
            size_t sat = 0;
            for (auto& f : soft) sat += evalFormula(f, v) ? 1 : 0;
            best = std::max(best, sat);
        });
        auto got = s.maxSat({boxConstraint(nVars, lo, hi)}, soft);
        CHECK(got.count == best);
        REQUIRE(got.hasModel);
        size_t atModel = 0;
        for (auto& f : soft) atModel += evalFormula(f, got.model) ? 1 : 0;
        CHECK(atModel == got.count);
    }
}

TEST_CASE("minimize matches exhaustive enumeration on desk-scale instances") {
    SmtSession s(solverConfig());
    std::mt19937 rng(1313);
    std::uniform_int_distribution<int> coeff(-3, 3);
    const int nVars = 2, lo = -10, hi = 10;
    for (int inst = 0; inst < 4; ++inst) {
        std::vector<Labeled> constraints{{"box", boxConstraint(nVars, lo, hi)}};
        for (int i = 0; i < 3; ++i)
            constraints.push_back({"c" + std::to_string(i), randomAtom(rng, nVars)});
        AffineExpr obj;
        obj.addTerm(preVar(0), coeff(rng));
        obj.addTerm(preVar(1), coeff(rng));
        bool feasible = false;
        Int best = 0;
        forAllBoxPoints(nVars, lo, hi, [&](const Valuation& v) {
            for (size_t i = 1; i < constraints.size(); ++i)
                if (!evalFormula(constraints[i].formula, v)) return;
            Int val = obj.eval(v);
            if (!feasible || val < best) best = val;
            feasible = true;
        });
        auto got = s.minimize(obj, {}, constraints);
        if (!feasible) {
            CHECK(got.status == SmtStatus::Unsat);
        } else {
            REQUIRE(got.status == SmtStatus::Sat);
            CHECK(got.objective == best);
            CHECK(obj.eval(got.model) == best);
        }
    }
}
