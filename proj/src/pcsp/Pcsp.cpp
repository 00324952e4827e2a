#include "pcsp/Pcsp.h"

#include <set>
#include <sstream>

#include "lia/Errors.h"

namespace seglex {

namespace {

std::vector<TermPtr> stateTerms(const std::vector<VarId>& vars) {
    std::vector<TermPtr> out;
    out.reserve(vars.size());
    for (VarId v : vars) out.push_back(tVar(v));
    return out;
}

std::vector<TermPtr> concat(std::vector<TermPtr> a, const std::vector<TermPtr>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void checkEncoderInputs(const FormulaPtr& iota, const FormulaPtr& tau,
                        const std::vector<VarId>& vars) {
    if (!isPredicateFree(iota) || !isPredicateFree(tau))
        throw Error("encoder inputs must be predicate-free");
    std::set<VarId> allowed;
    for (VarId v : vars) {
        if (v.space != VarSpace::Pre)
            throw Error("state vector must use unprimed variables");
        if (!allowed.insert(v).second) throw Error("duplicate state variable");
    }
    std::set<VarId> used;
    collectFormulaVars(iota, used);
    for (VarId v : used)
        if (!allowed.count(v))
            throw Error("initial condition mentions a non-state variable");
    for (VarId v : vars) allowed.insert(primed(v));
    used.clear();
    collectFormulaVars(tau, used);
    for (VarId v : used)
        if (!allowed.count(v))
            throw Error("transition formula mentions a non-state variable");
}

} // namespace

bool predAppEqual(const PredApp& a, const PredApp& b) {
    if (!(a.pred == b.pred) || a.args.size() != b.args.size()) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!termEqual(a.args[i], b.args[i])) return false;
    return true;
}

bool clauseEqual(const Clause& a, const Clause& b) {
    if (!formulaEqual(a.body, b.body)) return false;
    if (a.positives.size() != b.positives.size() ||
        a.negatives.size() != b.negatives.size())
        return false;
    for (size_t g = 0; g < a.positives.size(); ++g) {
        if (a.positives[g].size() != b.positives[g].size()) return false;
        for (size_t i = 0; i < a.positives[g].size(); ++i)
            if (!predAppEqual(a.positives[g][i], b.positives[g][i])) return false;
    }
    for (size_t i = 0; i < a.negatives.size(); ++i)
        if (!predAppEqual(a.negatives[i], b.negatives[i])) return false;
    return true;
}

std::vector<PredVarId> collectPredVars(const Pcsp& p) {
    std::set<PredVarId> seen;
    for (const Clause& c : p.clauses) {
        for (const auto& group : c.positives)
            for (const PredApp& a : group) seen.insert(a.pred);
        for (const PredApp& a : c.negatives) seen.insert(a.pred);
    }
    return {seen.begin(), seen.end()};
}

void validatePcsp(const Pcsp& p) {
    std::set<std::string> names;
    for (const PredVarId& pv : collectPredVars(p))
        if (!names.insert(pv.name).second)
            throw Error("predicate name bound at two arities: " + pv.name);
    auto checkApp = [](const PredApp& a) {
        if (a.args.size() != a.pred.arity)
            throw Error("application arity mismatch on " + a.pred.name);
    };
    for (const Clause& c : p.clauses) {
        if (!c.body || !isPredicateFree(c.body))
            throw Error("clause body must be a predicate-free formula");
        for (const auto& group : c.positives) {
            if (group.empty()) throw Error("empty positive group");
            for (const PredApp& a : group) checkApp(a);
        }
        for (const PredApp& a : c.negatives) checkApp(a);
    }
    std::set<PredVarId> occurring;
    for (const PredVarId& pv : collectPredVars(p)) occurring.insert(pv);
    for (const PredVarId& w : p.wf) {
        if (w.arity == 0 || w.arity % 2 != 0)
            throw Error("well-founded predicate needs arity 2m: " + w.name);
        if (!occurring.count(w))
            throw Error("well-founded predicate never occurs: " + w.name);
    }
}

FormulaPtr applyDefined(const DefinedPred& d, const std::vector<TermPtr>& args) {
    if (args.size() != d.arity)
        throw MissingPredicate("definition applied at wrong arity");
    std::set<VarId> used;
    collectFormulaVars(d.body, used);
    for (VarId v : used)
        if (v.space != VarSpace::Pre || v.index >= d.arity)
            throw Error("definition body strays outside its parameters");
    std::map<VarId, TermPtr> sub;
    for (uint32_t i = 0; i < d.arity; ++i) sub.emplace(preVar(i), args[i]);
    return substituteFormula(d.body, sub);
}

namespace {

FormulaPtr applyApp(const PredApp& a, const CandidateSolution& s) {
    auto it = s.defs.find(a.pred.name);
    if (it == s.defs.end())
        throw MissingPredicate("no definition for " + a.pred.name);
    if (it->second.arity != a.pred.arity)
        throw MissingPredicate("definition arity differs for " + a.pred.name);
    return applyDefined(it->second, a.args);
}

} // namespace

FormulaPtr applyToClause(const Clause& c, const CandidateSolution& s) {
    std::vector<FormulaPtr> parts;
    parts.push_back(c.body);
    for (const auto& group : c.positives) {
        std::vector<FormulaPtr> conj;
        conj.reserve(group.size());
        for (const PredApp& a : group) conj.push_back(applyApp(a, s));
        parts.push_back(fAnd(conj));
    }
    for (const PredApp& a : c.negatives) parts.push_back(fNot(applyApp(a, s)));
    return fOr(parts);
}

std::vector<FormulaPtr> applySubstitution(const Pcsp& p, const CandidateSolution& s) {
    std::vector<FormulaPtr> out;
    out.reserve(p.clauses.size());
    for (const Clause& c : p.clauses) out.push_back(applyToClause(c, s));
    return out;
}

Pcsp encodeTermination(const FormulaPtr& iota, const FormulaPtr& tau,
                       const std::vector<VarId>& vars) {
    checkEncoderInputs(iota, tau, vars);
    const uint32_t n = static_cast<uint32_t>(vars.size());
    PredVarId invId{"I", n};
    PredVarId rankId{"R", 2 * n};

    std::vector<TermPtr> x = stateTerms(vars);
    std::vector<TermPtr> xp;
    xp.reserve(n);
    for (VarId v : vars) xp.push_back(tVar(primed(v)));

    PredApp invPre{invId, x};
    PredApp invPost{invId, xp};
    PredApp rank{rankId, concat(x, xp)};

    Pcsp p;
    p.clauses.push_back({fNot(iota), {{invPre}}, {}});
    p.clauses.push_back({fNot(tau), {{invPost}}, {invPre}});
    p.clauses.push_back({fNot(tau), {{rank}}, {invPre}});
    p.wf = {rankId};
    validatePcsp(p);
    return p;
}

Pcsp encodeNontermination(const FormulaPtr& iota, const FormulaPtr& tau,
                          const std::vector<VarId>& vars) {
    checkEncoderInputs(iota, tau, vars);
    const uint32_t n = static_cast<uint32_t>(vars.size());
    PredVarId recId{"R", n};
    PredVarId searchId{"E", 2 * n};
    PredVarId stepId{"S", 2 * n};

    std::vector<TermPtr> x = stateTerms(vars);
    std::vector<TermPtr> y;
    y.reserve(n);
    for (VarId v : vars) y.push_back(tVar(primed(v)));
    std::vector<TermPtr> zero(n, tConst(0));

    // one conjunctive group per unit move of the search counter
    std::vector<std::vector<PredApp>> steps;
    for (uint32_t i = 0; i < n; ++i) {
        for (int d : {-1, +1}) {
            std::vector<TermPtr> moved = y;
            moved[i] = tAdd({y[i], tConst(d)});
            steps.push_back({PredApp{stepId, concat(y, moved)},
                             PredApp{searchId, concat(x, moved)}});
        }
    }

    PredApp recHere{recId, x};
    PredApp recNext{recId, y};
    PredApp searchStart{searchId, concat(x, zero)};
    PredApp searchHere{searchId, concat(x, y)};

    Pcsp p;
    p.clauses.push_back({fNot(iota), {{recHere}}, {}});
    p.clauses.push_back({fFalse(), {{searchStart}}, {recHere}});
    p.clauses.push_back({tau, steps, {searchHere}});
    std::vector<std::vector<PredApp>> withRec;
    withRec.push_back({recNext});
    withRec.insert(withRec.end(), steps.begin(), steps.end());
    p.clauses.push_back({fFalse(), withRec, {searchHere}});
    p.wf = {stepId};
    validatePcsp(p);
    return p;
}

std::string printPcsp(const Pcsp& p) {
    std::ostringstream out;
    auto app = [&](const PredApp& a) {
        out << "(" << a.pred.name;
        for (const TermPtr& t : a.args) out << " " << printTerm(t);
        out << ")";
    };
    out << "(pcsp\n  (wf";
    for (const PredVarId& w : p.wf) out << " " << w.name;
    out << ")\n";
    for (const Clause& c : p.clauses) {
        out << "  (clause (body " << printFormula(c.body) << ")";
        for (const auto& group : c.positives) {
            out << " (pos";
            for (const PredApp& a : group) {
                out << " ";
                app(a);
            }
            out << ")";
        }
        for (const PredApp& a : c.negatives) {
            out << " (neg ";
            app(a);
            out << ")";
        }
        out << ")\n";
    }
    out << ")\n";
    return out.str();
}

} // namespace seglex
