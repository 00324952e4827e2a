#pragma once

#include <map>
#include <string>
#include <vector>

#include "lia/Formula.h"

namespace seglex {

// An unknown predicate over an all-integer argument tuple. Identified by
// name; names are unique within one problem.
struct PredVarId {
    std::string name;
    uint32_t arity{0};

    friend bool operator==(const PredVarId& a, const PredVarId& b) {
        return a.name == b.name && a.arity == b.arity;
    }
    friend bool operator<(const PredVarId& a, const PredVarId& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.arity < b.arity;
    }
};

struct PredApp {
    PredVarId pred;
    std::vector<TermPtr> args; // size == pred.arity
};

// One constraint, read as
//
//     forall term vars.  body  \/  \/_g (/\ apps in g)  \/  \/_i ~negatives[i]
//
// body is predicate-free. positives is a disjunction of conjunctive groups;
// a flat clause is the all-singleton-groups case. Groups exist because the
// recurrent-set encoding pairs a well-foundedness step with the search
// predicate inside one disjunct, which a flat clause cannot express without
// an exponential distribution.
struct Clause {
    FormulaPtr body;
    std::vector<std::vector<PredApp>> positives;
    std::vector<PredApp> negatives;
};

struct Pcsp {
    std::vector<Clause> clauses;
    std::vector<PredVarId> wf; // must denote well-founded relations; arity 2m
};

// A closed predicate of arity k: body ranges over preVar(0..k-1) only.
struct DefinedPred {
    uint32_t arity{0};
    FormulaPtr body;
};

// A candidate solution: predicate name -> definition.
struct CandidateSolution {
    std::map<std::string, DefinedPred> defs;
};

bool predAppEqual(const PredApp& a, const PredApp& b);
bool clauseEqual(const Clause& a, const Clause& b);

// Structural well-formedness: predicate-free bodies, arity-consistent
// applications, wf predicates of even arity that occur in some clause.
// Throws Error on violation.
void validatePcsp(const Pcsp& p);

// Every predicate variable occurring in p, sorted by name.
std::vector<PredVarId> collectPredVars(const Pcsp& p);

// Beta-reduce one application of d to args. Throws MissingPredicate on an
// arity mismatch and Error if the body strays outside its parameters.
FormulaPtr applyDefined(const DefinedPred& d, const std::vector<TermPtr>& args);

// body \/ substituted groups \/ negated substituted negatives, one
// predicate-free formula per clause. Throws MissingPredicate when s lacks a
// predicate of the clause.
FormulaPtr applyToClause(const Clause& c, const CandidateSolution& s);
std::vector<FormulaPtr> applySubstitution(const Pcsp& p, const CandidateSolution& s);

// Termination as constraints over an invariant I (arity n) and a
// well-founded relation R (arity 2n):
//
//     iota(x) => I(x);  tau(x,x') /\ I(x) => I(x');  tau /\ I(x) => R(x,x')
//
// vars is the ordered state vector (Pre space, distinct); the primed state
// is the same indices in Post space. iota ranges over vars, tau over
// vars + primed vars; both predicate-free.
Pcsp encodeTermination(const FormulaPtr& iota, const FormulaPtr& tau,
                       const std::vector<VarId>& vars);

// Non-termination via a recurrent set R (arity n), successor-search
// predicate E (arity 2n) and search well-foundedness S (arity 2n):
//
//     iota(x) => R(x)
//     R(x)    => E(x, 0^n)
//     E(x,y)  => (tau(x,y) /\ R(y)) \/ \/_{i,d} (S(y, y[i+=d]) /\ E(x, y[i+=d]))
//
// with d in {-1,+1}. The last constraint distributes its one mixed disjunct
// into a tau-clause and an R-clause (two Clauses, each carrying the 2n step
// groups), so the result has exactly four clauses for every n. The search
// counter y reuses the Post-space variables (tau is applied to (x, y)
// directly, matching the one-variable presentation where the counter is
// written x').
Pcsp encodeNontermination(const FormulaPtr& iota, const FormulaPtr& tau,
                          const std::vector<VarId>& vars);

// S-expression dump for debugging. Not a stable format.
std::string printPcsp(const Pcsp& p);

} // namespace seglex
