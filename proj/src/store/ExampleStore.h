#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pcsp/Pcsp.h"
#include "smt/SmtSession.h"

namespace seglex {

// A ground predicate application: all arguments are integer constants.
struct GroundApp {
    PredVarId pred;
    std::vector<Int> args;

    friend bool operator==(const GroundApp& a, const GroundApp& b) {
        return a.pred == b.pred && a.args == b.args;
    }
    friend bool operator<(const GroundApp& a, const GroundApp& b) {
        if (!(a.pred == b.pred)) return a.pred < b.pred;
        return a.args < b.args;
    }
};

std::string printGroundApp(const GroundApp& a);

// A ground clause over predicate applications, mirroring Clause's shape:
// disjunction of conjunctive positive groups plus negated singletons. Must
// carry at least one literal.
struct ExampleClause {
    std::vector<std::vector<GroundApp>> positives;
    std::vector<GroundApp> negatives;
};

// A concrete state pair a well-founded relation candidate must contain.
struct TransitionExample {
    std::vector<Int> src, dst;

    friend bool operator==(const TransitionExample& a, const TransitionExample& b) {
        return a.src == b.src && a.dst == b.dst;
    }
    friend bool operator<(const TransitionExample& a, const TransitionExample& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    }
};

struct PredExamples {
    std::set<std::vector<Int>> pos, neg;
};

// Per-predicate positive/negative example points. pos and neg are disjoint
// per predicate by construction; checkPartition re-verifies and throws
// Inseparable on overlap.
struct ExamplePartition {
    std::map<PredVarId, PredExamples> byPred;
};

void checkPartition(const ExamplePartition& p);

struct SignedLiteral {
    GroundApp app;
    bool positive{true};
};

// Indices into the store's clause list whose conjunction is unsatisfiable;
// refutes the whole problem, not just the current candidate.
struct UnsatWitness {
    std::vector<size_t> coreClauses;
};

// The growing example set E. Satisfiability of the boolean abstraction
// (one 0/1 variable per distinct ground application) is decided by the SMT
// backend; a model is turned into an ExamplePartition after two passes in
// first-mention order: flip well-founded-predicate literals to positive
// where consistent (negative examples of those are unsupported downstream),
// then discard literals whose value no clause depends on.
class ExampleStore {
public:
    ExampleStore(SmtConfig solver, std::set<std::string> wfPreds);

    // Idempotent: structurally equal clauses (up to literal order) are
    // ignored. Throws Error on literal-free clauses, empty groups, or
    // arity-inconsistent applications.
    void addExample(ExampleClause c);

    // Adds the clause blocking the failed sign pattern: one opposite-sign
    // literal per core entry. Throws Error on an empty core.
    void rejectPartition(const std::vector<SignedLiteral>& core);

    std::variant<ExamplePartition, UnsatWitness> extractPosNeg();

    const std::vector<ExampleClause>& clauses() const { return clauses_; }
    size_t size() const { return clauses_.size(); }

private:
    uint32_t appIndex(const GroundApp& a);
    // -1 unassigned, 0 false, 1 true
    bool satisfied(const ExampleClause& c, const std::vector<int8_t>& assign) const;

    SmtConfig solver_;
    std::set<std::string> wfPreds_;
    std::vector<ExampleClause> clauses_;
    std::set<std::string> seen_;
    std::map<std::string, uint32_t> arity_;
    std::vector<GroundApp> apps_; // first-mention order
    std::map<GroundApp, uint32_t> index_;
    std::unique_ptr<SmtSession> sess_;
};

} // namespace seglex
