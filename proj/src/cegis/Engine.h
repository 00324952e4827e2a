#pragma once

#include <atomic>
#include <chrono>

#include "pcsp/Pcsp.h"
#include "store/ExampleStore.h"
#include "synth/InvariantSynth.h"
#include "synth/RankSynth.h"

namespace seglex {

struct ValidatorAccepted {};
struct ValidatorUnknown {
    std::string reason;
};
using ValidateResult = std::variant<ValidatorAccepted, ExampleClause, ValidatorUnknown>;

// Checks the negation of every substituted clause, in clause order, and
// returns the first violation as a ground example clause: the countermodel is
// pushed through each predicate application's argument terms (variables the
// model leaves unconstrained default to 0). Well-foundedness of candidates is
// never checked here; it holds by construction of the synthesizer. Unknown is
// reported only when some clause check is inconclusive and none is violated.
// Throws MissingPredicate when s does not cover the clauses' predicates.
ValidateResult validate(const Pcsp& p, const CandidateSolution& s, SmtSession& sess);

// Ground truth of an example clause under a candidate.
bool exampleClauseHolds(const ExampleClause& c, const CandidateSolution& s);

struct EngineConfig {
    SmtConfig solver; // command, seed and per-query timeout for every session
    uint32_t k{1};
    uint32_t kCap{3};
    WfVariant variant{WfVariant::Degenerate};
    QualifierStrategy strategy{QualifierStrategy::Eager};
    QualifierFamily family{QualifierFamily::Intervals};
    uint32_t maxIters{200};
    std::chrono::milliseconds timeout{std::chrono::milliseconds{300000}};
    std::atomic<bool>* cancel{nullptr}; // observed at iteration boundaries
    VarNamer namer{defaultVarName};     // names used in witness text
};

struct EngineSolution {
    CandidateSolution defs;
    std::map<std::string, std::string> witness; // predicate -> if-then-else text
    uint32_t iterations{0};
    uint32_t examples{0}; // example clauses accumulated
};

// The accumulated example clauses are contradictory, so the problem itself
// has no solution; core holds the clauses named by the unsat core.
struct EngineUnsat {
    std::vector<size_t> coreClauses;
    std::vector<ExampleClause> core;
};

struct EngineUnknown {
    std::string reason;
};

struct EngineTimeout {
    uint32_t iterations{0};
};

using EngineResult = std::variant<EngineSolution, EngineUnsat, EngineUnknown, EngineTimeout>;

// The CEGIS loop: extract a per-predicate example partition, synthesize a
// candidate (ranking synthesis for the wf predicates, decision-tree invariant
// synthesis for the rest), validate, and either return the accepted solution
// or grow the example set with the first violated clause's counterexample.
// An explicit cycle among a wf predicate's examples rejects the partition and
// retries; a contradictory example set is Unsat. All failure modes come back
// as EngineResult variants; nothing is thrown.
EngineResult solve(const Pcsp& p, const EngineConfig& cfg);

// Nested if-then-else concrete syntax for witnesses (exposed for tests).
std::string renderRankWitness(const RankNode& n, const VarNamer& namer);
std::string renderSetWitness(const BoolTree& t, const VarNamer& namer);

} // namespace seglex
