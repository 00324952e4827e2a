#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "../lia/Formula.h"

namespace seglex {

// One control-flow edge, with sequential commands already composed into a
// simultaneous step: guard over pre-state vars, updates giving each assigned
// variable's new value as a term over pre-state vars. A mapped nullopt is a
// nondeterministic (havoc) assignment; an absent index is the identity.
struct Rule {
    uint32_t from{0};
    uint32_t to{0};
    FormulaPtr guard;
    std::map<uint32_t, std::optional<TermPtr>> updates;
};

struct TransitionSystem {
    std::vector<std::string> varNames;  // index i names preVar(i)/postVar(i)
    std::vector<std::string> locNames;
    uint32_t start{0};
    std::vector<Rule> rules;

    uint32_t numVars() const { return static_cast<uint32_t>(varNames.size()); }
    // The location counter occupies the variable slot after the program vars.
    uint32_t pcIndex() const { return numVars(); }
    std::string pcName() const;
    std::string varName(VarId v) const;
};

bool rulesEqual(const Rule& a, const Rule& b);
bool systemsEqual(const TransitionSystem& a, const TransitionSystem& b);

// iota(x) = location counter at the start location; tau(x, x') = one disjunct
// per rule: pc = from ∧ guard ∧ pc' = to ∧ one equation per variable
// (explicit identity for unmentioned variables, none for havoc).
std::pair<FormulaPtr, FormulaPtr> toInitAndTransition(const TransitionSystem& ts);

// The tuple predicates range over: program vars, then the location counter.
std::vector<VarId> systemVars(const TransitionSystem& ts);

// Prints in the same format parseT2 accepts; parse(print(parse(s))) equals
// parse(s) structurally as long as no rule needs temporaries to sequence a
// cyclic simultaneous update (a swap), in which case equality is semantic.
std::string printT2(const TransitionSystem& ts);

} // namespace seglex
