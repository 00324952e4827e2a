#pragma once

#include <memory>
#include <set>
#include <vector>

#include "Var.h"

namespace seglex {

enum class TermKind : uint8_t { Var, Const, Add, Mul, Neg };

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

struct TermNode {
    TermKind kind;
    VarId var{};                // Var
    Int value{};                // Const
    std::vector<TermPtr> args;  // Add, Mul, Neg
};

TermPtr tVar(VarId v);
TermPtr tConst(Int c);
TermPtr tAdd(std::vector<TermPtr> ts);
TermPtr tMul(std::vector<TermPtr> ts);
TermPtr tNeg(TermPtr t);
TermPtr tSub(TermPtr a, TermPtr b);

Int evalTerm(const TermPtr& t, const Valuation& env);
TermPtr substituteTerm(const TermPtr& t, const std::map<VarId, TermPtr>& sub);
void collectTermVars(const TermPtr& t, std::set<VarId>& out);
bool termEqual(const TermPtr& a, const TermPtr& b);
bool termIsLinear(const TermPtr& t);
std::string printTerm(const TermPtr& t, const VarNamer& namer = defaultVarName);

} // namespace seglex
