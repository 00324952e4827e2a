#pragma once

#include "Term.h"

namespace seglex {

enum class FormulaKind : uint8_t { True, False, Cmp, And, Or, Not, Pred };

// Canonical comparisons; strict ones are rewritten at construction
// (a > b becomes a >= b + 1 over the integers).
enum class CmpOp : uint8_t { Eq, Ne, Ge };

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    FormulaKind kind;
    CmpOp op{};                  // Cmp
    TermPtr lhs, rhs;            // Cmp
    std::vector<FormulaPtr> args; // And, Or, Not
    std::string pred;            // Pred
    std::vector<TermPtr> predArgs;
};

FormulaPtr fTrue();
FormulaPtr fFalse();
FormulaPtr fBool(bool b);
FormulaPtr fCmp(CmpOp op, TermPtr a, TermPtr b);
FormulaPtr fEq(TermPtr a, TermPtr b);
FormulaPtr fNe(TermPtr a, TermPtr b);
FormulaPtr fGe(TermPtr a, TermPtr b);
FormulaPtr fGt(TermPtr a, TermPtr b);
FormulaPtr fLe(TermPtr a, TermPtr b);
FormulaPtr fLt(TermPtr a, TermPtr b);
FormulaPtr fAnd(std::vector<FormulaPtr> fs);
FormulaPtr fOr(std::vector<FormulaPtr> fs);
FormulaPtr fNot(FormulaPtr f);
FormulaPtr fPred(std::string name, std::vector<TermPtr> args);

bool evalFormula(const FormulaPtr& f, const Valuation& env);
bool formulaEqual(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr substituteFormula(const FormulaPtr& f, const std::map<VarId, TermPtr>& sub);
bool isPredicateFree(const FormulaPtr& f);
bool formulaIsLinear(const FormulaPtr& f);
void collectFormulaVars(const FormulaPtr& f, std::set<VarId>& out);
std::string printFormula(const FormulaPtr& f, const VarNamer& namer = defaultVarName);

} // namespace seglex
