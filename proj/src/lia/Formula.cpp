#include "Formula.h"

#include "Errors.h"

namespace seglex {

namespace {
FormulaPtr mk(FormulaKind k) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    return n;
}
const FormulaPtr kTrue = mk(FormulaKind::True);
const FormulaPtr kFalse = mk(FormulaKind::False);
} // namespace

FormulaPtr fTrue() { return kTrue; }
FormulaPtr fFalse() { return kFalse; }
FormulaPtr fBool(bool b) { return b ? kTrue : kFalse; }

FormulaPtr fCmp(CmpOp op, TermPtr a, TermPtr b) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Cmp;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

FormulaPtr fEq(TermPtr a, TermPtr b) { return fCmp(CmpOp::Eq, std::move(a), std::move(b)); }
FormulaPtr fNe(TermPtr a, TermPtr b) { return fCmp(CmpOp::Ne, std::move(a), std::move(b)); }
FormulaPtr fGe(TermPtr a, TermPtr b) { return fCmp(CmpOp::Ge, std::move(a), std::move(b)); }
FormulaPtr fGt(TermPtr a, TermPtr b) {
    return fCmp(CmpOp::Ge, std::move(a), tAdd({std::move(b), tConst(1)}));
}
FormulaPtr fLe(TermPtr a, TermPtr b) { return fCmp(CmpOp::Ge, std::move(b), std::move(a)); }
FormulaPtr fLt(TermPtr a, TermPtr b) {
    return fCmp(CmpOp::Ge, std::move(b), tAdd({std::move(a), tConst(1)}));
}

FormulaPtr fAnd(std::vector<FormulaPtr> fs) {
    std::vector<FormulaPtr> kept;
    for (auto& f : fs) {
        if (f->kind == FormulaKind::False) return kFalse;
        if (f->kind == FormulaKind::True) continue;
        kept.push_back(std::move(f));
    }
    if (kept.empty()) return kTrue;
    if (kept.size() == 1) return kept[0];
    auto n = mk(FormulaKind::And);
    const_cast<FormulaNode*>(n.get())->args = std::move(kept);
    return n;
}

FormulaPtr fOr(std::vector<FormulaPtr> fs) {
    std::vector<FormulaPtr> kept;
    for (auto& f : fs) {
        if (f->kind == FormulaKind::True) return kTrue;
        if (f->kind == FormulaKind::False) continue;
        kept.push_back(std::move(f));
    }
    if (kept.empty()) return kFalse;
    if (kept.size() == 1) return kept[0];
    auto n = mk(FormulaKind::Or);
    const_cast<FormulaNode*>(n.get())->args = std::move(kept);
    return n;
}

FormulaPtr fNot(FormulaPtr f) {
    if (f->kind == FormulaKind::True) return kFalse;
    if (f->kind == FormulaKind::False) return kTrue;
    if (f->kind == FormulaKind::Not) return f->args[0];
    auto n = mk(FormulaKind::Not);
    const_cast<FormulaNode*>(n.get())->args = {std::move(f)};
    return n;
}

FormulaPtr fPred(std::string name, std::vector<TermPtr> args) {
    auto n = mk(FormulaKind::Pred);
    auto* m = const_cast<FormulaNode*>(n.get());
    m->pred = std::move(name);
    m->predArgs = std::move(args);
    return n;
}

bool evalFormula(const FormulaPtr& f, const Valuation& env) {
    switch (f->kind) {
        case FormulaKind::True: return true;
        case FormulaKind::False: return false;
        case FormulaKind::Cmp: {
            Int a = evalTerm(f->lhs, env);
            Int b = evalTerm(f->rhs, env);
            switch (f->op) {
                case CmpOp::Eq: return a == b;
                case CmpOp::Ne: return a != b;
                case CmpOp::Ge: return a >= b;
            }
            return false;
        }
        case FormulaKind::And:
            for (auto& a : f->args)
                if (!evalFormula(a, env)) return false;
            return true;
        case FormulaKind::Or:
            for (auto& a : f->args)
                if (evalFormula(a, env)) return true;
            return false;
        case FormulaKind::Not:
            return !evalFormula(f->args[0], env);
        case FormulaKind::Pred:
            throw EvalError("predicate application " + f->pred + " in ground evaluation");
    }
    throw EvalError("bad formula");
}

bool formulaEqual(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FormulaKind::True:
        case FormulaKind::False:
            return true;
        case FormulaKind::Cmp:
            return a->op == b->op && termEqual(a->lhs, b->lhs) && termEqual(a->rhs, b->rhs);
        case FormulaKind::Pred: {
            if (a->pred != b->pred || a->predArgs.size() != b->predArgs.size()) return false;
            for (size_t i = 0; i < a->predArgs.size(); ++i)
                if (!termEqual(a->predArgs[i], b->predArgs[i])) return false;
            return true;
        }
        default: {
            if (a->args.size() != b->args.size()) return false;
            for (size_t i = 0; i < a->args.size(); ++i)
                if (!formulaEqual(a->args[i], b->args[i])) return false;
            return true;
        }
    }
}

FormulaPtr substituteFormula(const FormulaPtr& f, const std::map<VarId, TermPtr>& sub) {
    switch (f->kind) {
        case FormulaKind::True:
        case FormulaKind::False:
            return f;
        case FormulaKind::Cmp:
            return fCmp(f->op, substituteTerm(f->lhs, sub), substituteTerm(f->rhs, sub));
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Not: {
            std::vector<FormulaPtr> args;
            args.reserve(f->args.size());
            for (auto& a : f->args) args.push_back(substituteFormula(a, sub));
            if (f->kind == FormulaKind::And) return fAnd(std::move(args));
            if (f->kind == FormulaKind::Or) return fOr(std::move(args));
            return fNot(args[0]);
        }
        case FormulaKind::Pred: {
            std::vector<TermPtr> args;
            args.reserve(f->predArgs.size());
            for (auto& a : f->predArgs) args.push_back(substituteTerm(a, sub));
            return fPred(f->pred, std::move(args));
        }
    }
    return f;
}

bool isPredicateFree(const FormulaPtr& f) {
    if (f->kind == FormulaKind::Pred) return false;
    for (auto& a : f->args)
        if (!isPredicateFree(a)) return false;
    return true;
}

bool formulaIsLinear(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Cmp:
            return termIsLinear(f->lhs) && termIsLinear(f->rhs);
        case FormulaKind::Pred:
            for (auto& a : f->predArgs)
                if (!termIsLinear(a)) return false;
            return true;
        default:
            for (auto& a : f->args)
                if (!formulaIsLinear(a)) return false;
            return true;
    }
}

void collectFormulaVars(const FormulaPtr& f, std::set<VarId>& out) {
    switch (f->kind) {
        case FormulaKind::Cmp:
            collectTermVars(f->lhs, out);
            collectTermVars(f->rhs, out);
            return;
        case FormulaKind::Pred:
            for (auto& a : f->predArgs) collectTermVars(a, out);
            return;
        default:
            for (auto& a : f->args) collectFormulaVars(a, out);
    }
}

std::string printFormula(const FormulaPtr& f, const VarNamer& namer) {
    switch (f->kind) {
        case FormulaKind::True: return "true";
        case FormulaKind::False: return "false";
        case FormulaKind::Cmp: {
            const char* op = f->op == CmpOp::Eq ? "=" : f->op == CmpOp::Ne ? "!=" : ">=";
            return printTerm(f->lhs, namer) + " " + op + " " + printTerm(f->rhs, namer);
        }
        case FormulaKind::And:
        case FormulaKind::Or: {
            const char* op = f->kind == FormulaKind::And ? " and " : " or ";
            std::string s = "(";
            for (size_t i = 0; i < f->args.size(); ++i) {
                if (i) s += op;
                s += printFormula(f->args[i], namer);
            }
            return s + ")";
        }
        case FormulaKind::Not:
            return "not (" + printFormula(f->args[0], namer) + ")";
        case FormulaKind::Pred: {
            std::string s = f->pred + "(";
            for (size_t i = 0; i < f->predArgs.size(); ++i) {
                if (i) s += ", ";
                s += printTerm(f->predArgs[i], namer);
            }
            return s + ")";
        }
    }
    return "?";
}

} // namespace seglex
