#include "Term.h"

#include "Errors.h"

namespace seglex {

TermPtr tVar(VarId v) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Var;
    n->var = v;
    return n;
}

TermPtr tConst(Int c) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Const;
    n->value = std::move(c);
    return n;
}

TermPtr tAdd(std::vector<TermPtr> ts) {
    if (ts.empty()) return tConst(0);
    if (ts.size() == 1) return ts[0];
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Add;
    n->args = std::move(ts);
    return n;
}

TermPtr tMul(std::vector<TermPtr> ts) {
    if (ts.empty()) return tConst(1);
    if (ts.size() == 1) return ts[0];
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Mul;
    n->args = std::move(ts);
    return n;
}

TermPtr tNeg(TermPtr t) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Neg;
    n->args = {std::move(t)};
    return n;
}

TermPtr tSub(TermPtr a, TermPtr b) { return tAdd({std::move(a), tNeg(std::move(b))}); }

Int evalTerm(const TermPtr& t, const Valuation& env) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = env.find(t->var);
            if (it == env.end())
                throw EvalError("missing variable " + defaultVarName(t->var));
            return it->second;
        }
        case TermKind::Const:
            return t->value;
        case TermKind::Add: {
            Int acc = 0;
            for (auto& a : t->args) acc += evalTerm(a, env);
            return acc;
        }
        case TermKind::Mul: {
            Int acc = 1;
            for (auto& a : t->args) acc *= evalTerm(a, env);
            return acc;
        }
        case TermKind::Neg:
            return -evalTerm(t->args[0], env);
    }
    throw EvalError("bad term");
}

TermPtr substituteTerm(const TermPtr& t, const std::map<VarId, TermPtr>& sub) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = sub.find(t->var);
            return it == sub.end() ? t : it->second;
        }
        case TermKind::Const:
            return t;
        default: {
            std::vector<TermPtr> args;
            args.reserve(t->args.size());
            bool changed = false;
            for (auto& a : t->args) {
                args.push_back(substituteTerm(a, sub));
                changed |= args.back() != a;
            }
            if (!changed) return t;
            auto n = std::make_shared<TermNode>();
            n->kind = t->kind;
            n->args = std::move(args);
            return n;
        }
    }
}

void collectTermVars(const TermPtr& t, std::set<VarId>& out) {
    if (t->kind == TermKind::Var) {
        out.insert(t->var);
        return;
    }
    for (auto& a : t->args) collectTermVars(a, out);
}

bool termEqual(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::Var: return a->var == b->var;
        case TermKind::Const: return a->value == b->value;
        default:
            if (a->args.size() != b->args.size()) return false;
            for (size_t i = 0; i < a->args.size(); ++i)
                if (!termEqual(a->args[i], b->args[i])) return false;
            return true;
    }
}

bool termIsLinear(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
        case TermKind::Const:
            return true;
        case TermKind::Neg:
            return termIsLinear(t->args[0]);
        case TermKind::Add: {
            for (auto& a : t->args)
                if (!termIsLinear(a)) return false;
            return true;
        }
        case TermKind::Mul: {
            // linear iff at most one factor mentions a variable
            int varFactors = 0;
            for (auto& a : t->args) {
                std::set<VarId> vs;
                collectTermVars(a, vs);
                if (!vs.empty()) {
                    if (!termIsLinear(a)) return false;
                    ++varFactors;
                }
            }
            return varFactors <= 1;
        }
    }
    return false;
}

std::string printTerm(const TermPtr& t, const VarNamer& namer) {
    switch (t->kind) {
        case TermKind::Var:
            return namer(t->var);
        case TermKind::Const:
            return t->value.str();
        case TermKind::Add: {
            std::string s = "(";
            for (size_t i = 0; i < t->args.size(); ++i) {
                if (i) s += " + ";
                s += printTerm(t->args[i], namer);
            }
            return s + ")";
        }
        case TermKind::Mul: {
            std::string s = "(";
            for (size_t i = 0; i < t->args.size(); ++i) {
                if (i) s += " * ";
                s += printTerm(t->args[i], namer);
            }
            return s + ")";
        }
        case TermKind::Neg:
            return "(- " + printTerm(t->args[0], namer) + ")";
    }
    return "?";
}

} // namespace seglex
