#include "TransitionSystem.h"

#include <algorithm>
#include <set>

#include "../lia/Errors.h"

namespace seglex {

std::string TransitionSystem::pcName() const {
    std::string name = "pc";
    while (std::find(varNames.begin(), varNames.end(), name) != varNames.end())
        name += "_";
    return name;
}

std::string TransitionSystem::varName(VarId v) const {
    std::string base = v.index < numVars()  ? varNames[v.index]
                       : v.index == pcIndex() ? pcName()
                                              : defaultVarName(preVar(v.index));
    if (v.space == VarSpace::Post) base += "'";
    return base;
}

bool rulesEqual(const Rule& a, const Rule& b) {
    if (a.from != b.from || a.to != b.to) return false;
    if (!formulaEqual(a.guard, b.guard)) return false;
    if (a.updates.size() != b.updates.size()) return false;
    for (auto ita = a.updates.begin(), itb = b.updates.begin(); ita != a.updates.end();
         ++ita, ++itb) {
        if (ita->first != itb->first) return false;
        if (ita->second.has_value() != itb->second.has_value()) return false;
        if (ita->second && !termEqual(*ita->second, *itb->second)) return false;
    }
    return true;
}

bool systemsEqual(const TransitionSystem& a, const TransitionSystem& b) {
    if (a.varNames != b.varNames || a.locNames != b.locNames || a.start != b.start)
        return false;
    if (a.rules.size() != b.rules.size()) return false;
    for (size_t i = 0; i < a.rules.size(); ++i)
        if (!rulesEqual(a.rules[i], b.rules[i])) return false;
    return true;
}

std::pair<FormulaPtr, FormulaPtr> toInitAndTransition(const TransitionSystem& ts) {
    uint32_t pc = ts.pcIndex();
    FormulaPtr iota = fEq(tVar(preVar(pc)), tConst(ts.start));
    std::vector<FormulaPtr> disjuncts;
    disjuncts.reserve(ts.rules.size());
    for (const Rule& r : ts.rules) {
        std::vector<FormulaPtr> conj;
        conj.push_back(fEq(tVar(preVar(pc)), tConst(r.from)));
        conj.push_back(r.guard);
        conj.push_back(fEq(tVar(postVar(pc)), tConst(r.to)));
        for (uint32_t i = 0; i < ts.numVars(); ++i) {
            auto it = r.updates.find(i);
            if (it == r.updates.end())
                conj.push_back(fEq(tVar(postVar(i)), tVar(preVar(i))));
            else if (it->second)
                conj.push_back(fEq(tVar(postVar(i)), *it->second));
            // havoc: the primed variable stays unconstrained
        }
        disjuncts.push_back(fAnd(std::move(conj)));
    }
    return {std::move(iota), fOr(std::move(disjuncts))};
}

std::vector<VarId> systemVars(const TransitionSystem& ts) {
    std::vector<VarId> vars;
    vars.reserve(ts.numVars() + 1);
    for (uint32_t i = 0; i < ts.numVars(); ++i) vars.push_back(preVar(i));
    vars.push_back(preVar(ts.pcIndex()));
    return vars;
}

// ---- printing ---------------------------------------------------------
// The printers parenthesize so that reparsing reproduces the exact tree:
// nested n-ary nodes of the same kind are wrapped (the parser collects
// flat operand lists), and unary minus distinguishes -x from -(2*x)
// because it binds tighter than *.

namespace {

std::string t2Term(const TermPtr& t, const VarNamer& namer);

std::string wrapIfAdd(const TermPtr& t, const VarNamer& namer) {
    if (t->kind == TermKind::Add) return "(" + t2Term(t, namer) + ")";
    return t2Term(t, namer);
}

std::string negated(const TermPtr& inner, const VarNamer& namer) {
    if (inner->kind == TermKind::Var) return "-" + namer(inner->var);
    return "-(" + t2Term(inner, namer) + ")";
}

std::string t2Term(const TermPtr& t, const VarNamer& namer) {
    switch (t->kind) {
        case TermKind::Var:
            return namer(t->var);
        case TermKind::Const:
            return t->value.str();
        case TermKind::Neg:
            return negated(t->args[0], namer);
        case TermKind::Add: {
            std::string s;
            for (size_t i = 0; i < t->args.size(); ++i) {
                const TermPtr& a = t->args[i];
                if (i == 0) {
                    s = a->kind == TermKind::Neg ? negated(a->args[0], namer)
                                                 : wrapIfAdd(a, namer);
                } else if (a->kind == TermKind::Neg) {
                    s += " - " + wrapIfAdd(a->args[0], namer);
                } else if (a->kind == TermKind::Const && a->value < 0) {
                    s += " - " + Int(-a->value).str();
                } else {
                    s += " + " + wrapIfAdd(a, namer);
                }
            }
            return s;
        }
        case TermKind::Mul: {
            std::string s;
            for (size_t i = 0; i < t->args.size(); ++i) {
                const TermPtr& a = t->args[i];
                if (i) s += "*";
                if (a->kind == TermKind::Var || a->kind == TermKind::Const)
                    s += t2Term(a, namer);
                else if (a->kind == TermKind::Neg)
                    s += negated(a->args[0], namer);
                else
                    s += "(" + t2Term(a, namer) + ")";
            }
            return s;
        }
    }
    throw Error("unprintable term");
}

std::string t2Formula(const FormulaPtr& f, const VarNamer& namer);

std::string t2FormulaWrapped(const FormulaPtr& f, const VarNamer& namer) {
    if (f->kind == FormulaKind::Cmp) return t2Formula(f, namer);
    return "(" + t2Formula(f, namer) + ")";
}

std::string t2Formula(const FormulaPtr& f, const VarNamer& namer) {
    switch (f->kind) {
        case FormulaKind::Cmp: {
            const char* op = f->op == CmpOp::Eq ? "==" : f->op == CmpOp::Ne ? "!=" : ">=";
            return t2Term(f->lhs, namer) + " " + op + " " + t2Term(f->rhs, namer);
        }
        case FormulaKind::And: {
            std::string s;
            for (size_t i = 0; i < f->args.size(); ++i) {
                if (i) s += " && ";
                s += t2FormulaWrapped(f->args[i], namer);
            }
            return s;
        }
        case FormulaKind::Or: {
            std::string s;
            for (size_t i = 0; i < f->args.size(); ++i) {
                if (i) s += " || ";
                s += t2FormulaWrapped(f->args[i], namer);
            }
            return s;
        }
        case FormulaKind::Not:
            return "!(" + t2Formula(f->args[0], namer) + ")";
        default:
            throw Error("unprintable formula");
    }
}

// Orders the updated variables so every right-hand side is emitted before
// the variables it reads are overwritten. False when reads are cyclic.
bool orderUpdates(const Rule& r, std::vector<uint32_t>& order) {
    std::map<uint32_t, std::set<uint32_t>> mustPrecede;
    std::map<uint32_t, int> indegree;
    for (auto& [u, _] : r.updates) indegree[u] = 0;
    for (auto& [u, t] : r.updates) {
        if (!t) continue;
        std::set<VarId> reads;
        collectTermVars(*t, reads);
        for (VarId v : reads) {
            if (v.index == u || !r.updates.count(v.index)) continue;
            if (mustPrecede[u].insert(v.index).second) indegree[v.index]++;
        }
    }
    std::set<uint32_t> ready;
    for (auto& [u, d] : indegree)
        if (d == 0) ready.insert(u);
    while (!ready.empty()) {
        uint32_t u = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(u);
        for (uint32_t next : mustPrecede[u])
            if (--indegree[next] == 0) ready.insert(next);
    }
    return order.size() == r.updates.size();
}

} // namespace

std::string printT2(const TransitionSystem& ts) {
    VarNamer namer = [&ts](VarId v) { return ts.varName(v); };
    std::string out = "START: " + ts.locNames[ts.start] + ";\n";
    int tmpCounter = 0;
    auto freshTmp = [&] {
        std::string name;
        do {
            name = "_t" + std::to_string(tmpCounter++);
        } while (std::find(ts.varNames.begin(), ts.varNames.end(), name) != ts.varNames.end());
        return name;
    };
    for (const Rule& r : ts.rules) {
        out += "\nFROM: " + ts.locNames[r.from] + ";\n";
        if (r.guard->kind != FormulaKind::True)
            out += "assume(" + t2Formula(r.guard, namer) + ");\n";
        std::vector<uint32_t> order;
        if (orderUpdates(r, order)) {
            for (uint32_t i : order) {
                const auto& t = r.updates.at(i);
                out += ts.varNames[i] + " := " + (t ? t2Term(*t, namer) : "?") + ";\n";
            }
        } else {
            // cyclic simultaneous update (a swap): snapshot the cross-read
            // variables into temporaries, then assign in any order
            std::map<VarId, std::string> tmpNames;
            for (auto& [u, t] : r.updates) {
                if (!t) continue;
                std::set<VarId> reads;
                collectTermVars(*t, reads);
                for (VarId v : reads) {
                    if (v.index == u || !r.updates.count(v.index) || tmpNames.count(v)) continue;
                    tmpNames[v] = freshTmp();
                    out += tmpNames[v] + " := " + ts.varNames[v.index] + ";\n";
                }
            }
            VarNamer snapshotNamer = [&](VarId v) {
                auto it = tmpNames.find(v);
                return it == tmpNames.end() ? ts.varName(v) : it->second;
            };
            for (auto& [u, t] : r.updates)
                if (t) out += ts.varNames[u] + " := " + t2Term(*t, snapshotNamer) + ";\n";
            for (auto& [u, t] : r.updates)
                if (!t) out += ts.varNames[u] + " := ?;\n";
        }
        out += "TO: " + ts.locNames[r.to] + ";\n";
    }
    return out;
}

} // namespace seglex
