#include "SmtLib.h"

#include <cctype>

#include "../lia/Errors.h"

namespace seglex {

std::string smtSymbol(VarId v) {
    return (v.space == VarSpace::Pre ? "x" : "y") + std::to_string(v.index);
}

std::optional<VarId> smtSymbolToVar(const std::string& name) {
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) return std::nullopt;
    for (size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    uint32_t idx = static_cast<uint32_t>(std::stoul(name.substr(1)));
    return VarId{name[0] == 'x' ? VarSpace::Pre : VarSpace::Post, idx};
}

std::string smtTerm(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var:
            return smtSymbol(t->var);
        case TermKind::Const:
            return t->value < 0 ? "(- " + intAbs(t->value).str() + ")" : t->value.str();
        case TermKind::Add:
        case TermKind::Mul: {
            std::string s = t->kind == TermKind::Add ? "(+" : "(*";
            for (auto& a : t->args) s += " " + smtTerm(a);
            return s + ")";
        }
        case TermKind::Neg:
            return "(- " + smtTerm(t->args[0]) + ")";
    }
    throw SolverCrashed("bad term");
}

std::string smtFormula(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::True: return "true";
        case FormulaKind::False: return "false";
        case FormulaKind::Cmp: {
            std::string a = smtTerm(f->lhs), b = smtTerm(f->rhs);
            switch (f->op) {
                case CmpOp::Eq: return "(= " + a + " " + b + ")";
                case CmpOp::Ne: return "(not (= " + a + " " + b + "))";
                case CmpOp::Ge: return "(>= " + a + " " + b + ")";
            }
            break;
        }
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::string s = f->kind == FormulaKind::And ? "(and" : "(or";
            for (auto& a : f->args) s += " " + smtFormula(a);
            return s + ")";
        }
        case FormulaKind::Not:
            return "(not " + smtFormula(f->args[0]) + ")";
        case FormulaKind::Pred:
            throw SolverCrashed("predicate application in solver query: " + f->pred);
    }
    throw SolverCrashed("bad formula");
}

namespace {

size_t parseOne(const std::string& s, size_t pos, Sexp& out) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size()) throw SolverCrashed("truncated solver response");
    if (s[pos] == '(') {
        out.isAtom = false;
        ++pos;
        for (;;) {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos >= s.size()) throw SolverCrashed("unbalanced solver response");
            if (s[pos] == ')') return pos + 1;
            Sexp child;
            pos = parseOne(s, pos, child);
            out.list.push_back(std::move(child));
        }
    }
    out.isAtom = true;
    if (s[pos] == '"') {
        size_t end = pos + 1;
        while (end < s.size() && s[end] != '"') ++end;
        out.atom = s.substr(pos + 1, end - pos - 1);
        return end < s.size() ? end + 1 : end;
    }
    if (s[pos] == '|') {
        size_t end = pos + 1;
        while (end < s.size() && s[end] != '|') ++end;
        out.atom = s.substr(pos + 1, end - pos - 1);
        return end < s.size() ? end + 1 : end;
    }
    size_t end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) &&
           s[end] != '(' && s[end] != ')')
        ++end;
    out.atom = s.substr(pos, end - pos);
    return end;
}

} // namespace

Sexp parseSexp(const std::string& text) {
    Sexp s;
    parseOne(text, 0, s);
    return s;
}

Valuation parseModel(const Sexp& s) {
    Valuation env;
    if (s.isAtom) return env;
    for (auto& e : s.list) {
        if (e.isAtom || e.list.size() < 5) continue;
        if (!e.list[0].isAtom || e.list[0].atom != "define-fun") continue;
        if (!e.list[3].isAtom || e.list[3].atom != "Int") continue;
        auto var = smtSymbolToVar(e.list[1].atom);
        if (!var) continue;
        const Sexp& val = e.list[4];
        if (val.isAtom) {
            env[*var] = Int(val.atom);
        } else if (val.list.size() == 2 && val.list[0].isAtom && val.list[0].atom == "-" &&
                   val.list[1].isAtom) {
            env[*var] = -Int(val.list[1].atom);
        }
    }
    return env;
}

std::vector<std::string> parseCore(const Sexp& s) {
    std::vector<std::string> labels;
    if (s.isAtom) {
        if (!s.atom.empty()) labels.push_back(s.atom);
        return labels;
    }
    for (auto& e : s.list)
        if (e.isAtom) labels.push_back(e.atom);
    return labels;
}

} // namespace seglex
