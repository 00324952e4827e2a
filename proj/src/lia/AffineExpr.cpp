#include "AffineExpr.h"

#include "Errors.h"

namespace seglex {

void AffineExpr::addTerm(VarId v, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs.emplace(v, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

Int AffineExpr::eval(const Valuation& env) const {
    Int acc = constant;
    for (auto& [v, c] : coeffs) {
        auto it = env.find(v);
        if (it == env.end())
            throw EvalError("missing variable " + defaultVarName(v));
        acc += c * it->second;
    }
    return acc;
}

Int AffineExpr::evalPoint(const std::vector<Int>& point) const {
    Int acc = constant;
    for (auto& [v, c] : coeffs) {
        if (v.space != VarSpace::Pre || v.index >= point.size())
            throw EvalError("point does not cover " + defaultVarName(v));
        acc += c * point[v.index];
    }
    return acc;
}

AffineExpr AffineExpr::negated() const {
    AffineExpr r;
    r.constant = -constant;
    for (auto& [v, c] : coeffs) r.coeffs.emplace(v, -c);
    return r;
}

AffineExpr AffineExpr::plus(const AffineExpr& o) const {
    AffineExpr r = *this;
    r.constant += o.constant;
    for (auto& [v, c] : o.coeffs) r.addTerm(v, c);
    return r;
}

AffineExpr AffineExpr::scaled(const Int& k) const {
    AffineExpr r;
    if (k == 0) return r;
    r.constant = constant * k;
    for (auto& [v, c] : coeffs) r.coeffs.emplace(v, c * k);
    return r;
}

AffineExpr AffineExpr::renamed(const std::map<VarId, VarId>& ren) const {
    AffineExpr r;
    r.constant = constant;
    for (auto& [v, c] : coeffs) {
        auto it = ren.find(v);
        r.addTerm(it == ren.end() ? v : it->second, c);
    }
    return r;
}

TermPtr AffineExpr::toTerm() const {
    std::vector<TermPtr> parts;
    for (auto& [v, c] : coeffs) {
        if (c == 1)
            parts.push_back(tVar(v));
        else
            parts.push_back(tMul({tConst(c), tVar(v)}));
    }
    if (constant != 0 || parts.empty()) parts.push_back(tConst(constant));
    return tAdd(std::move(parts));
}

std::string AffineExpr::print(const VarNamer& namer) const {
    std::string s;
    for (auto& [v, c] : coeffs) {
        if (s.empty()) {
            if (c == 1) s = namer(v);
            else if (c == -1) s = "-" + namer(v);
            else s = c.str() + "*" + namer(v);
        } else {
            Int a = intAbs(c);
            s += c < 0 ? " - " : " + ";
            if (a == 1) s += namer(v);
            else s += a.str() + "*" + namer(v);
        }
    }
    if (s.empty()) return constant.str();
    if (constant > 0) s += " + " + constant.str();
    if (constant < 0) s += " - " + intAbs(constant).str();
    return s;
}

bool operator==(const AffineExpr& a, const AffineExpr& b) {
    return a.constant == b.constant && a.coeffs == b.coeffs;
}

int affineCompare(const AffineExpr& a, const AffineExpr& b) {
    if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size() ? -1 : 1;
    auto ia = a.coeffs.begin();
    auto ib = b.coeffs.begin();
    for (; ia != a.coeffs.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (a.constant != b.constant) return a.constant < b.constant ? -1 : 1;
    return 0;
}

std::optional<AffineExpr> affineFromTerm(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: {
            AffineExpr e;
            e.coeffs.emplace(t->var, 1);
            return e;
        }
        case TermKind::Const: {
            AffineExpr e;
            e.constant = t->value;
            return e;
        }
        case TermKind::Neg: {
            auto e = affineFromTerm(t->args[0]);
            if (!e) return std::nullopt;
            return e->negated();
        }
        case TermKind::Add: {
            AffineExpr acc;
            for (auto& a : t->args) {
                auto e = affineFromTerm(a);
                if (!e) return std::nullopt;
                acc = acc.plus(*e);
            }
            return acc;
        }
        case TermKind::Mul: {
            AffineExpr acc;
            acc.constant = 1;
            for (auto& a : t->args) {
                auto e = affineFromTerm(a);
                if (!e) return std::nullopt;
                if (acc.isConstant())
                    acc = e->scaled(acc.constant);
                else if (e->isConstant())
                    acc = acc.scaled(e->constant);
                else
                    return std::nullopt;
            }
            return acc;
        }
    }
    return std::nullopt;
}

} // namespace seglex
