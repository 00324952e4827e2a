#pragma once

#include <optional>
#include <vector>

#include "Formula.h"

namespace seglex {

// Sum of coeff * var + constant with exact integer coefficients.
// Normal form: no zero coefficient entries.
struct AffineExpr {
    std::map<VarId, Int> coeffs;
    Int constant{0};

    void addTerm(VarId v, const Int& c);
    Int eval(const Valuation& env) const;
    Int evalPoint(const std::vector<Int>& point) const; // pre-space vars by index
    AffineExpr negated() const;
    AffineExpr plus(const AffineExpr& o) const;
    AffineExpr scaled(const Int& k) const;
    // Renames every variable through the map (identity when absent).
    AffineExpr renamed(const std::map<VarId, VarId>& ren) const;
    TermPtr toTerm() const;
    bool isConstant() const { return coeffs.empty(); }
    std::string print(const VarNamer& namer = defaultVarName) const;
};

bool operator==(const AffineExpr& a, const AffineExpr& b);
// Total deterministic order (coefficient count, then lexicographic content).
int affineCompare(const AffineExpr& a, const AffineExpr& b);

// Fails (nullopt) on nonlinear terms.
std::optional<AffineExpr> affineFromTerm(const TermPtr& t);

} // namespace seglex
