#pragma once

#include "AffineExpr.h"

namespace seglex {

// The closed integer halfspace expr >= 0, in canonical split form:
//  - zero coefficients dropped, at least one variable coefficient
//  - coefficients gcd-reduced with the constant floored (integer tightening)
//  - leading coefficient positive; a negative-leading expr is replaced by the
//    complement split -expr-1 >= 0, which partitions Z^n identically with the
//    sides swapped.
struct Halfspace {
    AffineExpr expr;

    static Halfspace normalized(AffineExpr e);

    bool geSide(const Valuation& env) const { return expr.eval(env) >= 0; }
    bool geSidePoint(const std::vector<Int>& p) const { return expr.evalPoint(p) >= 0; }
    FormulaPtr toFormula() const { return fGe(expr.toTerm(), tConst(0)); }
    // The complement -expr-1 >= 0, i.e. expr < 0 over the integers.
    FormulaPtr negFormula() const;
    std::string print(const VarNamer& namer = defaultVarName) const {
        return expr.print(namer) + " >= 0";
    }
};

bool operator==(const Halfspace& a, const Halfspace& b);
bool operator<(const Halfspace& a, const Halfspace& b);

// side_of: +1 for the >= 0 side, -1 for the < 0 side.
inline int sideOf(const Halfspace& h, const std::vector<Int>& p) {
    return h.geSidePoint(p) ? 1 : -1;
}

} // namespace seglex
