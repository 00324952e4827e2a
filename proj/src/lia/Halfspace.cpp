#include "Halfspace.h"

#include "Errors.h"

namespace seglex {

Halfspace Halfspace::normalized(AffineExpr e) {
    for (auto it = e.coeffs.begin(); it != e.coeffs.end();) {
        if (it->second == 0)
            it = e.coeffs.erase(it);
        else
            ++it;
    }
    if (e.coeffs.empty())
        throw DegenerateHyperplane("halfspace without variable coefficients");

    Int g = 0;
    for (auto& [v, c] : e.coeffs) g = intGcd(g, c);
    if (g > 1) {
        for (auto& [v, c] : e.coeffs) c /= g;
        // a*g*x + c >= 0  <=>  a*x >= ceil(-c/g)  <=>  a*x + floor(c/g) >= 0
        e.constant = floorDiv(e.constant, g);
    }
    if (e.coeffs.begin()->second < 0) {
        e = e.negated();
        e.constant -= 1;
    }
    return Halfspace{std::move(e)};
}

FormulaPtr Halfspace::negFormula() const {
    AffineExpr c = expr.negated();
    c.constant -= 1;
    return fGe(c.toTerm(), tConst(0));
}

bool operator==(const Halfspace& a, const Halfspace& b) { return a.expr == b.expr; }
bool operator<(const Halfspace& a, const Halfspace& b) {
    return affineCompare(a.expr, b.expr) < 0;
}

} // namespace seglex
