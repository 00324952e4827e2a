#include "Qualifiers.h"

#include <set>

#include "../lia/Errors.h"

namespace seglex {

namespace {

AffineExpr axisDiff(uint32_t i, const Int& ai) {
    AffineExpr e;
    e.addTerm(preVar(i), 1);
    e.constant = -ai;
    return e;
}

} // namespace

std::vector<Halfspace> generateQualifiers(const std::vector<std::vector<Int>>& points,
                                          QualifierFamily family) {
    std::set<Halfspace> pool;
    size_t dim = points.empty() ? 0 : points.front().size();
    for (const auto& a : points) {
        if (a.size() != dim) throw Error("qualifier generation over mixed-dimension points");
        for (uint32_t i = 0; i < dim; ++i) {
            AffineExpr e = axisDiff(i, a[i]);
            pool.insert(Halfspace::normalized(e));
            pool.insert(Halfspace::normalized(e.negated()));
            if (family != QualifierFamily::Octagons) continue;
            for (uint32_t j = i + 1; j < dim; ++j) {
                AffineExpr ej = axisDiff(j, a[j]);
                for (int si : {1, -1}) {
                    for (int sj : {1, -1}) {
                        AffineExpr sum = e.scaled(si).plus(ej.scaled(sj));
                        pool.insert(Halfspace::normalized(sum));
                    }
                }
            }
        }
    }
    return {pool.begin(), pool.end()};
}

bool qualifierPreferred(const Halfspace& a, const Halfspace& b) {
    size_t na = a.expr.coeffs.size();
    size_t nb = b.expr.coeffs.size();
    if (na != nb) return na < nb;
    Int ca = abs(a.expr.constant);
    Int cb = abs(b.expr.constant);
    if (ca != cb) return ca < cb;
    return affineCompare(a.expr, b.expr) < 0;
}

bool separates(const Halfspace& h, const std::vector<Int>& a, const std::vector<Int>& b) {
    return sideOf(h, a) != sideOf(h, b);
}

} // namespace seglex
