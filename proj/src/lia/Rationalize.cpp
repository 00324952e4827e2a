#include "Rationalize.h"

#include <cmath>

#include "Errors.h"

namespace seglex {

namespace {

struct Rational {
    Int num{0};
    Int den{1};
};

Rational continuedFraction(double c, int depth, const RationalizeLimits& lim) {
    if (!std::isfinite(c)) throw DegenerateHyperplane("non-finite coefficient");
    Rational best;
    Int pPrev = 0, p = 1, qPrev = 1, q = 0; // convergent recurrence seeds h-2/h-1, k-2/k-1
    double x = c;
    for (int i = 0; i < depth; ++i) {
        double a = std::floor(x);
        Int ai(a);
        Int pNext = ai * p + pPrev;
        Int qNext = ai * q + qPrev;
        if (qNext < 0) { pNext = -pNext; qNext = -qNext; }
        if (i > 0 && qNext > lim.maxDenominator) break;
        pPrev = p; p = pNext;
        qPrev = q; q = qNext;
        best = {p, q};
        double err = std::abs(c - static_cast<double>(p) / static_cast<double>(q));
        if (err <= lim.eps * std::max(1.0, std::abs(c))) break;
        double frac = x - a;
        if (frac <= lim.eps) break;
        x = 1.0 / frac;
    }
    Int g = intGcd(best.num, best.den);
    if (g > 1) { best.num /= g; best.den /= g; }
    return best;
}

} // namespace

AffineExpr rationalize(const std::vector<double>& coeffs, int depth,
                       double constant, const RationalizeLimits& lim) {
    std::vector<Rational> rs;
    rs.reserve(coeffs.size() + 1);
    for (double c : coeffs) rs.push_back(continuedFraction(c, depth, lim));
    rs.push_back(continuedFraction(constant, depth, lim));

    Int scale = 1;
    for (auto& r : rs) scale = intLcm(scale, r.den);

    std::vector<Int> ints;
    ints.reserve(rs.size());
    Int g = 0;
    for (auto& r : rs) {
        ints.push_back(r.num * (scale / r.den));
        g = intGcd(g, ints.back());
    }
    if (g > 1)
        for (auto& v : ints) v /= g;

    AffineExpr e;
    for (size_t i = 0; i < coeffs.size(); ++i) e.addTerm(preVar(i), ints[i]);
    e.constant = ints.back();
    if (e.coeffs.empty())
        throw DegenerateHyperplane("all coefficients rounded to zero");
    return e;
}

} // namespace seglex
