#pragma once

#include "AffineExpr.h"

namespace seglex {

struct RationalizeLimits {
    Int maxDenominator{65536};
    double eps{1e-6};
};

// Turns real coefficient approximations (over pre-space vars x0..xn-1, plus an
// optional constant) into an exact integer affine expression: per-coefficient
// continued-fraction truncation of at most `depth` terms, denominators cleared
// by their lcm, then reduced by the common gcd. Positive scaling throughout,
// so signs at sample points are preserved up to the approximation error.
// Throws DegenerateHyperplane when everything rounds to zero.
AffineExpr rationalize(const std::vector<double>& coeffs, int depth,
                       double constant = 0.0, const RationalizeLimits& lim = {});

} // namespace seglex
