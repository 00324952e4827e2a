#pragma once

#include <vector>

#include "../lia/Halfspace.h"

namespace seglex {

enum class QualifierFamily { Intervals, Octagons };

// Candidate split halfspaces through the coordinates of the given points:
//   Intervals: +-(x_i - a_i) >= 0 for every point a and axis i
//   Octagons:  additionally +-(x_i - a_i) +- (x_j - a_j) >= 0 for i != j
// Results are normalized splits, deduplicated, in deterministic order.
// Points must share one dimension; an empty point set yields an empty pool.
std::vector<Halfspace> generateQualifiers(const std::vector<std::vector<Int>>& points,
                                          QualifierFamily family);

// Deterministic preference order used for tie-breaking between equally good
// qualifiers: fewer nonzero coefficients, then smaller |constant|, then the
// total affine order.
bool qualifierPreferred(const Halfspace& a, const Halfspace& b);

// True when the two points land on opposite sides of the split.
bool separates(const Halfspace& h, const std::vector<Int>& a, const std::vector<Int>& b);

} // namespace seglex
