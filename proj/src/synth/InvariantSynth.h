#pragma once

#include <memory>
#include <set>

#include "Qualifiers.h"

namespace seglex {

// Classifier tree over integer points: internal nodes test a halfspace,
// leaves carry a verdict plus the (label-pure) sample that reached them.
struct BoolTree {
    std::optional<Halfspace> test; // engaged on internal nodes
    std::unique_ptr<BoolTree> ge;  // test >= 0 side
    std::unique_ptr<BoolTree> lt;  // test < 0 side
    bool verdict{false};
    std::vector<std::vector<Int>> sample; // leaves only

    bool isLeaf() const { return !test.has_value(); }
    bool classify(const std::vector<Int>& p) const;
    size_t depth() const;
};

using BoolTreePtr = std::unique_ptr<BoolTree>;

// Disjunction over root-to-true-leaf paths, over preVar(0..dim-1); usable
// directly as a predicate definition body.
FormulaPtr boolTreeFormula(const BoolTree& t);

std::string printBoolTree(const BoolTree& t);

// Grows a tree by information gain over the qualifier pool, splitting until
// every leaf is label-pure. The result classifies every pos point true and
// every neg point false. Throws Inseparable when pos and neg intersect, and
// NoSeparatingQualifier when the pool cannot split an impure sample (cannot
// happen when the pool was generated from the same points).
BoolTreePtr synthInvariant(const std::set<std::vector<Int>>& pos,
                           const std::set<std::vector<Int>>& neg,
                           const std::vector<Halfspace>& qualifiers);

} // namespace seglex
