#include "InvariantSynth.h"

#include <algorithm>
#include <cmath>

#include "../lia/Errors.h"

namespace seglex {

bool BoolTree::classify(const std::vector<Int>& p) const {
    const BoolTree* n = this;
    while (!n->isLeaf()) n = n->test->geSidePoint(p) ? n->ge.get() : n->lt.get();
    return n->verdict;
}

size_t BoolTree::depth() const {
    if (isLeaf()) return 0;
    return 1 + std::max(ge->depth(), lt->depth());
}

namespace {

using LabeledPoint = std::pair<const std::vector<Int>*, bool>;

double labelEntropy(size_t pos, size_t neg) {
    size_t total = pos + neg;
    if (pos == 0 || neg == 0) return 0.0;
    double p = double(pos) / double(total);
    double q = double(neg) / double(total);
    return -p * std::log2(p) - q * std::log2(q);
}

BoolTreePtr makeLeaf(const std::vector<LabeledPoint>& sample, bool verdict) {
    auto leaf = std::make_unique<BoolTree>();
    leaf->verdict = verdict;
    for (const auto& [p, label] : sample) leaf->sample.push_back(*p);
    return leaf;
}

BoolTreePtr grow(const std::vector<LabeledPoint>& sample,
                 const std::vector<Halfspace>& qualifiers) {
    size_t pos = size_t(std::count_if(sample.begin(), sample.end(),
                                      [](const LabeledPoint& lp) { return lp.second; }));
    if (pos == sample.size()) return makeLeaf(sample, true);
    if (pos == 0) return makeLeaf(sample, false);

    // Lowest weighted child entropy == highest information gain.
    const Halfspace* best = nullptr;
    double bestScore = 0;
    for (const auto& h : qualifiers) {
        size_t gePos = 0, geNeg = 0, ltPos = 0, ltNeg = 0;
        for (const auto& [p, label] : sample) {
            if (h.geSidePoint(*p)) (label ? gePos : geNeg)++;
            else (label ? ltPos : ltNeg)++;
        }
        size_t ge = gePos + geNeg, lt = ltPos + ltNeg;
        if (ge == 0 || lt == 0) continue;
        double score = (double(ge) * labelEntropy(gePos, geNeg) +
                        double(lt) * labelEntropy(ltPos, ltNeg)) /
                       double(sample.size());
        if (!best || score < bestScore ||
            (score == bestScore && qualifierPreferred(h, *best))) {
            best = &h;
            bestScore = score;
        }
    }
    if (!best) throw NoSeparatingQualifier("qualifier pool cannot split an impure sample");

    std::vector<LabeledPoint> geSample, ltSample;
    for (const auto& lp : sample)
        (best->geSidePoint(*lp.first) ? geSample : ltSample).push_back(lp);
    auto node = std::make_unique<BoolTree>();
    node->test = *best;
    node->ge = grow(geSample, qualifiers);
    node->lt = grow(ltSample, qualifiers);
    return node;
}

void collectPaths(const BoolTree& t, std::vector<FormulaPtr>& path,
                  std::vector<FormulaPtr>& out) {
    if (t.isLeaf()) {
        if (t.verdict) out.push_back(fAnd(path));
        return;
    }
    path.push_back(t.test->toFormula());
    collectPaths(*t.ge, path, out);
    path.back() = t.test->negFormula();
    collectPaths(*t.lt, path, out);
    path.pop_back();
}

} // namespace

FormulaPtr boolTreeFormula(const BoolTree& t) {
    std::vector<FormulaPtr> path, cubes;
    collectPaths(t, path, cubes);
    return fOr(std::move(cubes));
}

std::string printBoolTree(const BoolTree& t) {
    if (t.isLeaf()) return t.verdict ? "(true)" : "(false)";
    return "(if " + t.test->print() + " " + printBoolTree(*t.ge) + " " +
           printBoolTree(*t.lt) + ")";
}

BoolTreePtr synthInvariant(const std::set<std::vector<Int>>& pos,
                           const std::set<std::vector<Int>>& neg,
                           const std::vector<Halfspace>& qualifiers) {
    std::vector<LabeledPoint> sample;
    size_t dim = pos.empty() ? (neg.empty() ? 0 : neg.begin()->size()) : pos.begin()->size();
    for (const auto& p : pos) {
        if (neg.count(p)) throw Inseparable("point labeled both positive and negative");
        if (p.size() != dim) throw Error("invariant sample has mixed dimensions");
        sample.emplace_back(&p, true);
    }
    for (const auto& p : neg) {
        if (p.size() != dim) throw Error("invariant sample has mixed dimensions");
        sample.emplace_back(&p, false);
    }
    if (sample.empty()) return makeLeaf({}, false);
    return grow(sample, qualifiers);
}

} // namespace seglex
