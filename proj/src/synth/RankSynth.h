#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "../smt/SmtSession.h"
#include "../store/ExampleStore.h"
#include "Qualifiers.h"

namespace seglex {

// Two unfoldings of the lexicographic descent relation. Strict demands
// equality on every dimension above the descending one; Degenerate also
// lets a dimension drop out once its destination value goes negative.
// Only Strict guarantees that an unsatisfiable constraint core contains an
// implicit cycle, so Degenerate runs may fall back to Strict.
enum class WfVariant { Strict, Degenerate };

enum class QualifierStrategy { Eager, Lazy };

// Fresh parameter variables for templates and objective bounds; one pool per
// synthesis run keeps parameters globally unique across all tree leaves.
class ParamAlloc {
  public:
    VarId fresh() { return preVar(next_++); }
    uint32_t used() const { return next_; }

  private:
    uint32_t next_{0};
};

// f(x) = sum coeff[i]*x_i + constant, coefficients being solver parameters.
struct RankTemplate {
    std::vector<VarId> coeff;
    VarId constant{};

    // f(v): affine in the parameters.
    AffineExpr at(const std::vector<Int>& v) const;
};

// Lexicographic tuple (f_k, ..., f_0); index 0 is compared first.
using TemplateTuple = std::vector<RankTemplate>;

TemplateTuple makeTemplateTuple(ParamAlloc& alloc, uint32_t dim, uint32_t k);

// Segmentation tree over the state space; every leaf cell carries its own
// template tuple. Splits send the halfspace's >= 0 side to `ge`.
struct TemplateTree {
    std::optional<Halfspace> split; // engaged on internal nodes
    std::unique_ptr<TemplateTree> ge, lt;
    TemplateTuple leaf;

    bool isLeaf() const { return !split.has_value(); }
    TemplateTree* cellFor(const std::vector<Int>& p);
    const TemplateTree* cellFor(const std::vector<Int>& p) const;
    void leaves(std::vector<const TemplateTree*>& out) const;
    size_t leafCount() const;
    size_t internalCount() const;
};

using TemplateTreePtr = std::unique_ptr<TemplateTree>;

std::string printTemplateTree(const TemplateTree& t);

// Instantiated tree: a concrete piecewise affine lexicographic function.
struct RankNode {
    std::optional<Halfspace> split;
    std::unique_ptr<RankNode> ge, lt;
    std::vector<AffineExpr> tuple;

    bool isLeaf() const { return !split.has_value(); }
};

struct RankFunction {
    std::unique_ptr<RankNode> root;
    uint32_t dim{0};

    std::vector<Int> eval(const std::vector<Int>& v) const;
    // Ground truth of the descent relation at (v, v').
    bool holds(const std::vector<Int>& v, const std::vector<Int>& vp, WfVariant variant) const;
    size_t leafCount() const;
    size_t internalCount() const;
    std::string print() const;
};

// The descent relation R_f(x, x') as a quantifier-free formula over
// preVar(0..dim-1) for x and preVar(dim..2*dim-1) for x', i.e. directly
// usable as a predicate definition body of arity 2*dim.
FormulaPtr relationFormula(const RankFunction& fn, WfVariant variant);

// Descent between two concrete tuples under the variant's unfolding.
bool lexDescentHolds(const std::vector<Int>& a, const std::vector<Int>& b, WfVariant variant);

// --- synthesis building blocks (exposed for tests) ---------------------

// Shortest cycle in the directed graph whose edges are the examples, as a
// chain of examples with dst(i) == src(i+1) cyclically; none when acyclic.
std::optional<std::vector<TransitionExample>>
detectExplicitCycle(const std::vector<TransitionExample>& exs);

// Sorted distinct endpoint points of the examples.
std::vector<std::vector<Int>> collectEndpoints(const std::vector<TransitionExample>& exs);

// Descent constraint for one example: x |-> v in the source leaf's
// templates, x' |-> v' in the destination leaf's; parameter-linear.
FormulaPtr wfFormula(const TemplateTuple& src, const TemplateTuple& dst,
                     const std::vector<Int>& v, const std::vector<Int>& vp, WfVariant variant);

// One labeled constraint per example ("ex<i>" by position).
std::vector<Labeled> getConstraints(const TemplateTree& tree,
                                    const std::vector<TransitionExample>& exs,
                                    WfVariant variant);

// Alg.-3 score of a candidate split: maximum satisfiable descent constraints
// on each non-crossing side plus an entropy reward for one-directional
// crossings. Higher is better.
double qualityMeasure(SmtSession& sess, ParamAlloc& alloc, const Halfspace& h,
                      const std::vector<TransitionExample>& exs, uint32_t dim, uint32_t k,
                      WfVariant variant);

// Best-quality member of H that splits the example endpoints; deterministic
// tie-break via qualifierPreferred. Throws NoSeparatingQualifier when no
// member separates any endpoint pair.
Halfspace chooseQualifierEager(SmtSession& sess, ParamAlloc& alloc,
                               const std::vector<TransitionExample>& exs,
                               const std::vector<Halfspace>& pool, uint32_t dim, uint32_t k,
                               WfVariant variant);

// Qualifier from scratch: a MaxSMT descent direction labels the endpoints,
// then an exact integer separation query (undersampling the majority label
// while inseparable) yields the split.
Halfspace chooseQualifierLazy(SmtSession& sess, const std::vector<TransitionExample>& exs,
                              uint32_t dim);

struct SynthOptions {
    SmtConfig smt;
    SmtSession* session{nullptr}; // reuse this session instead of spawning one
    uint32_t k{1};    // lexicographic tuple length - 1
    uint32_t kCap{3}; // escalation ceiling
    WfVariant variant{WfVariant::Degenerate};
    QualifierStrategy strategy{QualifierStrategy::Eager};
    QualifierFamily family{QualifierFamily::Intervals};
    bool debugChecks{false}; // re-verify per-leaf feasibility after each split
};

// Recursive per-cell feasibility resolution: keep a single template when the
// whole example set admits one, otherwise split by a qualifier and recurse on
// the two same-side example subsets (crossing examples drop out here; the
// global constraint pass picks them back up).
TemplateTreePtr resolveCase2(SmtSession& sess, ParamAlloc& alloc,
                             const std::vector<TransitionExample>& exs, uint32_t dim,
                             const SynthOptions& opt, uint32_t k, WfVariant variant,
                             const std::vector<Halfspace>& pool);

// Cells of the segmentation and the crossing examples between them.
struct DepEdge {
    size_t from, to;              // indices into DepGraph::cells
    std::vector<size_t> examples; // witnessing example indices
};
struct DepGraph {
    std::vector<const TemplateTree*> cells; // all cells, depth-first order
    std::vector<DepEdge> edges;
};
DepGraph dependencyGraph(const TemplateTree& tree, const std::vector<TransitionExample>& exs);

// Directed cycle among the crossing examples named by the core, as example
// indices in cycle order (dst of each lands in the cell of the next src).
// None is possible only under the Degenerate variant.
std::optional<std::vector<size_t>> findImplicitCycle(const TemplateTree& tree,
                                                     const std::vector<TransitionExample>& exs,
                                                     const std::vector<size_t>& coreIdx);

// Split halfspace for breaking an implicit cycle inside one cell: separate
// the cell's entry point a from its exit point b while making as few of the
// cell's own examples crossing as possible.
Halfspace refinementHalfspaceEager(const std::vector<Halfspace>& pool,
                                   const std::vector<Int>& a, const std::vector<Int>& b,
                                   const std::vector<TransitionExample>& cellExs);
Halfspace refinementHalfspaceLazy(SmtSession& sess, const std::vector<Int>& a,
                                  const std::vector<Int>& b,
                                  const std::vector<TransitionExample>& cellExs, uint32_t dim);

// Replaces a leaf cell by an if-node; both children get fresh templates.
void splitLeaf(TemplateTree& cell, const Halfspace& h, ParamAlloc& alloc, uint32_t dim,
               uint32_t k);

// Objective sum |p| over every template parameter of the tree, lowered to a
// sum of auxiliary bound variables constrained in defsOut.
AffineExpr sumAbsParams(const TemplateTree& tree, ParamAlloc& alloc,
                        std::vector<FormulaPtr>& defsOut);

RankFunction instantiate(const TemplateTree& tree, const Valuation& model, uint32_t dim);

// --- end-to-end synthesis ----------------------------------------------

struct SynthSuccess {
    RankFunction fn;
    FormulaPtr relation; // relationFormula(fn, variantUsed)
    WfVariant variantUsed{WfVariant::Strict};
    uint32_t kUsed{0};
    uint32_t refinements{0};
    uint32_t strictRestarts{0};
};

struct SynthUnsat {
    std::vector<TransitionExample> cycle; // explicit cycle: a genuine refutation
};

using SynthResult = std::variant<SynthSuccess, SynthUnsat>;

// Learns a piecewise affine lexicographic function whose descent relation
// covers every positive example, or reports the explicit cycle that refutes
// all of them. Well-founded predicates admit no negative examples; any
// present raise NegativeWfExample. Refinements per run are bounded by the
// number of distinct endpoints; exceeding the bound escalates the tuple
// length up to opt.kCap and is a hard error past the cap.
SynthResult synthWf(const PredExamples& ex, uint32_t stateDim, const SynthOptions& opt);

} // namespace seglex
