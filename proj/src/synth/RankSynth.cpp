#include "RankSynth.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "../lia/Errors.h"

namespace seglex {

namespace {

Int lookupInt(const Valuation& m, VarId v) {
    auto it = m.find(v);
    return it == m.end() ? Int(0) : it->second;
}

std::string affineSexpr(const AffineExpr& e) {
    std::vector<std::string> parts;
    for (const auto& [v, c] : e.coeffs) {
        if (c == 1) parts.push_back(defaultVarName(v));
        else parts.push_back("(* " + c.str() + " " + defaultVarName(v) + ")");
    }
    if (e.constant != 0 || parts.empty()) parts.push_back(e.constant.str());
    if (parts.size() == 1) return parts.front();
    std::string s = "(+";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
}

std::string templateSexpr(const RankTemplate& t) {
    std::vector<std::string> parts;
    for (size_t i = 0; i < t.coeff.size(); ++i)
        parts.push_back("(* p" + std::to_string(t.coeff[i].index) + " x" + std::to_string(i) + ")");
    parts.push_back("p" + std::to_string(t.constant.index));
    if (parts.size() == 1) return parts.front();
    std::string s = "(+";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
}

// Unfolds the lexicographic descent of src over dst (index 0 compared
// first): some dimension is nonnegative and strictly drops while every
// dimension above it passes the variant's guard — Strict: equality;
// Degenerate: equality or an already-negative destination value.
FormulaPtr lexDescentFormula(const std::vector<AffineExpr>& src,
                             const std::vector<AffineExpr>& dst, WfVariant variant) {
    if (src.size() != dst.size()) throw Error("lexicographic tuples of unequal length");
    FormulaPtr acc = fFalse();
    bool accFalse = true;
    for (size_t j = src.size(); j-- > 0;) {
        TermPtr s = src[j].toTerm();
        TermPtr d = dst[j].toTerm();
        FormulaPtr desc = fAnd({fGe(s, tConst(0)), fGt(s, d)});
        if (accFalse) {
            acc = desc;
            accFalse = false;
            continue;
        }
        FormulaPtr guard = variant == WfVariant::Strict
                               ? fEq(s, d)
                               : fOr({fLt(d, tConst(0)), fEq(s, d)});
        acc = fOr({desc, fAnd({guard, acc})});
    }
    return acc;
}

} // namespace

// --- templates and trees -------------------------------------------------

AffineExpr RankTemplate::at(const std::vector<Int>& v) const {
    if (v.size() != coeff.size()) throw Error("template instantiated at the wrong dimension");
    AffineExpr e;
    for (size_t i = 0; i < v.size(); ++i) e.addTerm(coeff[i], v[i]);
    e.addTerm(constant, 1);
    return e;
}

TemplateTuple makeTemplateTuple(ParamAlloc& alloc, uint32_t dim, uint32_t k) {
    TemplateTuple tuple(k + 1);
    for (auto& t : tuple) {
        t.coeff.reserve(dim);
        for (uint32_t i = 0; i < dim; ++i) t.coeff.push_back(alloc.fresh());
        t.constant = alloc.fresh();
    }
    return tuple;
}

TemplateTree* TemplateTree::cellFor(const std::vector<Int>& p) {
    TemplateTree* n = this;
    while (!n->isLeaf()) n = n->split->geSidePoint(p) ? n->ge.get() : n->lt.get();
    return n;
}

const TemplateTree* TemplateTree::cellFor(const std::vector<Int>& p) const {
    const TemplateTree* n = this;
    while (!n->isLeaf()) n = n->split->geSidePoint(p) ? n->ge.get() : n->lt.get();
    return n;
}

void TemplateTree::leaves(std::vector<const TemplateTree*>& out) const {
    if (isLeaf()) {
        out.push_back(this);
        return;
    }
    ge->leaves(out);
    lt->leaves(out);
}

size_t TemplateTree::leafCount() const {
    return isLeaf() ? 1 : ge->leafCount() + lt->leafCount();
}

size_t TemplateTree::internalCount() const {
    return isLeaf() ? 0 : 1 + ge->internalCount() + lt->internalCount();
}

std::string printTemplateTree(const TemplateTree& t) {
    if (t.isLeaf()) {
        std::string s = "(leaf (tuple";
        for (const auto& tmpl : t.leaf) s += " " + templateSexpr(tmpl);
        return s + "))";
    }
    return "(if (>= " + affineSexpr(t.split->expr) + " 0) " + printTemplateTree(*t.ge) +
           " " + printTemplateTree(*t.lt) + ")";
}

// --- concrete functions ----------------------------------------------------

namespace {

const RankNode* rankCellFor(const RankNode* n, const std::vector<Int>& p) {
    while (!n->isLeaf()) n = n->split->geSidePoint(p) ? n->ge.get() : n->lt.get();
    return n;
}

std::string rankNodeSexpr(const RankNode& n) {
    if (n.isLeaf()) {
        std::string s = "(leaf (tuple";
        for (const auto& e : n.tuple) s += " " + affineSexpr(e);
        return s + "))";
    }
    return "(if (>= " + affineSexpr(n.split->expr) + " 0) " + rankNodeSexpr(*n.ge) + " " +
           rankNodeSexpr(*n.lt) + ")";
}

size_t rankLeafCount(const RankNode& n) {
    return n.isLeaf() ? 1 : rankLeafCount(*n.ge) + rankLeafCount(*n.lt);
}

size_t rankInternalCount(const RankNode& n) {
    return n.isLeaf() ? 0 : 1 + rankInternalCount(*n.ge) + rankInternalCount(*n.lt);
}

} // namespace

std::vector<Int> RankFunction::eval(const std::vector<Int>& v) const {
    const RankNode* leaf = rankCellFor(root.get(), v);
    std::vector<Int> out;
    out.reserve(leaf->tuple.size());
    for (const auto& e : leaf->tuple) out.push_back(e.evalPoint(v));
    return out;
}

bool lexDescentHolds(const std::vector<Int>& a, const std::vector<Int>& b, WfVariant variant) {
    if (a.size() != b.size()) throw Error("lexicographic tuples of unequal length");
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] >= 0 && a[j] > b[j]) return true;
        bool pass = variant == WfVariant::Strict ? a[j] == b[j] : (b[j] < 0 || a[j] == b[j]);
        if (!pass) return false;
    }
    return false;
}

bool RankFunction::holds(const std::vector<Int>& v, const std::vector<Int>& vp,
                         WfVariant variant) const {
    return lexDescentHolds(eval(v), eval(vp), variant);
}

size_t RankFunction::leafCount() const { return rankLeafCount(*root); }
size_t RankFunction::internalCount() const { return rankInternalCount(*root); }
std::string RankFunction::print() const { return rankNodeSexpr(*root); }

FormulaPtr relationFormula(const RankFunction& fn, WfVariant variant) {
    struct LeafPath {
        std::vector<std::pair<const Halfspace*, bool>> path; // (split, on ge side)
        const std::vector<AffineExpr>* tuple;
    };
    std::vector<LeafPath> leaves;
    std::vector<std::pair<const Halfspace*, bool>> path;
    std::function<void(const RankNode&)> walk = [&](const RankNode& n) {
        if (n.isLeaf()) {
            leaves.push_back({path, &n.tuple});
            return;
        }
        path.emplace_back(&*n.split, true);
        walk(*n.ge);
        path.back().second = false;
        walk(*n.lt);
        path.pop_back();
    };
    walk(*fn.root);

    std::map<VarId, VarId> ren;
    for (uint32_t i = 0; i < fn.dim; ++i) ren[preVar(i)] = preVar(fn.dim + i);
    auto sideFormulas = [&](const LeafPath& leaf, bool primedSide) {
        std::vector<FormulaPtr> fs;
        for (const auto& [h, geSide] : leaf.path) {
            AffineExpr e = primedSide ? h->expr.renamed(ren) : h->expr;
            fs.push_back(geSide ? fGe(e.toTerm(), tConst(0)) : fLt(e.toTerm(), tConst(0)));
        }
        return fs;
    };

    std::vector<FormulaPtr> cases;
    for (const auto& src : leaves) {
        for (const auto& dst : leaves) {
            std::vector<FormulaPtr> parts = sideFormulas(src, false);
            std::vector<FormulaPtr> dstParts = sideFormulas(dst, true);
            parts.insert(parts.end(), dstParts.begin(), dstParts.end());
            std::vector<AffineExpr> dstTuple;
            for (const auto& e : *dst.tuple) dstTuple.push_back(e.renamed(ren));
            parts.push_back(lexDescentFormula(*src.tuple, dstTuple, variant));
            cases.push_back(fAnd(std::move(parts)));
        }
    }
    return fOr(std::move(cases));
}

// --- example bookkeeping ---------------------------------------------------

std::optional<std::vector<TransitionExample>>
detectExplicitCycle(const std::vector<TransitionExample>& exs) {
    std::map<std::vector<Int>, int> id;
    auto intern = [&](const std::vector<Int>& p) {
        return id.emplace(p, int(id.size())).first->second;
    };
    std::vector<std::pair<int, int>> arcs; // (srcId, dstId) per example
    for (const auto& e : exs) arcs.emplace_back(intern(e.src), intern(e.dst));
    std::vector<std::vector<std::pair<int, size_t>>> adj(id.size());
    for (size_t i = 0; i < arcs.size(); ++i) adj[arcs[i].first].emplace_back(arcs[i].second, i);

    // Shortest cycle through each example edge: BFS back from dst to src.
    std::optional<std::vector<size_t>> best;
    for (size_t i = 0; i < arcs.size(); ++i) {
        auto [u, v] = arcs[i];
        std::vector<std::pair<int, size_t>> parent(id.size(), {-1, 0}); // (prev node, edge)
        std::vector<int> dist(id.size(), -1);
        std::vector<int> queue{v};
        dist[v] = 0;
        for (size_t qi = 0; qi < queue.size() && dist[u] < 0; ++qi) {
            int w = queue[qi];
            for (auto [next, ei] : adj[w]) {
                if (dist[next] >= 0) continue;
                dist[next] = dist[w] + 1;
                parent[next] = {w, ei};
                queue.push_back(next);
            }
        }
        if (dist[u] < 0) continue;
        std::vector<size_t> cyc;
        for (int w = u; w != v; w = parent[w].first) cyc.push_back(parent[w].second);
        std::reverse(cyc.begin(), cyc.end());
        cyc.insert(cyc.begin(), i);
        if (!best || cyc.size() < best->size()) best = std::move(cyc);
    }
    if (!best) return std::nullopt;
    std::vector<TransitionExample> cycle;
    for (size_t i : *best) cycle.push_back(exs[i]);
    return cycle;
}

std::vector<std::vector<Int>> collectEndpoints(const std::vector<TransitionExample>& exs) {
    std::set<std::vector<Int>> pts;
    for (const auto& e : exs) {
        pts.insert(e.src);
        pts.insert(e.dst);
    }
    return {pts.begin(), pts.end()};
}

// --- constraints -----------------------------------------------------------

FormulaPtr wfFormula(const TemplateTuple& src, const TemplateTuple& dst,
                     const std::vector<Int>& v, const std::vector<Int>& vp,
                     WfVariant variant) {
    if (src.size() != dst.size()) throw Error("template tuples of unequal length");
    std::vector<AffineExpr> a, b;
    for (const auto& t : src) a.push_back(t.at(v));
    for (const auto& t : dst) b.push_back(t.at(vp));
    return lexDescentFormula(a, b, variant);
}

std::vector<Labeled> getConstraints(const TemplateTree& tree,
                                    const std::vector<TransitionExample>& exs,
                                    WfVariant variant) {
    std::vector<Labeled> out;
    out.reserve(exs.size());
    for (size_t i = 0; i < exs.size(); ++i) {
        const TemplateTree* src = tree.cellFor(exs[i].src);
        const TemplateTree* dst = tree.cellFor(exs[i].dst);
        out.push_back({"ex" + std::to_string(i),
                       wfFormula(src->leaf, dst->leaf, exs[i].src, exs[i].dst, variant)});
    }
    return out;
}

// --- qualifier choice ------------------------------------------------------

namespace {

double crossingEntropy(size_t x, size_t y) {
    if (x + y == 0) return 1.0;
    double total = double(x + y);
    double h = 0;
    if (x > 0) h -= (double(x) / total) * std::log2(double(x) / total);
    if (y > 0) h -= (double(y) / total) * std::log2(double(y) / total);
    return h;
}

} // namespace

double qualityMeasure(SmtSession& sess, ParamAlloc& alloc, const Halfspace& h,
                      const std::vector<TransitionExample>& exs, uint32_t dim, uint32_t k,
                      WfVariant variant) {
    std::vector<const TransitionExample*> gege, ltlt;
    size_t gelt = 0, ltge = 0;
    for (const auto& e : exs) {
        bool s = h.geSidePoint(e.src);
        bool d = h.geSidePoint(e.dst);
        if (s && d) gege.push_back(&e);
        else if (!s && !d) ltlt.push_back(&e);
        else if (s) ++gelt;
        else ++ltge;
    }
    TemplateTuple f = makeTemplateTuple(alloc, dim, k);
    auto maxDescent = [&](const std::vector<const TransitionExample*>& side) -> size_t {
        if (side.empty()) return 0;
        std::vector<FormulaPtr> soft;
        for (const auto* e : side) soft.push_back(wfFormula(f, f, e->src, e->dst, variant));
        return sess.maxSat({}, soft).count;
    };
    double crossing = double(gelt + ltge) * (1.0 - crossingEntropy(gelt, ltge));
    return double(maxDescent(gege)) + double(maxDescent(ltlt)) + crossing;
}

Halfspace chooseQualifierEager(SmtSession& sess, ParamAlloc& alloc,
                               const std::vector<TransitionExample>& exs,
                               const std::vector<Halfspace>& pool, uint32_t dim, uint32_t k,
                               WfVariant variant) {
    auto pts = collectEndpoints(exs);
    const Halfspace* best = nullptr;
    double bestScore = 0;
    for (const auto& h : pool) {
        bool ge = false, lt = false;
        for (const auto& p : pts) (h.geSidePoint(p) ? ge : lt) = true;
        if (!ge || !lt) continue;
        double score = qualityMeasure(sess, alloc, h, exs, dim, k, variant);
        if (!best || score > bestScore ||
            (score == bestScore && qualifierPreferred(h, *best))) {
            best = &h;
            bestScore = score;
        }
    }
    if (!best) throw NoSeparatingQualifier("no qualifier splits the endpoint set");
    return *best;
}

namespace {

const Int kBoxStart = 64;
const Int kBoxLimit = Int(1) << 20;

// Exact integer separation: w.p - c >= 0 for +1 points, <= -1 for -1 points,
// with |w_i| <= box. Returns the halfspace or nothing when inseparable.
std::optional<Halfspace> separatePoints(SmtSession& sess,
                                        const std::vector<std::pair<std::vector<Int>, int>>& pts,
                                        uint32_t dim, const Int& box) {
    std::vector<Labeled> cs;
    for (uint32_t i = 0; i < dim; ++i) {
        cs.push_back({"lo" + std::to_string(i), fGe(tVar(preVar(i)), tConst(-box))});
        cs.push_back({"hi" + std::to_string(i), fLe(tVar(preVar(i)), tConst(box))});
    }
    const VarId cVar = preVar(dim);
    for (size_t n = 0; n < pts.size(); ++n) {
        const auto& [p, label] = pts[n];
        AffineExpr e;
        for (uint32_t i = 0; i < dim; ++i) e.addTerm(preVar(i), p[i]);
        e.addTerm(cVar, -1);
        cs.push_back({"pt" + std::to_string(n),
                      label > 0 ? fGe(e.toTerm(), tConst(0)) : fLe(e.toTerm(), tConst(-1))});
    }
    SmtResult r = sess.checkSat(cs, false);
    if (r.status == SmtStatus::Unknown) throw SolverCrashed("separation query returned unknown");
    if (r.status == SmtStatus::Unsat) return std::nullopt;
    AffineExpr h;
    for (uint32_t i = 0; i < dim; ++i) h.addTerm(preVar(i), lookupInt(r.model, preVar(i)));
    h.constant = -lookupInt(r.model, cVar);
    if (h.coeffs.empty()) throw DegenerateHyperplane("separator has no variable coefficients");
    return Halfspace::normalized(h);
}

} // namespace

Halfspace chooseQualifierLazy(SmtSession& sess, const std::vector<TransitionExample>& exs,
                              uint32_t dim) {
    if (exs.empty()) throw Error("qualifier choice over an empty example set");

    // Direction a maximizing the number of descending examples.
    std::vector<FormulaPtr> hard, soft;
    for (uint32_t i = 0; i < dim; ++i) {
        hard.push_back(fGe(tVar(preVar(i)), tConst(-kBoxStart)));
        hard.push_back(fLe(tVar(preVar(i)), tConst(kBoxStart)));
    }
    for (const auto& e : exs) {
        AffineExpr d;
        for (uint32_t i = 0; i < dim; ++i) d.addTerm(preVar(i), e.src[i] - e.dst[i]);
        soft.push_back(fGt(d.toTerm(), tConst(0)));
    }
    MaxSatResult dir = sess.maxSat(hard, soft);
    std::vector<Int> a(dim, 0);
    if (dir.hasModel)
        for (uint32_t i = 0; i < dim; ++i) a[i] = lookupInt(dir.model, preVar(i));

    // Both endpoints of an example inherit its direction agreement; the first
    // mention of a point wins when examples disagree about it.
    std::vector<std::pair<std::vector<Int>, int>> pts;
    std::set<std::vector<Int>> seen;
    for (const auto& e : exs) {
        Int dot = 0;
        for (uint32_t i = 0; i < dim; ++i) dot += a[i] * (e.src[i] - e.dst[i]);
        int label = dot > 0 ? 1 : -1;
        if (seen.insert(e.src).second) pts.emplace_back(e.src, label);
        if (seen.insert(e.dst).second) pts.emplace_back(e.dst, label);
    }
    size_t posCount = size_t(std::count_if(pts.begin(), pts.end(),
                                           [](const auto& pl) { return pl.second > 0; }));
    if (posCount == 0 || posCount == pts.size()) {
        // One-class labels produce a useless separator: split the first two
        // distinct points instead (a qualifier only has to cut the cell).
        if (pts.size() < 2) throw Error("qualifier choice needs two distinct endpoints");
        pts = {{pts[0].first, 1}, {pts[1].first, -1}};
    }

    for (;;) {
        for (Int box = kBoxStart; box <= kBoxLimit; box *= 2)
            if (auto h = separatePoints(sess, pts, dim, box)) return *h;
        // Inseparable: undersample the majority label, dropping every second
        // point of that class in stable order.
        size_t pos = size_t(std::count_if(pts.begin(), pts.end(),
                                          [](const auto& pl) { return pl.second > 0; }));
        int majority = 2 * pos >= pts.size() ? 1 : -1;
        std::vector<std::pair<std::vector<Int>, int>> kept;
        size_t nth = 0;
        for (const auto& pl : pts) {
            if (pl.second == majority && nth++ % 2 == 1) continue;
            kept.push_back(pl);
        }
        if (kept.size() == pts.size()) throw Error("undersampling made no progress");
        pts = std::move(kept);
    }
}

// --- per-cell resolution -----------------------------------------------------

TemplateTreePtr resolveCase2(SmtSession& sess, ParamAlloc& alloc,
                             const std::vector<TransitionExample>& exs, uint32_t dim,
                             const SynthOptions& opt, uint32_t k, WfVariant variant,
                             const std::vector<Halfspace>& pool) {
    auto node = std::make_unique<TemplateTree>();
    node->leaf = makeTemplateTuple(alloc, dim, k);
    if (exs.empty()) return node;

    std::vector<Labeled> cs;
    for (size_t i = 0; i < exs.size(); ++i)
        cs.push_back({"c" + std::to_string(i),
                      wfFormula(node->leaf, node->leaf, exs[i].src, exs[i].dst, variant)});
    SmtResult r = sess.checkSat(cs, false);
    if (r.status == SmtStatus::Unknown)
        throw SolverCrashed("per-cell feasibility check returned unknown");
    if (r.status == SmtStatus::Sat) return node;

    Halfspace h = opt.strategy == QualifierStrategy::Eager
                      ? chooseQualifierEager(sess, alloc, exs, pool, dim, k, variant)
                      : chooseQualifierLazy(sess, exs, dim);
    std::vector<TransitionExample> geExs, ltExs;
    for (const auto& e : exs) {
        bool s = h.geSidePoint(e.src);
        bool d = h.geSidePoint(e.dst);
        if (s && d) geExs.push_back(e);
        else if (!s && !d) ltExs.push_back(e); // crossing examples drop out here
    }
    node->split = h;
    node->leaf.clear();
    node->ge = resolveCase2(sess, alloc, geExs, dim, opt, k, variant, pool);
    node->lt = resolveCase2(sess, alloc, ltExs, dim, opt, k, variant, pool);
    return node;
}

// --- dependency graph and cycles ---------------------------------------------

DepGraph dependencyGraph(const TemplateTree& tree, const std::vector<TransitionExample>& exs) {
    DepGraph g;
    tree.leaves(g.cells);
    std::map<const TemplateTree*, size_t> id;
    for (size_t i = 0; i < g.cells.size(); ++i) id[g.cells[i]] = i;
    std::map<std::pair<size_t, size_t>, size_t> at;
    for (size_t i = 0; i < exs.size(); ++i) {
        size_t s = id.at(tree.cellFor(exs[i].src));
        size_t d = id.at(tree.cellFor(exs[i].dst));
        if (s == d) continue;
        auto [it, fresh] = at.emplace(std::make_pair(s, d), g.edges.size());
        if (fresh) g.edges.push_back({s, d, {i}});
        else g.edges[it->second].examples.push_back(i);
    }
    return g;
}

std::optional<std::vector<size_t>> findImplicitCycle(const TemplateTree& tree,
                                                     const std::vector<TransitionExample>& exs,
                                                     const std::vector<size_t>& coreIdx) {
    std::vector<const TemplateTree*> cells;
    tree.leaves(cells);
    std::map<const TemplateTree*, int> id;
    for (size_t i = 0; i < cells.size(); ++i) id[cells[i]] = int(i);
    std::vector<std::vector<std::pair<int, size_t>>> adj(cells.size());
    for (size_t i : coreIdx) {
        if (i >= exs.size()) throw Error("unsat core names an unknown example");
        int s = id.at(tree.cellFor(exs[i].src));
        int d = id.at(tree.cellFor(exs[i].dst));
        if (s != d) adj[s].emplace_back(d, i);
    }

    std::vector<int> color(cells.size(), 0);
    std::vector<std::pair<int, size_t>> chain; // (edge source cell, example)
    std::optional<std::vector<size_t>> found;
    std::function<bool(int)> dfs = [&](int u) -> bool {
        color[u] = 1;
        for (auto [w, ei] : adj[u]) {
            if (color[w] == 1) {
                std::vector<size_t> cyc;
                size_t j = 0;
                while (j < chain.size() && chain[j].first != w) ++j;
                for (; j < chain.size(); ++j) cyc.push_back(chain[j].second);
                cyc.push_back(ei);
                found = std::move(cyc);
                return true;
            }
            if (color[w] == 0) {
                chain.emplace_back(u, ei);
                if (dfs(w)) return true;
                chain.pop_back();
            }
        }
        color[u] = 2;
        return false;
    };
    for (size_t i = 0; i < cells.size() && !found; ++i)
        if (color[i] == 0) dfs(int(i));
    return found;
}

// --- refinement ----------------------------------------------------------------

Halfspace refinementHalfspaceEager(const std::vector<Halfspace>& pool,
                                   const std::vector<Int>& a, const std::vector<Int>& b,
                                   const std::vector<TransitionExample>& cellExs) {
    const Halfspace* best = nullptr;
    size_t bestCrossing = 0;
    for (const auto& h : pool) {
        if (!separates(h, a, b)) continue;
        size_t crossing = size_t(std::count_if(
            cellExs.begin(), cellExs.end(),
            [&](const TransitionExample& e) { return separates(h, e.src, e.dst); }));
        if (!best || crossing < bestCrossing ||
            (crossing == bestCrossing && qualifierPreferred(h, *best))) {
            best = &h;
            bestCrossing = crossing;
        }
    }
    if (!best)
        throw NoSeparatingQualifier("no qualifier separates the cycle's entry and exit points");
    return *best;
}

Halfspace refinementHalfspaceLazy(SmtSession& sess, const std::vector<Int>& a,
                                  const std::vector<Int>& b,
                                  const std::vector<TransitionExample>& cellExs, uint32_t dim) {
    const VarId cVar = preVar(dim);
    auto margin = [&](const std::vector<Int>& p) {
        AffineExpr e;
        for (uint32_t i = 0; i < dim; ++i) e.addTerm(preVar(i), p[i]);
        e.addTerm(cVar, -1);
        return e;
    };
    std::vector<FormulaPtr> soft;
    for (const auto& e : cellExs) {
        TermPtr s = margin(e.src).toTerm();
        TermPtr d = margin(e.dst).toTerm();
        soft.push_back(fOr({fAnd({fGe(s, tConst(0)), fGe(d, tConst(0))}),
                            fAnd({fLe(s, tConst(-1)), fLe(d, tConst(-1))})}));
    }
    for (Int box = kBoxStart;; box *= 2) {
        std::vector<FormulaPtr> hard;
        for (uint32_t i = 0; i < dim; ++i) {
            hard.push_back(fGe(tVar(preVar(i)), tConst(-box)));
            hard.push_back(fLe(tVar(preVar(i)), tConst(box)));
        }
        hard.push_back(fGe(margin(a).toTerm(), tConst(0)));
        hard.push_back(fLe(margin(b).toTerm(), tConst(-1)));
        try {
            MaxSatResult r = sess.maxSat(hard, soft);
            if (!r.hasModel) throw DegenerateHyperplane("separation produced no model");
            AffineExpr h;
            for (uint32_t i = 0; i < dim; ++i) h.addTerm(preVar(i), lookupInt(r.model, preVar(i)));
            h.constant = -lookupInt(r.model, cVar);
            if (h.coeffs.empty()) throw DegenerateHyperplane("separator has no variable coefficients");
            return Halfspace::normalized(h);
        } catch (const HardUnsat&) {
            if (box >= kBoxLimit) throw;
        }
    }
}

void splitLeaf(TemplateTree& cell, const Halfspace& h, ParamAlloc& alloc, uint32_t dim,
               uint32_t k) {
    if (!cell.isLeaf()) throw Error("refinement must target a leaf cell");
    cell.split = h;
    cell.leaf.clear();
    cell.ge = std::make_unique<TemplateTree>();
    cell.ge->leaf = makeTemplateTuple(alloc, dim, k);
    cell.lt = std::make_unique<TemplateTree>();
    cell.lt->leaf = makeTemplateTuple(alloc, dim, k);
}

// --- objective -------------------------------------------------------------------

AffineExpr sumAbsParams(const TemplateTree& tree, ParamAlloc& alloc,
                        std::vector<FormulaPtr>& defsOut) {
    std::vector<const TemplateTree*> cells;
    tree.leaves(cells);
    AffineExpr obj;
    for (const TemplateTree* cell : cells) {
        for (const auto& tmpl : cell->leaf) {
            std::vector<VarId> params = tmpl.coeff;
            params.push_back(tmpl.constant);
            for (VarId p : params) {
                VarId bound = alloc.fresh();
                defsOut.push_back(fGe(tVar(bound), tVar(p)));
                defsOut.push_back(fGe(tVar(bound), tNeg(tVar(p))));
                obj.addTerm(bound, 1);
            }
        }
    }
    return obj;
}

RankFunction instantiate(const TemplateTree& tree, const Valuation& model, uint32_t dim) {
    std::function<std::unique_ptr<RankNode>(const TemplateTree&)> walk =
        [&](const TemplateTree& t) {
            auto n = std::make_unique<RankNode>();
            if (!t.isLeaf()) {
                n->split = t.split;
                n->ge = walk(*t.ge);
                n->lt = walk(*t.lt);
                return n;
            }
            for (const auto& tmpl : t.leaf) {
                AffineExpr e;
                for (size_t i = 0; i < tmpl.coeff.size(); ++i)
                    e.addTerm(preVar(uint32_t(i)), lookupInt(model, tmpl.coeff[i]));
                e.constant = lookupInt(model, tmpl.constant);
                n->tuple.push_back(std::move(e));
            }
            return n;
        };
    RankFunction fn;
    fn.root = walk(tree);
    fn.dim = dim;
    return fn;
}

// --- end-to-end ----------------------------------------------------------------

namespace {

// One refinement: pick the first cell along the cycle whose entry and exit
// points differ, cut between them, and re-template both halves.
void refineStep(SmtSession& sess, ParamAlloc& alloc, TemplateTree& tree,
                const std::vector<TransitionExample>& exs, const std::vector<size_t>& cycle,
                const SynthOptions& opt, uint32_t k, WfVariant variant, uint32_t dim,
                const std::vector<Halfspace>& pool) {
    for (size_t i = 0; i < cycle.size(); ++i) {
        const std::vector<Int>& entry = exs[cycle[i]].dst;
        const std::vector<Int>& exit = exs[cycle[(i + 1) % cycle.size()]].src;
        if (entry == exit) continue;
        TemplateTree* cell = tree.cellFor(entry);
        if (cell != tree.cellFor(exit)) throw Error("cycle step does not share a cell");
        std::vector<TransitionExample> cellExs;
        for (const auto& e : exs)
            if (tree.cellFor(e.src) == cell && tree.cellFor(e.dst) == cell)
                cellExs.push_back(e);
        Halfspace h = opt.strategy == QualifierStrategy::Eager
                          ? refinementHalfspaceEager(pool, entry, exit, cellExs)
                          : refinementHalfspaceLazy(sess, entry, exit, cellExs, dim);
        splitLeaf(*cell, h, alloc, dim, k);
        if (opt.debugChecks) {
            // Per-leaf feasibility must survive the cut: each child keeps a
            // subset of the parent's non-crossing examples over fresh params.
            for (const TemplateTree* child : {cell->ge.get(), cell->lt.get()}) {
                std::vector<Labeled> cs;
                size_t n = 0;
                for (const auto& e : cellExs)
                    if (tree.cellFor(e.src) == child && tree.cellFor(e.dst) == child)
                        cs.push_back({"d" + std::to_string(n++),
                                      wfFormula(child->leaf, child->leaf, e.src, e.dst, variant)});
                if (cs.empty()) continue;
                if (sess.checkSat(cs, false).status != SmtStatus::Sat)
                    throw Error("refinement broke per-leaf feasibility");
            }
        }
        return;
    }
    throw Error("implicit cycle without distinct entry and exit points");
}

} // namespace

SynthResult synthWf(const PredExamples& ex, uint32_t stateDim, const SynthOptions& opt) {
    if (stateDim == 0) throw Error("wf synthesis needs at least one state dimension");
    if (!ex.neg.empty())
        throw NegativeWfExample("well-founded predicates admit no negative examples");
    std::vector<TransitionExample> exs;
    for (const auto& row : ex.pos) {
        if (row.size() != 2 * size_t(stateDim)) throw Error("wf example arity mismatch");
        TransitionExample t;
        t.src.assign(row.begin(), row.begin() + stateDim);
        t.dst.assign(row.begin() + stateDim, row.end());
        exs.push_back(std::move(t));
    }

    if (auto cyc = detectExplicitCycle(exs)) return SynthUnsat{std::move(*cyc)};

    const size_t budget = collectEndpoints(exs).size();
    std::vector<Halfspace> pool;
    if (opt.strategy == QualifierStrategy::Eager)
        pool = generateQualifiers(collectEndpoints(exs), opt.family);

    std::unique_ptr<SmtSession> owned;
    if (!opt.session) owned = std::make_unique<SmtSession>(opt.smt);
    SmtSession& sess = opt.session ? *opt.session : *owned;
    ParamAlloc alloc;
    uint32_t k = opt.k;
    WfVariant variant = opt.variant;
    uint32_t restarts = 0;
    for (;;) {
        TemplateTreePtr tree = resolveCase2(sess, alloc, exs, stateDim, opt, k, variant, pool);
        uint32_t refinements = 0;
        bool fallback = false, escalate = false;
        for (;;) {
            std::vector<Labeled> constraints = getConstraints(*tree, exs, variant);
            std::vector<FormulaPtr> defs;
            AffineExpr objective = sumAbsParams(*tree, alloc, defs);
            MinimizeResult mr = sess.minimize(objective, defs, constraints);
            if (mr.status == SmtStatus::Unknown)
                throw SolverCrashed("parameter optimization returned unknown");
            if (mr.status == SmtStatus::Sat) {
                RankFunction fn = instantiate(*tree, mr.model, stateDim);
                for (const auto& e : exs)
                    if (!fn.holds(e.src, e.dst, variant))
                        throw Error("synthesized function misses a training example");
                SynthSuccess out;
                out.relation = relationFormula(fn, variant);
                out.fn = std::move(fn);
                out.variantUsed = variant;
                out.kUsed = k;
                out.refinements = refinements;
                out.strictRestarts = restarts;
                return out;
            }
            std::vector<size_t> coreIdx;
            for (const auto& label : mr.core)
                if (label.rfind("ex", 0) == 0) coreIdx.push_back(std::stoul(label.substr(2)));
            std::sort(coreIdx.begin(), coreIdx.end());
            auto cyc = findImplicitCycle(*tree, exs, coreIdx);
            if (!cyc) {
                // Only the degenerate descent can produce a cycle-free core.
                if (variant != WfVariant::Degenerate)
                    throw Error("unsatisfiable descent constraints without an implicit cycle");
                fallback = true;
                break;
            }
            if (refinements == budget) {
                // One refinement per distinct endpoint must suffice; past that
                // the tuple is too short (or an invariant broke at the cap).
                if (k >= opt.kCap)
                    throw Error("refinement budget exceeded at the tuple-length cap");
                escalate = true;
                break;
            }
            refineStep(sess, alloc, *tree, exs, *cyc, opt, k, variant, stateDim, pool);
            ++refinements;
        }
        if (fallback) {
            variant = WfVariant::Strict;
            ++restarts;
        } else if (escalate) {
            ++k;
            variant = opt.variant;
        }
    }
}

} // namespace seglex
