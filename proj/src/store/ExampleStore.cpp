#include "store/ExampleStore.h"

#include <algorithm>
#include <sstream>

#include "lia/Errors.h"

namespace seglex {

std::string printGroundApp(const GroundApp& a) {
    std::ostringstream out;
    out << a.pred.name << "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (i) out << ",";
        out << a.args[i];
    }
    out << ")";
    return out.str();
}

void checkPartition(const ExamplePartition& p) {
    for (const auto& [pred, ex] : p.byPred)
        for (const auto& v : ex.pos)
            if (ex.neg.count(v))
                throw Inseparable("point is both a positive and a negative example of " +
                                  pred.name);
}

namespace {

// order-insensitive dedup key
std::string clauseKey(ExampleClause c) {
    for (auto& group : c.positives) std::sort(group.begin(), group.end());
    std::sort(c.positives.begin(), c.positives.end());
    std::sort(c.negatives.begin(), c.negatives.end());
    std::ostringstream key;
    for (const auto& group : c.positives) {
        key << "[";
        for (const GroundApp& a : group) key << printGroundApp(a) << " ";
        key << "]";
    }
    key << "|";
    for (const GroundApp& a : c.negatives) key << printGroundApp(a) << " ";
    return key.str();
}

} // namespace

ExampleStore::ExampleStore(SmtConfig solver, std::set<std::string> wfPreds)
    : solver_(std::move(solver)), wfPreds_(std::move(wfPreds)) {}

uint32_t ExampleStore::appIndex(const GroundApp& a) {
    auto it = index_.find(a);
    if (it != index_.end()) return it->second;
    uint32_t idx = static_cast<uint32_t>(apps_.size());
    apps_.push_back(a);
    index_.emplace(a, idx);
    return idx;
}

void ExampleStore::addExample(ExampleClause c) {
    if (c.positives.empty() && c.negatives.empty())
        throw Error("example clause needs at least one literal");
    auto checkApp = [&](const GroundApp& a) {
        if (a.args.size() != a.pred.arity)
            throw Error("ground application arity mismatch on " + a.pred.name);
        auto [it, fresh] = arity_.emplace(a.pred.name, a.pred.arity);
        if (!fresh && it->second != a.pred.arity)
            throw Error("predicate used at two arities: " + a.pred.name);
    };
    for (const auto& group : c.positives) {
        if (group.empty()) throw Error("empty positive group in example clause");
        for (const GroundApp& a : group) checkApp(a);
    }
    for (const GroundApp& a : c.negatives) checkApp(a);

    if (!seen_.insert(clauseKey(c)).second) return;
    for (const auto& group : c.positives)
        for (const GroundApp& a : group) appIndex(a);
    for (const GroundApp& a : c.negatives) appIndex(a);
    clauses_.push_back(std::move(c));
}

void ExampleStore::rejectPartition(const std::vector<SignedLiteral>& core) {
    if (core.empty()) throw Error("cannot reject an empty core");
    ExampleClause block;
    for (const SignedLiteral& lit : core) {
        if (lit.positive)
            block.negatives.push_back(lit.app);
        else
            block.positives.push_back({lit.app});
    }
    addExample(std::move(block));
}

bool ExampleStore::satisfied(const ExampleClause& c,
                             const std::vector<int8_t>& assign) const {
    for (const auto& group : c.positives) {
        bool all = true;
        for (const GroundApp& a : group)
            if (assign[index_.at(a)] != 1) {
                all = false;
                break;
            }
        if (all) return true;
    }
    for (const GroundApp& a : c.negatives)
        if (assign[index_.at(a)] == 0) return true;
    return false;
}

std::variant<ExamplePartition, UnsatWitness> ExampleStore::extractPosNeg() {
    if (clauses_.empty()) return ExamplePartition{};
    if (!sess_) sess_ = std::make_unique<SmtSession>(solver_);

    std::vector<Labeled> query;
    query.reserve(clauses_.size());
    for (size_t i = 0; i < clauses_.size(); ++i) {
        const ExampleClause& c = clauses_[i];
        std::vector<FormulaPtr> parts;
        for (const auto& group : c.positives) {
            std::vector<FormulaPtr> conj;
            conj.reserve(group.size());
            for (const GroundApp& a : group)
                conj.push_back(fEq(tVar(preVar(index_.at(a))), tConst(1)));
            parts.push_back(fAnd(conj));
        }
        for (const GroundApp& a : c.negatives)
            parts.push_back(fNe(tVar(preVar(index_.at(a))), tConst(1)));
        query.push_back({"e" + std::to_string(i), fOr(parts)});
    }

    SmtResult r = sess_->checkSat(query, true);
    if (r.status == SmtStatus::Unsat) {
        UnsatWitness w;
        for (const std::string& label : r.core)
            w.coreClauses.push_back(std::stoul(label.substr(1)));
        std::sort(w.coreClauses.begin(), w.coreClauses.end());
        return w;
    }
    if (r.status != SmtStatus::Sat)
        throw SolverCrashed("boolean abstraction query came back unknown");

    std::vector<int8_t> assign(apps_.size(), 0);
    for (uint32_t i = 0; i < apps_.size(); ++i) {
        auto it = r.model.find(preVar(i));
        assign[i] = (it != r.model.end() && it->second == 1) ? 1 : 0;
    }

    // prefer positive examples of well-founded predicates where consistent
    for (uint32_t i = 0; i < apps_.size(); ++i) {
        if (assign[i] == 1 || !wfPreds_.count(apps_[i].pred.name)) continue;
        assign[i] = 1;
        bool ok = true;
        for (const ExampleClause& c : clauses_)
            if (!satisfied(c, assign)) {
                ok = false;
                break;
            }
        if (!ok) assign[i] = 0;
    }

    // discard literals no clause's satisfaction depends on
    for (uint32_t i = 0; i < apps_.size(); ++i) {
        int8_t saved = assign[i];
        assign[i] = -1;
        bool ok = true;
        for (const ExampleClause& c : clauses_)
            if (!satisfied(c, assign)) {
                ok = false;
                break;
            }
        if (!ok) assign[i] = saved;
    }
    for (const ExampleClause& c : clauses_)
        if (!satisfied(c, assign))
            throw Error("don't-care elimination unsatisfied a clause");

    ExamplePartition part;
    for (uint32_t i = 0; i < apps_.size(); ++i) {
        if (assign[i] < 0) continue;
        PredExamples& ex = part.byPred[apps_[i].pred];
        (assign[i] == 1 ? ex.pos : ex.neg).insert(apps_[i].args);
    }
    checkPartition(part);
    return part;
}

} // namespace seglex
