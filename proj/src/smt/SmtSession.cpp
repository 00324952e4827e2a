#include "SmtSession.h"

#include "../lia/Errors.h"
#include "SmtLib.h"

namespace seglex {

namespace {

// Session-internal helper variables (maxSat indicators etc.) live far above
// any program or template variable index.
constexpr uint32_t kInternalBase = 1u << 30;

bool skippableLine(const std::string& line) {
    if (line.empty()) return true;
    if (line == "unsupported" || line == "success") return true;
    if (line[0] == ';') return true;
    // benign option complaints from solvers lacking a seed/timeout knob
    if (line.rfind("(error", 0) == 0 &&
        (line.find("unknown option") != std::string::npos ||
         line.find("unsupported option") != std::string::npos ||
         line.find("not recognized") != std::string::npos))
        return true;
    return false;
}

int parenDelta(const std::string& line) {
    int d = 0;
    bool inStr = false;
    for (char c : line) {
        if (inStr) {
            if (c == '"') inStr = false;
        } else if (c == '"') {
            inStr = true;
        } else if (c == ';') {
            break;
        } else if (c == '(') {
            ++d;
        } else if (c == ')') {
            --d;
        }
    }
    return d;
}

} // namespace

std::string smtDeclarations(const std::set<VarId>& vars) {
    std::string s;
    for (auto v : vars) s += "(declare-const " + smtSymbol(v) + " Int)\n";
    return s;
}

SmtSession::SmtSession(SmtConfig cfg) : cfg_(std::move(cfg)) {}
SmtSession::~SmtSession() = default;

void SmtSession::checkCancelled() const {
    if (cfg_.cancel && cfg_.cancel->load(std::memory_order_relaxed)) throw Cancelled();
}

void SmtSession::ensureProcess() {
    if (proc_ && proc_->alive()) return;
    proc_ = std::make_unique<SolverProcess>(cfg_.command);
    std::string pro;
    pro += "(set-option :print-success false)\n";
    pro += "(set-option :produce-models true)\n";
    pro += "(set-option :produce-unsat-cores true)\n";
    pro += "(set-option :random-seed " + std::to_string(cfg_.seed) + ")\n";
    pro += "(set-option :smt.random-seed " + std::to_string(cfg_.seed) + ")\n";
    if (cfg_.queryTimeoutMs > 0)
        pro += "(set-option :timeout " + std::to_string(cfg_.queryTimeoutMs) + ")\n";
    pro += "(set-logic " + cfg_.logic + ")\n";
    proc_->writeAll(pro);
}

SmtSession::RawResult SmtSession::rawQuery(const std::string& decls, const std::string& asserts,
                                           const std::set<VarId>& vars, bool wantCore) {
    checkCancelled();
    ensureProcess();
    ++queries_;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(cfg_.queryTimeoutMs > 0 ? cfg_.queryTimeoutMs + 2000
                                                                      : 3600 * 1000);
    auto timeoutResult = [&]() -> RawResult {
        proc_->kill();
        proc_.reset();
        return {SmtStatus::Unknown, {}, {}, "timeout"};
    };

    RawResult res{SmtStatus::Unknown, {}, {}, ""};
    try {
        proc_->writeAll("(push 1)\n" + decls + asserts + "(check-sat)\n");
        std::string status;
        for (;;) {
            auto line = proc_->readLine(deadline);
            if (!line) return timeoutResult();
            if (skippableLine(*line)) continue;
            status = *line;
            break;
        }
        if (status.rfind("(error", 0) == 0) throw SolverCrashed("solver error: " + status);
        if (status == "sat") {
            res.status = SmtStatus::Sat;
            proc_->writeAll("(get-model)\n");
            std::string text;
            int depth = 0;
            bool seen = false;
            for (;;) {
                auto line = proc_->readLine(deadline);
                if (!line) return timeoutResult();
                if (!seen && skippableLine(*line)) continue;
                text += *line + "\n";
                depth += parenDelta(*line);
                seen = true;
                if (depth <= 0) break;
            }
            res.model = parseModel(parseSexp(text));
            for (auto v : vars) res.model.try_emplace(v, 0);
        } else if (status == "unsat") {
            res.status = SmtStatus::Unsat;
            if (wantCore) {
                proc_->writeAll("(get-unsat-core)\n");
                std::string text;
                int depth = 0;
                bool seen = false;
                for (;;) {
                    auto line = proc_->readLine(deadline);
                    if (!line) return timeoutResult();
                    if (!seen && skippableLine(*line)) continue;
                    text += *line + "\n";
                    depth += parenDelta(*line);
                    seen = true;
                    if (depth <= 0) break;
                }
                res.core = parseCore(parseSexp(text));
            }
        } else {
            res.status = SmtStatus::Unknown;
            res.info = status;
        }
        proc_->writeAll("(pop 1)\n");
    } catch (const SolverCrashed&) {
        checkCancelled();
        if (interrupted_.load()) throw Cancelled();
        throw;
    }
    return res;
}

SmtResult SmtSession::checkSat(const std::vector<Labeled>& constraints, bool wantCore) {
    std::set<VarId> vars;
    std::string asserts;
    for (auto& c : constraints) {
        collectFormulaVars(c.formula, vars);
        if (wantCore && !c.label.empty())
            asserts += "(assert (! " + smtFormula(c.formula) + " :named " + c.label + "))\n";
        else
            asserts += "(assert " + smtFormula(c.formula) + ")\n";
    }
    auto raw = rawQuery(smtDeclarations(vars), asserts, vars, wantCore);
    return {raw.status, std::move(raw.model), std::move(raw.core), std::move(raw.info)};
}

MaxSatResult SmtSession::maxSat(const std::vector<FormulaPtr>& hard,
                                const std::vector<FormulaPtr>& soft) {
    std::vector<Labeled> hardL;
    hardL.reserve(hard.size());
    for (auto& h : hard) hardL.push_back({"", h});
    auto hardRes = checkSat(hardL, false);
    if (hardRes.status == SmtStatus::Unsat) throw HardUnsat("max_sat hard constraints unsatisfiable");
    if (hardRes.status == SmtStatus::Unknown)
        throw SolverCrashed("max_sat hard check returned unknown: " + hardRes.info);
    if (soft.empty()) return {0, false, {}};

    auto stripInternal = [](Valuation m) {
        for (auto it = m.begin(); it != m.end();)
            it = it->first.index >= kInternalBase ? m.erase(it) : std::next(it);
        return m;
    };

    // all soft at once first
    {
        std::vector<Labeled> all = hardL;
        for (auto& s : soft) all.push_back({"", s});
        auto r = checkSat(all, false);
        if (r.status == SmtStatus::Sat) return {soft.size(), true, stripInternal(r.model)};
        if (r.status == SmtStatus::Unknown)
            throw SolverCrashed("max_sat query returned unknown: " + r.info);
    }

    // indicators: b_i in {0,1}, b_i = 1 forces soft_i; descend on sum b_i >= k
    std::vector<Labeled> base = hardL;
    AffineExpr sum;
    for (size_t i = 0; i < soft.size(); ++i) {
        TermPtr b = tVar(preVar(kInternalBase + static_cast<uint32_t>(i)));
        base.push_back({"", fGe(b, tConst(0))});
        base.push_back({"", fGe(tConst(1), b)});
        base.push_back({"", fOr({fEq(b, tConst(0)), soft[i]})});
        sum.addTerm(preVar(kInternalBase + static_cast<uint32_t>(i)), 1);
    }
    for (size_t k = soft.size() - 1; k >= 1; --k) {
        std::vector<Labeled> q = base;
        q.push_back({"", fGe(sum.toTerm(), tConst(static_cast<long>(k)))});
        auto r = checkSat(q, false);
        if (r.status == SmtStatus::Sat) return {k, true, stripInternal(r.model)};
        if (r.status == SmtStatus::Unknown)
            throw SolverCrashed("max_sat query returned unknown: " + r.info);
    }
    return {0, true, stripInternal(hardRes.model)};
}

MinimizeResult SmtSession::minimize(const AffineExpr& objective, const std::vector<FormulaPtr>& defs,
                                    const std::vector<Labeled>& constraints) {
    std::vector<Labeled> all = constraints;
    for (auto& d : defs) all.push_back({"", d});
    auto first = checkSat(all, true);
    if (first.status != SmtStatus::Sat)
        return {first.status, {}, 0, std::move(first.core), std::move(first.info)};

    Valuation best = first.model;
    Int hi = objective.eval(best);

    auto tryBound = [&](const Int& bound) {
        std::vector<Labeled> q = all;
        q.push_back({"", fGe(tConst(bound), objective.toTerm())});
        return checkSat(q, false);
    };

    // bracket below, then bisect to the exact optimum
    Int lo;
    {
        Int step = 1;
        for (int iter = 0;; ++iter) {
            if (iter > 80) throw Error("minimize: objective appears unbounded below");
            Int bound = hi - step;
            auto r = tryBound(bound);
            if (r.status == SmtStatus::Unknown)
                throw SolverCrashed("minimize query returned unknown: " + r.info);
            if (r.status == SmtStatus::Unsat) {
                lo = bound + 1;
                break;
            }
            best = r.model;
            Int v = objective.eval(best);
            if (v < hi) hi = v;
            step *= 2;
        }
    }
    while (lo < hi) {
        Int mid = floorDiv(lo + hi, 2);
        auto r = tryBound(mid);
        if (r.status == SmtStatus::Unknown)
            throw SolverCrashed("minimize query returned unknown: " + r.info);
        if (r.status == SmtStatus::Sat) {
            best = r.model;
            Int v = objective.eval(best);
            hi = v < mid ? v : mid;
        } else {
            lo = mid + 1;
        }
    }
    return {SmtStatus::Sat, std::move(best), hi, {}, ""};
}

void SmtSession::interrupt() {
    interrupted_.store(true);
    if (proc_) proc_->kill();
}

} // namespace seglex
