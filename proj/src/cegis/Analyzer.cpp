#include "cegis/Analyzer.h"

#include <thread>

namespace seglex {

std::string verdictToken(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "YES";
        case Verdict::No: return "NO";
        case Verdict::Unknown: return "UNKNOWN";
        case Verdict::Timeout: return "TIMEOUT";
    }
    return "UNKNOWN";
}

namespace {

EngineConfig makeConfig(const AnalyzerOptions& opt, const TransitionSystem& ts,
                        std::atomic<bool>* cancel) {
    EngineConfig cfg;
    cfg.solver.command = opt.solverCommand;
    cfg.solver.queryTimeoutMs = opt.queryTimeoutMs;
    cfg.solver.seed = opt.seed;
    cfg.solver.cancel = cancel;
    cfg.k = opt.k;
    cfg.kCap = opt.kCap;
    cfg.variant = opt.variant;
    cfg.strategy = opt.strategy;
    cfg.family = opt.family;
    cfg.maxIters = opt.maxIters;
    cfg.timeout = opt.timeout;
    cfg.cancel = cancel;
    // Predicates range over the state twice (pre then post); name the second
    // copy with the primed spellings.
    const uint32_t dim = ts.numVars() + 1;
    cfg.namer = [ts, dim](VarId v) {
        if (v.space == VarSpace::Pre && v.index >= dim)
            return ts.varName({VarSpace::Post, v.index - dim});
        return ts.varName(v);
    };
    return cfg;
}

std::string describe(const std::string& direction, const EngineResult& r) {
    if (const auto* s = std::get_if<EngineSolution>(&r))
        return direction + ": witness accepted after " + std::to_string(s->iterations) +
               " iterations";
    if (std::holds_alternative<EngineUnsat>(r))
        return direction + ": no witness of this shape exists (example set contradictory)";
    if (const auto* u = std::get_if<EngineUnknown>(&r))
        return direction + ": gave up (" + u->reason + ")";
    const auto& t = std::get<EngineTimeout>(r);
    return direction + ": budget exhausted after " + std::to_string(t.iterations) +
           " iterations";
}

struct DirectionOutcome {
    EngineResult result{EngineUnknown{"not run"}};
    std::string witnessPred; // key into EngineSolution::witness
};

void fillFromSolution(AnalysisReport& rep, DirectionOutcome& d, Verdict verdict) {
    auto& s = std::get<EngineSolution>(d.result);
    rep.verdict = verdict;
    rep.witness = s.witness.at(d.witnessPred);
    rep.iterations = s.iterations;
    rep.solution = std::move(s.defs);
}

} // namespace

AnalysisReport analyze(const TransitionSystem& ts, const AnalyzerOptions& opt) {
    auto [iota, tau] = toInitAndTransition(ts);
    const std::vector<VarId> vars = systemVars(ts);

    AnalysisReport rep;
    if (opt.mode == AnalysisMode::Termination || opt.mode == AnalysisMode::Nontermination) {
        const bool term = opt.mode == AnalysisMode::Termination;
        DirectionOutcome d;
        d.witnessPred = "R";
        Pcsp p = term ? encodeTermination(iota, tau, vars)
                      : encodeNontermination(iota, tau, vars);
        d.result = solve(p, makeConfig(opt, ts, nullptr));
        rep.detail = describe(term ? "termination" : "non-termination", d.result);
        if (std::holds_alternative<EngineSolution>(d.result)) {
            fillFromSolution(rep, d, term ? Verdict::Yes : Verdict::No);
        } else if (std::holds_alternative<EngineTimeout>(d.result)) {
            rep.verdict = Verdict::Timeout;
            rep.iterations = std::get<EngineTimeout>(d.result).iterations;
        } else {
            rep.verdict = Verdict::Unknown;
        }
        return rep;
    }

    // Race both directions; a validated witness on either side decides the
    // verdict, so it cancels the sibling. Anything short of a witness leaves
    // the sibling running.
    std::atomic<bool> cancelTerm{false}, cancelNon{false};
    DirectionOutcome term, non;
    term.witnessPred = "R";
    non.witnessPred = "R";
    Pcsp termP = encodeTermination(iota, tau, vars);
    Pcsp nonP = encodeNontermination(iota, tau, vars);
    EngineConfig termCfg = makeConfig(opt, ts, &cancelTerm);
    EngineConfig nonCfg = makeConfig(opt, ts, &cancelNon);
    std::thread tt([&] {
        term.result = solve(termP, termCfg);
        if (std::holds_alternative<EngineSolution>(term.result)) cancelNon.store(true);
    });
    std::thread tn([&] {
        non.result = solve(nonP, nonCfg);
        if (std::holds_alternative<EngineSolution>(non.result)) cancelTerm.store(true);
    });
    tt.join();
    tn.join();

    rep.detail = describe("termination", term.result) + "\n" +
                 describe("non-termination", non.result);
    if (std::holds_alternative<EngineSolution>(term.result)) {
        fillFromSolution(rep, term, Verdict::Yes);
    } else if (std::holds_alternative<EngineSolution>(non.result)) {
        fillFromSolution(rep, non, Verdict::No);
    } else if (std::holds_alternative<EngineTimeout>(term.result) ||
               std::holds_alternative<EngineTimeout>(non.result)) {
        rep.verdict = Verdict::Timeout;
    } else {
        rep.verdict = Verdict::Unknown;
    }
    return rep;
}

} // namespace seglex
