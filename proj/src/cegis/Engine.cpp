#include "cegis/Engine.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "lia/Errors.h"

namespace seglex {

namespace {

std::set<VarId> clauseTermVars(const Clause& c) {
    std::set<VarId> vars;
    collectFormulaVars(c.body, vars);
    auto scan = [&](const std::vector<PredApp>& apps) {
        for (const PredApp& a : apps)
            for (const TermPtr& t : a.args) collectTermVars(t, vars);
    };
    for (const auto& group : c.positives) scan(group);
    scan(c.negatives);
    return vars;
}

GroundApp groundApp(const PredApp& a, const Valuation& env) {
    GroundApp g;
    g.pred = a.pred;
    g.args.reserve(a.args.size());
    for (const TermPtr& t : a.args) g.args.push_back(evalTerm(t, env));
    return g;
}

} // namespace

ValidateResult validate(const Pcsp& p, const CandidateSolution& s, SmtSession& sess) {
    bool inconclusive = false;
    std::string why;
    for (size_t i = 0; i < p.clauses.size(); ++i) {
        const Clause& c = p.clauses[i];
        SmtResult r = sess.checkSat({{"c" + std::to_string(i), fNot(applyToClause(c, s))}}, false);
        if (r.status == SmtStatus::Unsat) continue;
        if (r.status == SmtStatus::Unknown) {
            if (!inconclusive)
                why = "validation of clause " + std::to_string(i) + " was inconclusive" +
                      (r.info.empty() ? "" : " (" + r.info + ")");
            inconclusive = true;
            continue;
        }
        // Countermodel found: ground every predicate application of the
        // violated clause. Variables the simplified query no longer mentions
        // are unconstrained; any value works, so they default to 0.
        Valuation env = r.model;
        for (VarId v : clauseTermVars(c)) env.emplace(v, 0);
        if (evalFormula(c.body, env)) throw Error("countermodel satisfies a clause body");
        ExampleClause ex;
        for (const auto& group : c.positives) {
            std::vector<GroundApp> g;
            g.reserve(group.size());
            for (const PredApp& a : group) g.push_back(groundApp(a, env));
            ex.positives.push_back(std::move(g));
        }
        for (const PredApp& a : c.negatives) ex.negatives.push_back(groundApp(a, env));
        return ex;
    }
    if (inconclusive) return ValidatorUnknown{why};
    return ValidatorAccepted{};
}

bool exampleClauseHolds(const ExampleClause& c, const CandidateSolution& s) {
    auto appTrue = [&](const GroundApp& a) {
        auto it = s.defs.find(a.pred.name);
        if (it == s.defs.end()) throw MissingPredicate("no definition for " + a.pred.name);
        std::vector<TermPtr> args;
        args.reserve(a.args.size());
        for (const Int& v : a.args) args.push_back(tConst(v));
        return evalFormula(applyDefined(it->second, args), {});
    };
    for (const auto& group : c.positives) {
        bool all = true;
        for (const GroundApp& a : group)
            if (!appTrue(a)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    for (const GroundApp& a : c.negatives)
        if (!appTrue(a)) return true;
    return false;
}

std::string renderRankWitness(const RankNode& n, const VarNamer& namer) {
    if (n.isLeaf()) {
        if (n.tuple.size() == 1) return n.tuple[0].print(namer);
        std::string s = "(";
        for (size_t i = 0; i < n.tuple.size(); ++i) {
            if (i) s += ", ";
            s += n.tuple[i].print(namer);
        }
        return s + ")";
    }
    auto wrap = [&](const RankNode& child) {
        std::string s = renderRankWitness(child, namer);
        return child.isLeaf() ? s : "(" + s + ")";
    };
    return "if " + n.split->print(namer) + " then " + wrap(*n.ge) + " else " + wrap(*n.lt);
}

std::string renderSetWitness(const BoolTree& t, const VarNamer& namer) {
    if (t.isLeaf()) return t.verdict ? "true" : "false";
    auto wrap = [&](const BoolTree& child) {
        std::string s = renderSetWitness(child, namer);
        return child.isLeaf() ? s : "(" + s + ")";
    };
    return "if " + t.test->print(namer) + " then " + wrap(*t.ge) + " else " + wrap(*t.lt);
}

namespace {

bool pcspIsLinear(const Pcsp& p) {
    for (const Clause& c : p.clauses) {
        if (!formulaIsLinear(c.body)) return false;
        auto scan = [&](const std::vector<PredApp>& apps) {
            for (const PredApp& a : apps)
                for (const TermPtr& t : a.args)
                    if (!termIsLinear(t)) return false;
            return true;
        };
        for (const auto& group : c.positives)
            if (!scan(group)) return false;
        if (!scan(c.negatives)) return false;
    }
    return true;
}

} // namespace

EngineResult solve(const Pcsp& p, const EngineConfig& cfg) {
    try {
        validatePcsp(p);
        if (cfg.maxIters == 0) return EngineUnknown{"iteration budget must be positive"};
        if (cfg.timeout.count() <= 0) return EngineUnknown{"timeout must be positive"};
        if (cfg.solver.queryTimeoutMs <= 0) return EngineUnknown{"query timeout must be positive"};

        std::set<std::string> wfNames;
        for (const PredVarId& w : p.wf) wfNames.insert(w.name);
        const std::vector<PredVarId> preds = collectPredVars(p);

        SmtConfig boolCfg = cfg.solver;
        boolCfg.logic = "QF_LIA";
        ExampleStore store(boolCfg, wfNames);

        // Candidate definitions stay linear, so only the clause bodies and
        // application arguments can force the validator into QF_NIA.
        SmtConfig valCfg = cfg.solver;
        valCfg.logic = pcspIsLinear(p) ? "QF_LIA" : "QF_NIA";
        SmtSession valSess(valCfg);

        SmtConfig synthCfg = cfg.solver;
        synthCfg.logic = "QF_LIA";
        std::unique_ptr<SmtSession> synthSess; // spawned on first wf synthesis

        // Synthesis is deterministic in the example sets, and most iterations
        // change only one predicate's examples; reuse the last candidate for
        // the untouched ones.
        struct CachedSynth {
            PredExamples ex;
            DefinedPred def;
            std::string text;
        };
        std::map<std::string, CachedSynth> memo;

        const auto deadline = std::chrono::steady_clock::now() + cfg.timeout;
        auto cancelled = [&] { return cfg.cancel && cfg.cancel->load(); };
        const bool trace = std::getenv("SEGLEX_ENGINE_TRACE") != nullptr;
        auto now = [] { return std::chrono::steady_clock::now(); };
        auto ms = [](auto from, auto to) {
            return std::chrono::duration_cast<std::chrono::milliseconds>(to - from).count();
        };

        for (uint32_t iter = 1; iter <= cfg.maxIters; ++iter) {
            if (cancelled()) return EngineUnknown{"cancelled"};
            if (std::chrono::steady_clock::now() >= deadline) return EngineTimeout{iter - 1};
            const auto t0 = now();

            auto extracted = store.extractPosNeg();
            if (auto* w = std::get_if<UnsatWitness>(&extracted)) {
                EngineUnsat u;
                u.coreClauses = w->coreClauses;
                for (size_t i : w->coreClauses) u.core.push_back(store.clauses()[i]);
                return u;
            }
            ExamplePartition part = std::get<ExamplePartition>(std::move(extracted));
            const auto t1 = now();

            CandidateSolution sigma;
            std::map<std::string, std::string> witness;
            bool rejected = false;
            for (const PredVarId& pv : preds) {
                PredExamples ex;
                auto it = part.byPred.find(pv);
                if (it != part.byPred.end()) ex = it->second;
                if (wfNames.count(pv.name)) {
                    // Blocking clauses pin some wf literals false. Each such
                    // pair belongs to a rejected example cycle, and no
                    // synthesized descent relation contains a cycle, so the
                    // blocks hold for whatever the synthesizer produces.
                    ex.neg.clear();
                    auto cached = memo.find(pv.name);
                    if (cached != memo.end() && cached->second.ex.pos == ex.pos) {
                        sigma.defs[pv.name] = cached->second.def;
                        witness[pv.name] = cached->second.text;
                        continue;
                    }
                    if (!synthSess) synthSess = std::make_unique<SmtSession>(synthCfg);
                    SynthOptions opt;
                    opt.smt = synthCfg;
                    opt.session = synthSess.get();
                    opt.k = cfg.k;
                    opt.kCap = cfg.kCap;
                    opt.variant = cfg.variant;
                    opt.strategy = cfg.strategy;
                    opt.family = cfg.family;
                    SynthResult res = synthWf(ex, pv.arity / 2, opt);
                    if (auto* u = std::get_if<SynthUnsat>(&res)) {
                        std::vector<SignedLiteral> core;
                        for (const TransitionExample& e : u->cycle) {
                            GroundApp app{pv, e.src};
                            app.args.insert(app.args.end(), e.dst.begin(), e.dst.end());
                            core.push_back({std::move(app), true});
                        }
                        store.rejectPartition(core);
                        rejected = true;
                        break;
                    }
                    SynthSuccess& s = std::get<SynthSuccess>(res);
                    witness[pv.name] = renderRankWitness(*s.fn.root, cfg.namer);
                    sigma.defs[pv.name] = DefinedPred{pv.arity, s.relation};
                    memo[pv.name] = {std::move(ex), sigma.defs[pv.name], witness[pv.name]};
                } else {
                    std::vector<std::vector<Int>> points(ex.pos.begin(), ex.pos.end());
                    points.insert(points.end(), ex.neg.begin(), ex.neg.end());
                    BoolTreePtr tree = synthInvariant(ex.pos, ex.neg,
                                                      generateQualifiers(points, cfg.family));
                    witness[pv.name] = renderSetWitness(*tree, cfg.namer);
                    sigma.defs[pv.name] = DefinedPred{pv.arity, boolTreeFormula(*tree)};
                }
            }
            const auto t2 = now();
            if (trace)
                std::fprintf(stderr, "[engine] iter=%u examples=%zu extract=%lldms synth=%lldms%s\n",
                             iter, store.size(), (long long)ms(t0, t1), (long long)ms(t1, t2),
                             rejected ? " rejected" : "");
            if (rejected) continue;

            ValidateResult v = validate(p, sigma, valSess);
            if (trace)
                std::fprintf(stderr, "[engine] iter=%u validate=%lldms\n", iter,
                             (long long)ms(t2, now()));
            if (std::holds_alternative<ValidatorAccepted>(v)) {
                SmtSession independent(valCfg);
                if (!std::holds_alternative<ValidatorAccepted>(validate(p, sigma, independent)))
                    return EngineUnknown{"revalidation rejected an accepted candidate"};
                EngineSolution out;
                out.defs = std::move(sigma);
                out.witness = std::move(witness);
                out.iterations = iter;
                out.examples = static_cast<uint32_t>(store.size());
                return out;
            }
            if (auto* u = std::get_if<ValidatorUnknown>(&v)) return EngineUnknown{u->reason};

            ExampleClause cex = std::get<ExampleClause>(std::move(v));
            if (cex.positives.empty() && cex.negatives.empty())
                return EngineUnknown{"a predicate-free clause is violated"};
            if (exampleClauseHolds(cex, sigma))
                return EngineUnknown{"validator produced a counterexample the candidate satisfies"};
            size_t before = store.size();
            store.addExample(std::move(cex));
            if (store.size() == before)
                return EngineUnknown{"validator repeated a known counterexample"};
        }
        return EngineTimeout{cfg.maxIters};
    } catch (const Cancelled&) {
        return EngineUnknown{"cancelled"};
    } catch (const Error& e) {
        return EngineUnknown{e.what()};
    }
}

} // namespace seglex
