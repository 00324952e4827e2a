#pragma once

#include "cegis/Engine.h"
#include "frontend/TransitionSystem.h"

namespace seglex {

enum class AnalysisMode { Termination, Nontermination, Both };
enum class Verdict { Yes, No, Unknown, Timeout };

// "YES" / "NO" / "UNKNOWN" / "TIMEOUT"
std::string verdictToken(Verdict v);

struct AnalyzerOptions {
    std::vector<std::string> solverCommand{"seglex-smt"};
    AnalysisMode mode{AnalysisMode::Both};
    uint32_t k{1};
    uint32_t kCap{3};
    WfVariant variant{WfVariant::Degenerate};
    QualifierStrategy strategy{QualifierStrategy::Eager};
    QualifierFamily family{QualifierFamily::Intervals};
    uint32_t maxIters{200};
    std::chrono::milliseconds timeout{std::chrono::milliseconds{300000}};
    int queryTimeoutMs{10000};
    unsigned seed{0};
};

struct AnalysisReport {
    Verdict verdict{Verdict::Unknown};
    std::string witness; // ranking function (Yes) or recurrent set (No), one line
    std::string detail;  // per-direction outcome summary, one line each
    uint32_t iterations{0};
    std::optional<CandidateSolution> solution; // the validated definitions, if any
};

// Decides termination of the system: Yes with a ranking-function witness,
// No with a recurrent-set witness, otherwise Unknown or Timeout. Both-mode
// runs the two directions concurrently; an accepted solution cancels the
// sibling. A direction's refutation (its example set became contradictory)
// only retires that direction: it proves no witness of that shape exists,
// not the opposite verdict, so without a winner the verdict is Unknown.
AnalysisReport analyze(const TransitionSystem& ts, const AnalyzerOptions& opt);

} // namespace seglex
