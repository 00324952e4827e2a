#pragma once

#include <atomic>
#include <memory>

#include "../lia/AffineExpr.h"
#include "SolverProcess.h"

namespace seglex {

enum class SmtStatus { Sat, Unsat, Unknown };

struct Labeled {
    std::string label;
    FormulaPtr formula;
};

struct SmtResult {
    SmtStatus status{SmtStatus::Unknown};
    Valuation model;               // Sat: total over the query's free variables
    std::vector<std::string> core; // Unsat: labels, when cores were requested
    std::string info;
};

struct MaxSatResult {
    size_t count{0};
    bool hasModel{false};
    Valuation model;
};

struct MinimizeResult {
    SmtStatus status{SmtStatus::Unknown};
    Valuation model;
    Int objective{0};
    std::vector<std::string> core;
    std::string info;
};

struct SmtConfig {
    std::vector<std::string> command; // argv of the solver executable
    std::string logic{"QF_LIA"};
    int queryTimeoutMs{10000};
    unsigned seed{0};
    std::atomic<bool>* cancel{nullptr};
};

// One solver child reused across queries; every query is wrapped in
// (push 1)...(pop 1) with its own declarations, so a respawn after a timeout
// or crash loses nothing.
class SmtSession {
  public:
    explicit SmtSession(SmtConfig cfg);
    ~SmtSession();

    SmtResult checkSat(const std::vector<Labeled>& constraints, bool wantCore);

    // Maximum number of simultaneously satisfiable soft constraints subject to
    // hard ones (descending cardinality search over 0/1 indicators).
    // Throws HardUnsat when the hard part is contradictory.
    MaxSatResult maxSat(const std::vector<FormulaPtr>& hard, const std::vector<FormulaPtr>& soft);

    // Exact minimum of the objective subject to labeled constraints plus
    // unlabeled side definitions (bisection between unsat and feasible bounds).
    // Unsat reports a core over the labeled constraints only.
    MinimizeResult minimize(const AffineExpr& objective, const std::vector<FormulaPtr>& defs,
                            const std::vector<Labeled>& constraints);

    // Kills the child; safe from another thread. The in-flight query surfaces
    // as Cancelled when a cancel flag is set, SolverCrashed otherwise.
    void interrupt();

    size_t queriesIssued() const { return queries_; }

  private:
    struct RawResult {
        SmtStatus status;
        Valuation model;
        std::vector<std::string> core;
        std::string info;
    };
    RawResult rawQuery(const std::string& decls, const std::string& asserts,
                       const std::set<VarId>& vars, bool wantCore);
    void ensureProcess();
    void checkCancelled() const;

    SmtConfig cfg_;
    std::unique_ptr<SolverProcess> proc_;
    size_t queries_{0};
    std::atomic<bool> interrupted_{false};
};

// Builds the declaration and assertion text for a set of constraints.
std::string smtDeclarations(const std::set<VarId>& vars);

} // namespace seglex
