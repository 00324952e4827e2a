#include "seglex/seglex.h"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "cegis/Analyzer.h"
#include "frontend/T2Parser.h"
#include "lia/Errors.h"

using namespace seglex;

namespace {

std::vector<std::string> splitCommand(const std::string& line) {
    std::vector<std::string> argv;
    std::istringstream in(line);
    std::string word;
    while (in >> word) argv.push_back(word);
    return argv;
}

std::vector<std::string> defaultSolver() {
    if (const char* env = std::getenv("SEGLEX_SMT_SOLVER")) {
        std::vector<std::string> argv = splitCommand(env);
        if (!argv.empty()) return argv;
    }
    return {"seglex-smt"};
}

} // namespace

struct seglex_analyzer {
    AnalyzerOptions opt;
    std::optional<TransitionSystem> ts;
    std::string witness, detail, error;
    uint32_t iterations{0};

    seglex_status fail(seglex_status s, std::string msg) {
        error = std::move(msg);
        return s;
    }
    seglex_status ok() {
        error.clear();
        return SEGLEX_OK;
    }
};

extern "C" {

const char* seglex_version(void) { return "0.1.0"; }

seglex_analyzer* seglex_analyzer_new(void) {
    auto* a = new (std::nothrow) seglex_analyzer;
    if (a) a->opt.solverCommand = defaultSolver();
    return a;
}

void seglex_analyzer_free(seglex_analyzer* a) { delete a; }

seglex_status seglex_set_option(seglex_analyzer* a, const char* key, const char* value) {
    if (!a) return SEGLEX_ERR_ARGUMENT;
    if (!key || !value) return a->fail(SEGLEX_ERR_ARGUMENT, "null option key or value");
    const std::string k = key, v = value;
    auto badValue = [&] {
        return a->fail(SEGLEX_ERR_ARGUMENT, "bad value for option " + k + ": " + v);
    };
    auto parseCount = [&](long min, long max, long& out) {
        char* end = nullptr;
        long n = std::strtol(v.c_str(), &end, 10);
        if (!end || *end != '\0' || v.empty() || n < min || n > max) return false;
        out = n;
        return true;
    };
    long n = 0;
    if (k == "mode") {
        if (v == "term") a->opt.mode = AnalysisMode::Termination;
        else if (v == "nonterm") a->opt.mode = AnalysisMode::Nontermination;
        else if (v == "both") a->opt.mode = AnalysisMode::Both;
        else return badValue();
    } else if (k == "strategy") {
        if (v == "eager") a->opt.strategy = QualifierStrategy::Eager;
        else if (v == "lazy") a->opt.strategy = QualifierStrategy::Lazy;
        else return badValue();
    } else if (k == "qualifiers") {
        if (v == "intervals") a->opt.family = QualifierFamily::Intervals;
        else if (v == "octagons") a->opt.family = QualifierFamily::Octagons;
        else return badValue();
    } else if (k == "variant") {
        if (v == "strict") a->opt.variant = WfVariant::Strict;
        else if (v == "degenerate") a->opt.variant = WfVariant::Degenerate;
        else return badValue();
    } else if (k == "lex-dim") {
        if (!parseCount(1, 16, n)) return badValue();
        a->opt.k = static_cast<uint32_t>(n - 1);
        if (a->opt.kCap < a->opt.k) a->opt.kCap = a->opt.k;
    } else if (k == "max-iters") {
        if (!parseCount(1, 1000000, n)) return badValue();
        a->opt.maxIters = static_cast<uint32_t>(n);
    } else if (k == "timeout-ms") {
        if (!parseCount(1, 1000000000L, n)) return badValue();
        a->opt.timeout = std::chrono::milliseconds(n);
    } else if (k == "query-timeout-ms") {
        if (!parseCount(1, 1000000000L, n)) return badValue();
        a->opt.queryTimeoutMs = static_cast<int>(n);
    } else if (k == "seed") {
        if (!parseCount(0, 4294967295L, n)) return badValue();
        a->opt.seed = static_cast<unsigned>(n);
    } else if (k == "smt-solver") {
        std::vector<std::string> argv = splitCommand(v);
        if (argv.empty()) return badValue();
        a->opt.solverCommand = std::move(argv);
    } else {
        return a->fail(SEGLEX_ERR_ARGUMENT, "unknown option key: " + k);
    }
    return a->ok();
}

static seglex_status loadText(seglex_analyzer* a, const std::string& text) {
    try {
        a->ts = parseT2(text);
        a->witness.clear();
        a->detail.clear();
        a->iterations = 0;
        return a->ok();
    } catch (const ParseError& e) {
        a->ts.reset();
        return a->fail(SEGLEX_ERR_PARSE, e.what());
    } catch (const Error& e) {
        a->ts.reset();
        return a->fail(SEGLEX_ERR_INTERNAL, e.what());
    }
}

seglex_status seglex_load_file(seglex_analyzer* a, const char* path) {
    if (!a) return SEGLEX_ERR_ARGUMENT;
    if (!path) return a->fail(SEGLEX_ERR_ARGUMENT, "null path");
    std::ifstream in(path);
    if (!in) return a->fail(SEGLEX_ERR_ARGUMENT, std::string("cannot read ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return loadText(a, buf.str());
}

seglex_status seglex_load_string(seglex_analyzer* a, const char* text) {
    if (!a) return SEGLEX_ERR_ARGUMENT;
    if (!text) return a->fail(SEGLEX_ERR_ARGUMENT, "null program text");
    return loadText(a, text);
}

seglex_status seglex_run(seglex_analyzer* a, seglex_verdict* out) {
    if (!a) return SEGLEX_ERR_ARGUMENT;
    if (!out) return a->fail(SEGLEX_ERR_ARGUMENT, "null verdict output");
    if (!a->ts) return a->fail(SEGLEX_ERR_STATE, "no program loaded");
    try {
        AnalysisReport rep = analyze(*a->ts, a->opt);
        a->witness = rep.witness;
        a->detail = rep.detail;
        a->iterations = rep.iterations;
        switch (rep.verdict) {
            case Verdict::Yes: *out = SEGLEX_YES; break;
            case Verdict::No: *out = SEGLEX_NO; break;
            case Verdict::Unknown: *out = SEGLEX_UNKNOWN; break;
            case Verdict::Timeout: *out = SEGLEX_TIMEOUT; break;
        }
        return a->ok();
    } catch (const std::exception& e) {
        return a->fail(SEGLEX_ERR_INTERNAL, e.what());
    }
}

const char* seglex_witness(const seglex_analyzer* a) { return a ? a->witness.c_str() : ""; }

const char* seglex_detail(const seglex_analyzer* a) { return a ? a->detail.c_str() : ""; }

uint32_t seglex_iterations(const seglex_analyzer* a) { return a ? a->iterations : 0; }

const char* seglex_last_error(const seglex_analyzer* a) { return a ? a->error.c_str() : ""; }

} // extern "C"
