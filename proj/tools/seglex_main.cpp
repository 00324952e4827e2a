// Command-line front end. Links only the public C API.
#include <seglex/seglex.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <limits.h>
#include <unistd.h>

namespace {

// Prefer the bundled solver sitting next to this binary, so a build tree
// works without any environment setup. Flags and SEGLEX_SMT_SOLVER win.
std::string bundledSolver() {
    char buf[PATH_MAX];
    ssize_t n = readlink("/proc/self/exe", buf, sizeof buf - 1);
    if (n <= 0) return "";
    buf[n] = '\0';
    std::string path(buf);
    size_t slash = path.rfind('/');
    if (slash == std::string::npos) return "";
    path = path.substr(0, slash + 1) + "seglex-smt";
    return access(path.c_str(), X_OK) == 0 ? path : "";
}

int fatal(int code, const std::string& msg) {
    std::fprintf(stderr, "seglex: %s\n", msg.c_str());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proves termination (YES) or non-termination (NO) of integer "
                 "transition systems, with a printable witness either way."};
    std::string mode = "both", strategy = "eager", qualifiers = "intervals",
                variant = "degenerate", solver, input;
    unsigned lexDim = 2, maxIters = 200, seed = 0, queryTimeoutMs = 10000;
    double timeoutSecs = 300.0;
    app.add_option("file", input, "transition-system file")->required();
    app.add_option("--mode", mode, "direction to attempt (default both)")
        ->check(CLI::IsMember({"term", "nonterm", "both"}));
    app.add_option("--strategy", strategy, "qualifier search (default eager)")
        ->check(CLI::IsMember({"eager", "lazy"}));
    app.add_option("--qualifiers", qualifiers, "qualifier family (default intervals)")
        ->check(CLI::IsMember({"intervals", "octagons"}));
    app.add_option("--lex-dim", lexDim, "initial lexicographic tuple length (default 2)")
        ->check(CLI::Range(1u, 16u));
    app.add_option("--variant", variant, "descent constraint form (default degenerate)")
        ->check(CLI::IsMember({"strict", "degenerate"}));
    app.add_option("--timeout", timeoutSecs, "wall-clock budget per direction, seconds (default 300)")
        ->check(CLI::PositiveNumber);
    app.add_option("--smt-solver", solver, "SMT-LIB2 solver command (default: bundled seglex-smt)");
    app.add_option("--seed", seed, "solver random seed (default 0)");
    app.add_option("--max-iters", maxIters, "refinement iterations per direction (default 200)")
        ->check(CLI::Range(1u, 1000000u));
    app.add_option("--query-timeout-ms", queryTimeoutMs, "per-SMT-query budget (default 10000)")
        ->check(CLI::Range(1u, 1000000000u));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    seglex_analyzer* a = seglex_analyzer_new();
    if (!a) return fatal(70, "out of memory");
    auto set = [&](const char* key, const std::string& value) {
        if (seglex_set_option(a, key, value.c_str()) != SEGLEX_OK) {
            fatal(64, seglex_last_error(a));
            std::exit(64);
        }
    };
    set("mode", mode);
    set("strategy", strategy);
    set("qualifiers", qualifiers);
    set("variant", variant);
    set("lex-dim", std::to_string(lexDim));
    set("max-iters", std::to_string(maxIters));
    set("seed", std::to_string(seed));
    set("query-timeout-ms", std::to_string(queryTimeoutMs));
    set("timeout-ms", std::to_string(static_cast<long>(timeoutSecs * 1000.0)));
    if (!solver.empty()) {
        set("smt-solver", solver);
    } else if (!std::getenv("SEGLEX_SMT_SOLVER")) {
        std::string bundled = bundledSolver();
        if (!bundled.empty()) set("smt-solver", bundled);
    }

    seglex_status st = seglex_load_file(a, input.c_str());
    if (st != SEGLEX_OK) {
        int rc = st == SEGLEX_ERR_PARSE ? 65 : 66;
        rc = fatal(rc, seglex_last_error(a));
        seglex_analyzer_free(a);
        return rc;
    }

    seglex_verdict verdict = SEGLEX_UNKNOWN;
    st = seglex_run(a, &verdict);
    if (st != SEGLEX_OK) {
        int rc = fatal(70, seglex_last_error(a));
        seglex_analyzer_free(a);
        return rc;
    }

    int rc = 2;
    switch (verdict) {
        case SEGLEX_YES:
            std::printf("YES\nranking function:\n  %s\n", seglex_witness(a));
            rc = 0;
            break;
        case SEGLEX_NO:
            std::printf("NO\nrecurrent set:\n  %s\n", seglex_witness(a));
            rc = 1;
            break;
        case SEGLEX_UNKNOWN:
            std::printf("UNKNOWN\n%s\n", seglex_detail(a));
            rc = 2;
            break;
        case SEGLEX_TIMEOUT:
            std::printf("TIMEOUT\n%s\n", seglex_detail(a));
            rc = 3;
            break;
    }
    seglex_analyzer_free(a);
    return rc;
}
