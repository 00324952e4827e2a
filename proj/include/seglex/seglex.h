#ifndef SEGLEX_H
#define SEGLEX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Termination analyzer for integer transition systems. Feed it a program in
 * the transition-system format, run it, and read back a verdict plus a
 * printable witness: a piecewise lexicographic ranking function for YES, a
 * recurrent set for NO.
 *
 * Every call returns a status code; on failure seglex_last_error holds a
 * message until the next call on the same handle. Handles are not
 * thread-safe; use one per thread. */

typedef enum seglex_status {
    SEGLEX_OK = 0,
    SEGLEX_ERR_ARGUMENT = 1, /* bad option key/value or unreadable path */
    SEGLEX_ERR_PARSE = 2,    /* input rejected; message has line:column */
    SEGLEX_ERR_STATE = 3,    /* call out of order, e.g. run before load */
    SEGLEX_ERR_INTERNAL = 4  /* engine failure */
} seglex_status;

typedef enum seglex_verdict {
    SEGLEX_YES = 0,     /* terminates on all inputs */
    SEGLEX_NO = 1,      /* diverges; a recurrent set was validated */
    SEGLEX_UNKNOWN = 2, /* analysis gave up */
    SEGLEX_TIMEOUT = 3  /* iteration or wall-clock budget exhausted */
} seglex_verdict;

typedef struct seglex_analyzer seglex_analyzer;

/* Library version, e.g. "0.1.0". Static storage; never freed. */
const char* seglex_version(void);

/* Fresh analyzer with default options. NULL only on allocation failure. */
seglex_analyzer* seglex_analyzer_new(void);

void seglex_analyzer_free(seglex_analyzer* a);

/* Options (all optional; set before seglex_run):
 *   mode              term | nonterm | both          (default both)
 *   strategy          eager | lazy                   (default eager)
 *   qualifiers        intervals | octagons           (default intervals)
 *   variant           strict | degenerate            (default degenerate)
 *   lex-dim           initial lexicographic tuple length, >= 1 (default 2)
 *   max-iters         refinement iterations per direction (default 200)
 *   timeout-ms        wall-clock budget per direction (default 300000)
 *   query-timeout-ms  per-SMT-query budget (default 10000)
 *   seed              SMT random seed (default 0)
 *   smt-solver        solver command line, whitespace-split; overrides the
 *                     SEGLEX_SMT_SOLVER environment variable and the
 *                     built-in default "seglex-smt" */
seglex_status seglex_set_option(seglex_analyzer* a, const char* key, const char* value);

/* Load a program, replacing any previous one. */
seglex_status seglex_load_file(seglex_analyzer* a, const char* path);
seglex_status seglex_load_string(seglex_analyzer* a, const char* text);

/* Run the analysis; blocks until a verdict. */
seglex_status seglex_run(seglex_analyzer* a, seglex_verdict* out);

/* After a successful run: witness text for YES/NO verdicts ("" otherwise),
 * a per-direction outcome summary, and the refinement iterations the
 * deciding direction used. Strings live until the next call on a. */
const char* seglex_witness(const seglex_analyzer* a);
const char* seglex_detail(const seglex_analyzer* a);
uint32_t seglex_iterations(const seglex_analyzer* a);

/* Message for the most recent failed call on a ("" after success). */
const char* seglex_last_error(const seglex_analyzer* a);

#ifdef __cplusplus
}
#endif

#endif /* SEGLEX_H */
