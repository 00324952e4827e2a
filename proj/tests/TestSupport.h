#pragma once

#include <cstdlib>
#include <string>

#include "smt/SmtSession.h"

namespace seglex::test {

// The ctest harness points SEGLEX_SMT_SOLVER at the bundled solver launcher;
// running a test binary by hand works as long as seglex-smt is on PATH.
inline SmtConfig solverConfig(std::string logic = "QF_LIA") {
    SmtConfig cfg;
    const char* cmd = std::getenv("SEGLEX_SMT_SOLVER");
    cfg.command = {cmd ? cmd : "seglex-smt"};
    cfg.logic = std::move(logic);
    return cfg;
}

} // namespace seglex::test
