#pragma once

#include <stdexcept>
#include <string>

namespace seglex {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line, int col)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
};

struct UndeclaredLocation : Error {
    using Error::Error;
};

// a candidate solution does not bind a predicate variable (or binds it at
// the wrong arity)
struct MissingPredicate : Error {
    using Error::Error;
};

struct SolverCrashed : Error {
    using Error::Error;
};

struct HardUnsat : Error {
    using Error::Error;
};

struct Cancelled : Error {
    Cancelled() : Error("cancelled") {}
};

struct DegenerateHyperplane : Error {
    using Error::Error;
};

struct Inseparable : Error {
    using Error::Error;
};

struct NoSeparatingQualifier : Error {
    using Error::Error;
};

struct NegativeWfExample : Error {
    using Error::Error;
};

} // namespace seglex
