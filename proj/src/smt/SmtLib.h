#pragma once

#include <set>

#include "../lia/Formula.h"

namespace seglex {

// Variable naming for the wire format: pre-space "x<i>", post-space "y<i>".
std::string smtSymbol(VarId v);
std::optional<VarId> smtSymbolToVar(const std::string& name);

std::string smtTerm(const TermPtr& t);
// Predicate applications are rejected (queries are predicate-free).
std::string smtFormula(const FormulaPtr& f);

struct Sexp {
    bool isAtom{false};
    std::string atom;
    std::vector<Sexp> list;
};

// Parses one s-expression (or a bare atom) from the text.
Sexp parseSexp(const std::string& text);

// Extracts integer assignments from a (get-model) response.
Valuation parseModel(const Sexp& s);

// Extracts labels from a (get-unsat-core) response.
std::vector<std::string> parseCore(const Sexp& s);

} // namespace seglex
