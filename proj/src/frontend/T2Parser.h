#pragma once

#include <string>

#include "TransitionSystem.h"

namespace seglex {

// Text format (keywords case-insensitive, // comments to end of line):
//   START: <loc>;
//   FROM: <loc>;  zero or more commands  TO: <loc>;
// commands:  assume(<formula>);  |  <var> := <term>;  |  <var> := ?;
// Formulas use && || ! and integer comparisons; terms use + - *.
// Variables are declared by first use; location names may be identifiers or
// bare numbers. Commands compose sequentially: later commands see the values
// earlier ones assigned. Reading a variable after assigning it `?` splits the
// rule at a fresh location, so every stored rule constrains a havoc only
// through the rule's own next state.
TransitionSystem parseT2(const std::string& text);

} // namespace seglex
