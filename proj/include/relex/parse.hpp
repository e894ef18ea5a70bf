// Parser for the fact/clause text format:
//   pred(arg, ...).                       ground facts
//   head :- lit1, lit2, ....              definite clauses
//   % comment to end of line
// Clause bodies may contain parenthesized disjunctions and the comparison
// builtins <, =<, >, >=. Disjunction is compiled away at parse time into one
// clause per disjunct, so the downstream engine only ever sees conjunctions.

#pragma once

#include <string>
#include <vector>

#include "relex/term.hpp"

namespace relex {

// Parses a full program: every clause in order, disjunctions expanded.
std::vector<Clause> parse_program(const std::string& text);

// Parses a single clause (must consume the whole string up to one '.').
Clause parse_clause_text(const std::string& text);

// Parses one literal, e.g. "t_next(t1,X)".
Literal parse_literal_text(const std::string& text);

// Parses one term.
Term parse_term_text(const std::string& text);

bool is_comparison_builtin(const std::string& predicate);

}  // namespace relex
