#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/formula.hpp"
#include "qgen/transforms.hpp"

namespace qgen {

// Thrown by the parsers; the message always begins with "line N: ".
struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// --- writers -----------------------------------------------------------------
//
// All writers are pure and byte-deterministic: LF line endings, no trailing
// whitespace, variables numbered by the flat numbering declared in
// formula.hpp. `comments` lines (without the "c " prefix) are emitted ahead
// of the header; generation provenance travels in them.

// DIMACS CNF. The formula must be universal-free (fold multi-component
// inputs with apply_selector_encoding first); std::invalid_argument otherwise.
std::string write_dimacs(const CnfFormula& f, const std::vector<std::string>& comments = {});

// QDIMACS with one "a" line (omitted when A = 0) and one "e" line covering
// existential and aux variables (omitted when both are absent). The matrix
// must be single-component; std::invalid_argument otherwise.
std::string write_qdimacs(const CnfQbf& q, const std::vector<std::string>& comments = {});

// Ground disjunctive program, one rule per line:
//   a | b.        facts and disjunctive heads
//   h :- b1, b2.  positive bodies
//   w :- not w.   negated body atoms carry the "not " prefix
std::string write_aspcore(const DisjunctiveProgram& p);

// --- parsers -----------------------------------------------------------------
//
// Inverses of the writers modulo comments and block tags: parse_dimacs
// yields a plain-block formula, parse_qdimacs folds aux variables into the
// existential block. Both validate the header counts, literal ranges, clause
// termination, and per-clause variable distinctness, and report failures
// with line numbers.

CnfFormula parse_dimacs(std::string_view text);
CnfQbf parse_qdimacs(std::string_view text);

// Reader for the program fragment write_aspcore emits: atom names x<i>,
// nx<i>, y<j>, ny<j>, w, w<h>. Reconstructs the canonical atom table, so
// parse_aspcore(write_aspcore(p)) == p for every translated program.
DisjunctiveProgram parse_aspcore(std::string_view text);

// The formula re-expressed over plain variables 1..total() by the flat
// numbering; what a DIMACS round trip preserves.
CnfFormula flattened(const CnfFormula& f);

}  // namespace qgen
