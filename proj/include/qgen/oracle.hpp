#pragma once

#include <chrono>
#include <stdexcept>
#include <vector>

#include "qgen/formula.hpp"
#include "qgen/transforms.hpp"

namespace qgen {

// Hard ceilings for the brute-force deciders. Exceeding a ceiling raises
// resource_error; the deciders never return a wrong verdict, they refuse
// instead. Raise the fields explicitly for larger desk experiments.
struct OracleLimits {
  int max_universals = 16;
  int max_existentials = 24;
  int max_program_atoms = 22;
  std::chrono::milliseconds timeout{60000};
};

// Out-of-budget, as opposed to a logical verdict: thrown when an input
// exceeds OracleLimits or a search exceeds the timeout.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- propositional satisfiability ------------------------------------------
//
// Backtracking search with unit propagation and nothing else (no learning,
// no restarts; the branching rule is "first unassigned literal of a shortest
// unresolved clause"). Input must be universal-free; total variable count is
// limited by max_existentials.
bool sat_decide(const CnfFormula& f, const OracleLimits& limits = {});
// Disjunction of components: satisfiable iff some component is.
bool sat_decide(const MultiCnf& f, const OracleLimits& limits = {});

// Independent reference implementation: enumerate every assignment (at most
// 25 variables regardless of limits). Exists so the backtracking solver has
// something to disagree with in tests.
bool sat_decide_exhaustive(const CnfFormula& f, const OracleLimits& limits = {});
bool sat_decide_exhaustive(const MultiCnf& f, const OracleLimits& limits = {});

// --- 2QBF truth --------------------------------------------------------------
//
// Truth value of  forall X exists Y . (F_1 v ... v F_t). Two exact
// strategies share the entry point:
//   - enumerate: loop over all 2^A universal assignments, restrict, and run
//     sat_decide on the residual. The definition, executed literally.
//   - project: depth-first search over partial universal assignments that
//     tracks, per component, the set of inner assignments still satisfying
//     every activated clause (a bitset over all 2^E of them). A branch
//     closes as TRUE as soon as some surviving inner assignment also
//     satisfies both polarities of every not-yet-assigned universal's
//     clauses, and as FALSE as soon as no inner assignment survives in any
//     component. Requires every clause to carry at most one universal
//     literal (the controlled families and a<=1 two-block instances), an
//     aux-free matrix, and E small enough for the bitsets; A may then be far
//     beyond enumeration reach.
// qbf_decide picks project for A >= 14 when its shape requirements hold and
// enumerate otherwise; both are exposed for cross-checking.
bool qbf_decide(const CnfQbf& q, const OracleLimits& limits = {});
bool qbf_decide_enumerate(const CnfQbf& q, const OracleLimits& limits = {});
bool qbf_decide_project(const CnfQbf& q, const OracleLimits& limits = {});
// True when qbf_decide_project accepts the instance's shape.
bool projection_applicable(const CnfQbf& q);

// Truth value of the dual form  exists X forall Y . (D_1 ^ ... ^ D_t)  by
// direct double enumeration. For any q: qbf_decide(q) == !qbf_decide_dual(dualize(q)).
bool qbf_decide_dual(const DnfQbf& d, const OracleLimits& limits = {});

// --- answer sets -------------------------------------------------------------
//
// Interpretations are given as sorted vectors of atom ids into p.atoms().

// The Gelfond-Lifschitz reduct: drop every rule whose negative body meets m,
// strip the negative bodies of the rest. Output is negation-free, same atom
// table.
DisjunctiveProgram reduct(const DisjunctiveProgram& p, const std::vector<int>& m);

// m is an answer set of p: m models reduct(p, m) and no proper subset of m
// does (checked by enumerating the up-to-2^|m| subsets).
bool is_answer_set(const DisjunctiveProgram& p, const std::vector<int>& m,
                   const OracleLimits& limits = {});

// Some answer set exists. Candidates are enumerated in increasing
// cardinality, so the first hit short-circuits; the atom count is limited by
// max_program_atoms.
bool has_answer_set(const DisjunctiveProgram& p, const OracleLimits& limits = {});

}  // namespace qgen
