#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qgen/formula.hpp"

namespace qgen {

// --- disjunction encoding ----------------------------------------------------
//
// Folds a multi-component matrix F_1 v ... v F_t into one CNF component by
// adding t selector variables s_1..s_t (block Aux, innermost existential):
// one clause (s_1 v ... v s_t) followed by (C v ~s_i) for every clause C of
// component i, components in order. The one-sided implication suffices
// because selectors occur only here and only with these polarities; any
// model picks a selector whose component it satisfies, and conversely. A
// one-component input is returned unchanged (no selectors).
CnfQbf apply_selector_encoding(const CnfQbf& q);
CnfFormula apply_selector_encoding(const MultiCnf& f);

// --- programs ----------------------------------------------------------------

// Atoms of the translated programs. Base/Primed atoms shadow a variable of
// the dual-form QBF: block Universal means an outer-existential x variable
// (text names x<i> / nx<i>), block Existential an inner-universal y variable
// (y<j> / ny<j>). W is the single saturation atom "w"; WIndexed(h) is the
// per-component head "w<h>" used when t > 1.
enum class AtomKind : std::uint8_t { Base, Primed, W, WIndexed };

struct Atom {
  AtomKind kind{AtomKind::W};
  VarBlock block{VarBlock::Universal};  // meaningful for Base/Primed only
  int index = 0;                        // variable index, or component for WIndexed

  std::string name() const;
  auto operator<=>(const Atom&) const = default;
};

// Disjunctive rule  h_1 | ... | h_p :- b_1, ..., b_q, not c_1, ..., not c_r.
// over dense atom ids. Head nonempty; an empty body makes the rule a fact.
struct Rule {
  std::vector<int> head;
  std::vector<int> pos_body;
  std::vector<int> neg_body;

  bool operator==(const Rule&) const = default;
};

// A ground disjunctive logic program: an atom table (id -> Atom, the id
// order is also the emission/printing order) plus a rule list in emission
// order. Construction validates: nonempty heads, ids in range, no atom both
// in pos_body and neg_body.
class DisjunctiveProgram {
 public:
  DisjunctiveProgram(std::vector<Atom> atoms, std::vector<Rule> rules);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Rule>& rules() const { return rules_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  // Id of an atom in the table, -1 if absent.
  int find_atom(const Atom& a) const;

  bool operator==(const DisjunctiveProgram&) const = default;

 private:
  std::vector<Atom> atoms_;
  std::vector<Rule> rules_;
};

// --- translation -------------------------------------------------------------
//
// From a dual-form QBF  exists X forall Y . (D_1 ^ ... ^ D_t)  build the
// program over atoms x_i/nx_i (i in X), y_j/ny_j (j in Y), w, and (t > 1
// only) w_1..w_t, with rules in this order:
//   x_i | nx_i.            for every i in X
//   y_j | ny_j.            for every j in Y
//   y_j :- w.  ny_j :- w.  for every j in Y (saturation)
//   w :- w_1, ..., w_t.    only when t > 1
//   head_h :- product.     one rule per product of D_h, components in order,
//                          head_h = w for t = 1 and w_h for t > 1; a product
//                          literal z maps to the base atom, ~z to the primed
//   w :- not w.
// The program has an answer set iff the QBF is false. For t = 1 both entry
// points emit the identical program.
DisjunctiveProgram eiter_gottlob(const DnfQbf& d);        // requires exactly 1 component
DisjunctiveProgram eiter_gottlob_multi(const DnfQbf& d);  // any t >= 1

// dualize + eiter_gottlob_multi: program with an answer set iff q is false.
DisjunctiveProgram qbf_to_program(const CnfQbf& q);

}  // namespace qgen
