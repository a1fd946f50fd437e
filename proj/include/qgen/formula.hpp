#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace qgen {

// Variable blocks. A formula draws its variables from up to four disjoint
// blocks, each indexed 1..count:
//   Universal   - the outer forall block X of a 2QBF
//   Existential - the inner exists block Y of a 2QBF
//   Plain       - unquantified propositional variables (plain SAT instances)
//   Aux         - selector variables introduced by the disjunction encoding;
//                 quantified in the innermost existential block
// The enumerator order doubles as the canonical sort order inside clauses,
// so universal literals always precede existential ones, and selector
// literals come last.
enum class VarBlock : std::uint8_t { Universal = 0, Existential = 1, Plain = 2, Aux = 3 };

struct VarId {
  VarBlock block{VarBlock::Plain};
  std::uint32_t index = 0;  // 1-based within the block

  auto operator<=>(const VarId&) const = default;
};

struct Literal {
  VarId var;
  bool positive = true;

  Literal complement() const { return Literal{var, !positive}; }
  auto operator<=>(const Literal&) const = default;
};

inline Literal pos(VarBlock b, std::uint32_t i) { return Literal{{b, i}, true}; }
inline Literal neg(VarBlock b, std::uint32_t i) { return Literal{{b, i}, false}; }

// Number of variables in each block. A literal over block b is valid only if
// its index lies in [1, of(b)].
struct VarCounts {
  int universal = 0;
  int existential = 0;
  int plain = 0;
  int aux = 0;

  int of(VarBlock b) const;
  int total() const { return universal + existential + plain + aux; }
  bool operator==(const VarCounts&) const = default;
};

// A set of literals over pairwise distinct variables, kept sorted by
// (block, index). Interpreted as a disjunction inside CNF and as a
// conjunction (a product) inside DNF; the structural invariant is the same
// either way. Constructing a clause with a repeated variable (same or
// opposite sign) throws std::invalid_argument.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> lits);

  const std::vector<Literal>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  bool operator==(const Clause&) const = default;

 private:
  std::vector<Literal> lits_;
};

// Conjunction of clauses over a declared variable universe. Every literal is
// range-checked against the universe at construction.
class CnfFormula {
 public:
  CnfFormula() = default;
  CnfFormula(VarCounts vars, std::vector<Clause> clauses);

  const VarCounts& vars() const { return vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool operator==(const CnfFormula&) const = default;

 private:
  VarCounts vars_;
  std::vector<Clause> clauses_;
};

// Ordered tuple of CNF components sharing one variable universe, read as the
// disjunction F_1 v ... v F_t. Duplicate components are legal and meaningful
// (tuple semantics, not set semantics). Always nonempty.
class MultiCnf {
 public:
  explicit MultiCnf(std::vector<CnfFormula> components);

  const VarCounts& vars() const { return components_.front().vars(); }
  const std::vector<CnfFormula>& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }

  bool operator==(const MultiCnf&) const = default;

 private:
  std::vector<CnfFormula> components_;
};

// Prenex 2QBF  forall X exists Y(,S) . (F_1 v ... v F_t)  with a
// multi-component CNF matrix. Aux variables, when present, belong to the
// inner existential block. Plain variables are not allowed in a QBF.
class CnfQbf {
 public:
  explicit CnfQbf(MultiCnf matrix);

  int universals() const { return matrix_.vars().universal; }
  int existentials() const { return matrix_.vars().existential; }
  int aux() const { return matrix_.vars().aux; }
  const MultiCnf& matrix() const { return matrix_; }

  bool operator==(const CnfQbf&) const = default;

 private:
  MultiCnf matrix_;
};

// Disjunction of products over a declared universe (products reuse Clause:
// same "distinct variables" invariant, conjunctive reading).
class DnfFormula {
 public:
  DnfFormula(VarCounts vars, std::vector<Clause> products);

  const VarCounts& vars() const { return vars_; }
  const std::vector<Clause>& products() const { return products_; }

  bool operator==(const DnfFormula&) const = default;

 private:
  VarCounts vars_;
  std::vector<Clause> products_;
};

// Dual-form 2QBF  exists X forall Y . (D_1 ^ ... ^ D_t)  with DNF
// components. Literals keep the block tags of the CNF orientation: block
// Universal is the OUTER EXISTENTIAL set X here, block Existential the inner
// universal set Y. exist_outer()/univ_inner() name the counts accordingly.
class DnfQbf {
 public:
  explicit DnfQbf(std::vector<DnfFormula> components);

  int exist_outer() const { return components_.front().vars().universal; }
  int univ_inner() const { return components_.front().vars().existential; }
  const std::vector<DnfFormula>& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }

  bool operator==(const DnfQbf&) const = default;

 private:
  std::vector<DnfFormula> components_;
};

// Partial mapping from variables to truth values. get() distinguishes
// "unset" from false; value() throws std::invalid_argument on unset
// variables so evaluation can never silently read garbage.
class Assignment {
 public:
  void set(VarId v, bool value);
  std::optional<bool> get(VarId v) const;
  bool value(VarId v) const;

  // Assignment to Universal variables 1..count taken from the low bits of
  // `bits` (bit i-1 holds variable i). The workhorse of the forall loops.
  static Assignment universals_from_bits(int count, std::uint64_t bits);
  // Same for one other block.
  static Assignment block_from_bits(VarBlock b, int count, std::uint64_t bits);

 private:
  std::vector<std::int8_t>& slot(VarBlock b);
  const std::vector<std::int8_t>* slot(VarBlock b) const;
  // -1 unset, 0 false, 1 true; vectors grow on demand.
  std::vector<std::int8_t> vals_[4];
};

// --- evaluation (total with respect to the literals actually read) ---

bool eval(const Literal& l, const Assignment& a);
bool eval(const Clause& c, const Assignment& a);          // disjunctive reading
bool eval_product(const Clause& c, const Assignment& a);  // conjunctive reading
bool eval(const CnfFormula& f, const Assignment& a);
bool eval(const MultiCnf& f, const Assignment& a);      // some component true
bool eval(const DnfFormula& d, const Assignment& a);    // some product true
bool eval_matrix(const DnfQbf& d, const Assignment& a);  // every component true

// --- restriction by an assignment to the universal block ---
//
// Keeps exactly the clauses whose universal literals are all falsified by
// `i`, strips those falsified universal literals, and leaves the rest of
// each clause untouched. The result has an empty universal block. `i` must
// assign every universal variable of f (std::invalid_argument otherwise).
CnfFormula restrict_universals(const CnfFormula& f, const Assignment& i);
MultiCnf restrict_universals(const MultiCnf& f, const Assignment& i);

// Flat 1-based numbering used by the DIMACS-family writers and the solvers:
// universal variables first (1..A), then existential (A+1..A+E), then plain,
// then aux last. Blocks that are empty contribute no offset, so a plain
// universe numbers 1..n and an encoded plain+aux universe numbers the
// selectors n+1..n+t.
int flat_index(const VarCounts& vars, VarId v);

// --- duality ---
//
// De Morgan negation of the matrix plus quantifier flip:
// dualize(forall X exists Y. OR F_h) = exists X forall Y. AND dual(F_h)
// where dual(F) negates every literal of every clause, turning the CNF into
// a DNF of the negation. Applying dualize twice is the identity. Requires an
// aux-free matrix (dualize before any disjunction encoding).
DnfQbf dualize(const CnfQbf& q);
CnfQbf dualize(const DnfQbf& d);

}  // namespace qgen
