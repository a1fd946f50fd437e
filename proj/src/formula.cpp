#include "qgen/formula.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qgen {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

const char* block_name(VarBlock b) {
  switch (b) {
    case VarBlock::Universal: return "universal";
    case VarBlock::Existential: return "existential";
    case VarBlock::Plain: return "plain";
    case VarBlock::Aux: return "aux";
  }
  return "?";
}

void check_clause_range(const Clause& c, const VarCounts& vars, const char* what) {
  for (const Literal& l : c.literals()) {
    const int limit = vars.of(l.var.block);
    if (l.var.index < 1 || static_cast<int>(l.var.index) > limit) {
      fail(std::string(what) + ": literal over " + block_name(l.var.block) +
           " variable " + std::to_string(l.var.index) + " outside declared universe (" +
           std::to_string(limit) + " declared)");
    }
  }
}

}  // namespace

int VarCounts::of(VarBlock b) const {
  switch (b) {
    case VarBlock::Universal: return universal;
    case VarBlock::Existential: return existential;
    case VarBlock::Plain: return plain;
    case VarBlock::Aux: return aux;
  }
  return 0;
}

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end(),
            [](const Literal& a, const Literal& b) { return a.var < b.var; });
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i - 1].var == lits_[i].var) {
      fail("clause mentions variable " + std::to_string(lits_[i].var.index) +
           " of block " + block_name(lits_[i].var.block) + " more than once");
    }
  }
}

CnfFormula::CnfFormula(VarCounts vars, std::vector<Clause> clauses)
    : vars_(vars), clauses_(std::move(clauses)) {
  if (vars_.universal < 0 || vars_.existential < 0 || vars_.plain < 0 || vars_.aux < 0) {
    fail("negative variable count");
  }
  for (const Clause& c : clauses_) check_clause_range(c, vars_, "CnfFormula");
}

MultiCnf::MultiCnf(std::vector<CnfFormula> components) : components_(std::move(components)) {
  if (components_.empty()) fail("MultiCnf needs at least one component");
  for (const CnfFormula& f : components_) {
    if (!(f.vars() == components_.front().vars())) {
      fail("MultiCnf components must share one variable universe");
    }
  }
}

CnfQbf::CnfQbf(MultiCnf matrix) : matrix_(std::move(matrix)) {
  if (matrix_.vars().plain != 0) fail("CnfQbf matrix must not use plain variables");
}

DnfFormula::DnfFormula(VarCounts vars, std::vector<Clause> products)
    : vars_(vars), products_(std::move(products)) {
  if (vars_.plain != 0 || vars_.aux != 0) {
    fail("DnfFormula uses only the universal/existential blocks");
  }
  for (const Clause& p : products_) check_clause_range(p, vars_, "DnfFormula");
}

DnfQbf::DnfQbf(std::vector<DnfFormula> components) : components_(std::move(components)) {
  if (components_.empty()) fail("DnfQbf needs at least one component");
  for (const DnfFormula& d : components_) {
    if (!(d.vars() == components_.front().vars())) {
      fail("DnfQbf components must share one variable universe");
    }
  }
}

std::vector<std::int8_t>& Assignment::slot(VarBlock b) {
  return vals_[static_cast<int>(b)];
}

const std::vector<std::int8_t>* Assignment::slot(VarBlock b) const {
  return &vals_[static_cast<int>(b)];
}

void Assignment::set(VarId v, bool value) {
  if (v.index < 1) fail("Assignment::set: variable index must be >= 1");
  auto& vec = slot(v.block);
  if (vec.size() < v.index) vec.resize(v.index, -1);
  vec[v.index - 1] = value ? 1 : 0;
}

std::optional<bool> Assignment::get(VarId v) const {
  const auto* vec = slot(v.block);
  if (v.index < 1 || v.index > vec->size()) return std::nullopt;
  const std::int8_t raw = (*vec)[v.index - 1];
  if (raw < 0) return std::nullopt;
  return raw == 1;
}

bool Assignment::value(VarId v) const {
  const std::optional<bool> b = get(v);
  if (!b) {
    fail("evaluation read unassigned " + std::string(block_name(v.block)) +
         " variable " + std::to_string(v.index));
  }
  return *b;
}

Assignment Assignment::universals_from_bits(int count, std::uint64_t bits) {
  return block_from_bits(VarBlock::Universal, count, bits);
}

Assignment Assignment::block_from_bits(VarBlock b, int count, std::uint64_t bits) {
  Assignment a;
  for (int i = 1; i <= count; ++i) a.set({b, static_cast<std::uint32_t>(i)}, (bits >> (i - 1)) & 1u);
  return a;
}

bool eval(const Literal& l, const Assignment& a) { return a.value(l.var) == l.positive; }

bool eval(const Clause& c, const Assignment& a) {
  for (const Literal& l : c.literals()) {
    if (eval(l, a)) return true;
  }
  return false;
}

bool eval_product(const Clause& c, const Assignment& a) {
  for (const Literal& l : c.literals()) {
    if (!eval(l, a)) return false;
  }
  return true;
}

bool eval(const CnfFormula& f, const Assignment& a) {
  for (const Clause& c : f.clauses()) {
    if (!eval(c, a)) return false;
  }
  return true;
}

bool eval(const MultiCnf& f, const Assignment& a) {
  for (const CnfFormula& comp : f.components()) {
    if (eval(comp, a)) return true;
  }
  return false;
}

bool eval(const DnfFormula& d, const Assignment& a) {
  for (const Clause& p : d.products()) {
    if (eval_product(p, a)) return true;
  }
  return false;
}

bool eval_matrix(const DnfQbf& d, const Assignment& a) {
  for (const DnfFormula& comp : d.components()) {
    if (!eval(comp, a)) return false;
  }
  return true;
}

CnfFormula restrict_universals(const CnfFormula& f, const Assignment& i) {
  for (int v = 1; v <= f.vars().universal; ++v) {
    if (!i.get({VarBlock::Universal, static_cast<std::uint32_t>(v)})) {
      fail("restrict_universals: incomplete universal assignment (variable " +
           std::to_string(v) + " unset)");
    }
  }
  VarCounts out_vars = f.vars();
  out_vars.universal = 0;
  std::vector<Clause> kept;
  for (const Clause& c : f.clauses()) {
    bool drop = false;
    std::vector<Literal> residue;
    residue.reserve(c.size());
    for (const Literal& l : c.literals()) {
      if (l.var.block == VarBlock::Universal) {
        if (eval(l, i)) {
          drop = true;
          break;
        }
      } else {
        residue.push_back(l);
      }
    }
    if (!drop) kept.emplace_back(std::move(residue));
  }
  return CnfFormula(out_vars, std::move(kept));
}

MultiCnf restrict_universals(const MultiCnf& f, const Assignment& i) {
  std::vector<CnfFormula> comps;
  comps.reserve(f.components().size());
  for (const CnfFormula& c : f.components()) comps.push_back(restrict_universals(c, i));
  return MultiCnf(std::move(comps));
}

int flat_index(const VarCounts& vars, VarId v) {
  const int idx = static_cast<int>(v.index);
  switch (v.block) {
    case VarBlock::Universal: return idx;
    case VarBlock::Existential: return vars.universal + idx;
    case VarBlock::Plain: return vars.universal + vars.existential + idx;
    case VarBlock::Aux: return vars.universal + vars.existential + vars.plain + idx;
  }
  return idx;
}

DnfQbf dualize(const CnfQbf& q) {
  if (q.aux() != 0) fail("dualize: apply to the matrix before any disjunction encoding");
  std::vector<DnfFormula> comps;
  comps.reserve(q.matrix().components().size());
  for (const CnfFormula& f : q.matrix().components()) {
    std::vector<Clause> products;
    products.reserve(f.clauses().size());
    for (const Clause& c : f.clauses()) {
      std::vector<Literal> lits;
      lits.reserve(c.size());
      for (const Literal& l : c.literals()) lits.push_back(l.complement());
      products.emplace_back(std::move(lits));
    }
    comps.emplace_back(f.vars(), std::move(products));
  }
  return DnfQbf(std::move(comps));
}

CnfQbf dualize(const DnfQbf& d) {
  std::vector<CnfFormula> comps;
  comps.reserve(d.components().size());
  for (const DnfFormula& f : d.components()) {
    std::vector<Clause> clauses;
    clauses.reserve(f.products().size());
    for (const Clause& p : f.products()) {
      std::vector<Literal> lits;
      lits.reserve(p.size());
      for (const Literal& l : p.literals()) lits.push_back(l.complement());
      clauses.emplace_back(std::move(lits));
    }
    comps.emplace_back(f.vars(), std::move(clauses));
  }
  return CnfQbf(MultiCnf(std::move(comps)));
}

}  // namespace qgen
