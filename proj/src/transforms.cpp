#include "qgen/transforms.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgen {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

std::vector<Clause> encoded_clauses(const std::vector<CnfFormula>& components) {
  const int t = static_cast<int>(components.size());
  std::vector<Clause> out;
  std::size_t total = 1;
  for (const CnfFormula& f : components) total += f.clauses().size();
  out.reserve(total);

  std::vector<Literal> selector_clause;
  selector_clause.reserve(static_cast<std::size_t>(t));
  for (int i = 1; i <= t; ++i) selector_clause.push_back(pos(VarBlock::Aux, static_cast<std::uint32_t>(i)));
  out.emplace_back(std::move(selector_clause));

  for (int i = 1; i <= t; ++i) {
    for (const Clause& c : components[static_cast<std::size_t>(i - 1)].clauses()) {
      std::vector<Literal> lits(c.literals());
      lits.push_back(neg(VarBlock::Aux, static_cast<std::uint32_t>(i)));
      out.emplace_back(std::move(lits));
    }
  }
  return out;
}

}  // namespace

CnfQbf apply_selector_encoding(const CnfQbf& q) {
  if (q.matrix().size() == 1) return q;
  if (q.aux() != 0) bad("selector encoding applied twice");
  VarCounts vars = q.matrix().vars();
  vars.aux = q.matrix().size();
  return CnfQbf(MultiCnf({CnfFormula(vars, encoded_clauses(q.matrix().components()))}));
}

CnfFormula apply_selector_encoding(const MultiCnf& f) {
  if (f.size() == 1) return f.components().front();
  if (f.vars().aux != 0) bad("selector encoding applied twice");
  VarCounts vars = f.vars();
  vars.aux = f.size();
  return CnfFormula(vars, encoded_clauses(f.components()));
}

std::string Atom::name() const {
  switch (kind) {
    case AtomKind::Base:
      return (block == VarBlock::Universal ? "x" : "y") + std::to_string(index);
    case AtomKind::Primed:
      return (block == VarBlock::Universal ? "nx" : "ny") + std::to_string(index);
    case AtomKind::W:
      return "w";
    case AtomKind::WIndexed:
      return "w" + std::to_string(index);
  }
  return "?";
}

DisjunctiveProgram::DisjunctiveProgram(std::vector<Atom> atoms, std::vector<Rule> rules)
    : atoms_(std::move(atoms)), rules_(std::move(rules)) {
  const int n = static_cast<int>(atoms_.size());
  auto check_ids = [n](const std::vector<int>& ids) {
    for (const int id : ids) {
      if (id < 0 || id >= n) bad("rule references atom id " + std::to_string(id) + " outside the atom table");
    }
  };
  for (const Rule& r : rules_) {
    if (r.head.empty()) bad("rule with empty head");
    check_ids(r.head);
    check_ids(r.pos_body);
    check_ids(r.neg_body);
    for (const int id : r.pos_body) {
      if (std::find(r.neg_body.begin(), r.neg_body.end(), id) != r.neg_body.end()) {
        bad("atom appears both positively and under negation in one body");
      }
    }
  }
}

int DisjunctiveProgram::find_atom(const Atom& a) const {
  const auto it = std::find(atoms_.begin(), atoms_.end(), a);
  return it == atoms_.end() ? -1 : static_cast<int>(it - atoms_.begin());
}

namespace {

// Atom table layout shared by the translation and by its parser:
// x1..xA, nx1..nxA, y1..yE, ny1..nyE, w, then w1..wt when t > 1.
struct AtomIds {
  int big_a, big_e, t;

  int base(VarBlock b, int i) const {
    return b == VarBlock::Universal ? i - 1 : 2 * big_a + i - 1;
  }
  int primed(VarBlock b, int i) const {
    return b == VarBlock::Universal ? big_a + i - 1 : 2 * big_a + big_e + i - 1;
  }
  int w() const { return 2 * (big_a + big_e); }
  int w_indexed(int h) const { return w() + h; }

  std::vector<Atom> table() const {
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(2 * (big_a + big_e) + 1 + (t > 1 ? t : 0)));
    for (int i = 1; i <= big_a; ++i) atoms.push_back({AtomKind::Base, VarBlock::Universal, i});
    for (int i = 1; i <= big_a; ++i) atoms.push_back({AtomKind::Primed, VarBlock::Universal, i});
    for (int j = 1; j <= big_e; ++j) atoms.push_back({AtomKind::Base, VarBlock::Existential, j});
    for (int j = 1; j <= big_e; ++j) atoms.push_back({AtomKind::Primed, VarBlock::Existential, j});
    atoms.push_back({AtomKind::W, VarBlock::Universal, 0});
    if (t > 1) {
      for (int h = 1; h <= t; ++h) atoms.push_back({AtomKind::WIndexed, VarBlock::Universal, h});
    }
    return atoms;
  }
};

DisjunctiveProgram translate(const DnfQbf& d) {
  const int big_a = d.exist_outer();
  const int big_e = d.univ_inner();
  const int t = d.size();
  const AtomIds ids{big_a, big_e, t};

  std::vector<Rule> rules;
  std::size_t products = 0;
  for (const DnfFormula& comp : d.components()) products += comp.products().size();
  rules.reserve(static_cast<std::size_t>(big_a + 3 * big_e + 2) + products);

  for (int i = 1; i <= big_a; ++i) {
    rules.push_back({{ids.base(VarBlock::Universal, i), ids.primed(VarBlock::Universal, i)}, {}, {}});
  }
  for (int j = 1; j <= big_e; ++j) {
    rules.push_back({{ids.base(VarBlock::Existential, j), ids.primed(VarBlock::Existential, j)}, {}, {}});
  }
  for (int j = 1; j <= big_e; ++j) {
    rules.push_back({{ids.base(VarBlock::Existential, j)}, {ids.w()}, {}});
    rules.push_back({{ids.primed(VarBlock::Existential, j)}, {ids.w()}, {}});
  }
  if (t > 1) {
    Rule collect{{ids.w()}, {}, {}};
    for (int h = 1; h <= t; ++h) collect.pos_body.push_back(ids.w_indexed(h));
    rules.push_back(std::move(collect));
  }
  for (int h = 1; h <= t; ++h) {
    const int head = t > 1 ? ids.w_indexed(h) : ids.w();
    for (const Clause& product : d.components()[static_cast<std::size_t>(h - 1)].products()) {
      Rule r{{head}, {}, {}};
      r.pos_body.reserve(product.size());
      for (const Literal& l : product.literals()) {
        r.pos_body.push_back(l.positive ? ids.base(l.var.block, static_cast<int>(l.var.index))
                                        : ids.primed(l.var.block, static_cast<int>(l.var.index)));
      }
      rules.push_back(std::move(r));
    }
  }
  rules.push_back({{ids.w()}, {}, {ids.w()}});

  return DisjunctiveProgram(ids.table(), std::move(rules));
}

}  // namespace

DisjunctiveProgram eiter_gottlob(const DnfQbf& d) {
  if (d.size() != 1) {
    bad("eiter_gottlob expects a one-component input; use eiter_gottlob_multi");
  }
  return translate(d);
}

DisjunctiveProgram eiter_gottlob_multi(const DnfQbf& d) { return translate(d); }

DisjunctiveProgram qbf_to_program(const CnfQbf& q) {
  return eiter_gottlob_multi(dualize(q));
}

}  // namespace qgen
