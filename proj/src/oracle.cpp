#include "qgen/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <string>

namespace qgen {

namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void out_of_budget(const std::string& msg) { throw resource_error(msg); }
[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

Clock::time_point deadline_from(const OracleLimits& limits) {
  return Clock::now() + limits.timeout;
}

void check_deadline(Clock::time_point deadline, const char* what) {
  if (Clock::now() >= deadline) out_of_budget(std::string(what) + ": timeout exceeded");
}

// ---------------------------------------------------------------------------
// Backtracking SAT on flat +/-v literals, counter-based (per-clause counts of
// satisfying and unassigned literals, occurrence lists per literal).
// ---------------------------------------------------------------------------

class DpllSolver {
 public:
  DpllSolver(int nvars, std::vector<std::vector<int>> clauses, Clock::time_point deadline)
      : nvars_(nvars), clauses_(std::move(clauses)), deadline_(deadline) {
    values_.assign(static_cast<std::size_t>(nvars_) + 1, -1);
    sat_by_.assign(clauses_.size(), 0);
    unassigned_.resize(clauses_.size());
    occ_.assign(2 * (static_cast<std::size_t>(nvars_) + 1), {});
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      unassigned_[ci] = static_cast<int>(clauses_[ci].size());
      for (const int lit : clauses_[ci]) occ_[lit_slot(lit)].push_back(static_cast<int>(ci));
    }
  }

  bool solve() {
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      if (clauses_[ci].empty()) return false;
      if (clauses_[ci].size() == 1) unit_queue_.push_back(static_cast<int>(ci));
    }
    return search();
  }

 private:
  static std::size_t lit_slot(int lit) {
    return lit > 0 ? 2 * static_cast<std::size_t>(lit)
                   : 2 * static_cast<std::size_t>(-lit) + 1;
  }

  // Make lit true, updating all counters; false signals an emptied clause.
  bool assign(int lit) {
    const int v = std::abs(lit);
    values_[static_cast<std::size_t>(v)] = lit > 0 ? 1 : 0;
    trail_.push_back(lit);
    for (const int ci : occ_[lit_slot(lit)]) ++sat_by_[static_cast<std::size_t>(ci)];
    bool ok = true;
    for (const int ci : occ_[lit_slot(-lit)]) {
      const auto c = static_cast<std::size_t>(ci);
      --unassigned_[c];
      if (sat_by_[c] == 0) {
        if (unassigned_[c] == 0) ok = false;
        else if (unassigned_[c] == 1) unit_queue_.push_back(ci);
      }
    }
    return ok;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const int lit = trail_.back();
      trail_.pop_back();
      values_[static_cast<std::size_t>(std::abs(lit))] = -1;
      for (const int ci : occ_[lit_slot(lit)]) --sat_by_[static_cast<std::size_t>(ci)];
      for (const int ci : occ_[lit_slot(-lit)]) ++unassigned_[static_cast<std::size_t>(ci)];
    }
  }

  bool assigned(int var) const { return values_[static_cast<std::size_t>(var)] >= 0; }

  // Unit propagation to fixpoint; false on conflict (trail NOT rewound).
  bool propagate() {
    while (!unit_queue_.empty()) {
      const auto c = static_cast<std::size_t>(unit_queue_.back());
      unit_queue_.pop_back();
      if (sat_by_[c] != 0 || unassigned_[c] != 1) continue;
      int unit = 0;
      for (const int lit : clauses_[c]) {
        if (!assigned(std::abs(lit))) {
          unit = lit;
          break;
        }
      }
      if (unit == 0 || !assign(unit)) return false;
    }
    return true;
  }

  // Branching rule: first unassigned literal of a clause with the fewest
  // unassigned literals, satisfied clauses skipped.
  int pick_branch_literal() const {
    int best_ci = -1;
    int best_width = 1 << 30;
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      if (sat_by_[ci] != 0) continue;
      if (unassigned_[ci] < best_width) {
        best_width = unassigned_[ci];
        best_ci = static_cast<int>(ci);
      }
    }
    if (best_ci < 0) return 0;
    for (const int lit : clauses_[static_cast<std::size_t>(best_ci)]) {
      if (!assigned(std::abs(lit))) return lit;
    }
    return 0;
  }

  bool search() {
    if ((++nodes_ & 1023u) == 0) check_deadline(deadline_, "sat_decide");
    const std::size_t entry = trail_.size();
    if (!propagate()) {
      unit_queue_.clear();
      undo_to(entry);
      return false;
    }
    const int branch = pick_branch_literal();
    if (branch == 0) return true;
    for (const int phase : {branch, -branch}) {
      const std::size_t mark = trail_.size();
      if (assign(phase) && search()) return true;
      unit_queue_.clear();
      undo_to(mark);
    }
    undo_to(entry);
    return false;
  }

  int nvars_;
  std::vector<std::vector<int>> clauses_;
  Clock::time_point deadline_;
  std::vector<std::int8_t> values_;
  std::vector<int> sat_by_;
  std::vector<int> unassigned_;
  std::vector<std::vector<int>> occ_;
  std::vector<int> trail_;
  std::vector<int> unit_queue_;
  std::uint64_t nodes_ = 0;
};

std::vector<std::vector<int>> flat_clauses(const CnfFormula& f) {
  if (f.vars().universal > 0) {
    bad("sat_decide: input still has universal variables; restrict first");
  }
  std::vector<std::vector<int>> out;
  out.reserve(f.clauses().size());
  for (const Clause& c : f.clauses()) {
    std::vector<int> lits;
    lits.reserve(c.size());
    for (const Literal& l : c.literals()) {
      const int flat = flat_index(f.vars(), l.var);
      lits.push_back(l.positive ? flat : -flat);
    }
    out.push_back(std::move(lits));
  }
  return out;
}

void check_var_budget(int nvars, const OracleLimits& limits, const char* what) {
  if (nvars > limits.max_existentials) {
    out_of_budget(std::string(what) + ": " + std::to_string(nvars) +
                  " variables exceed max_existentials=" + std::to_string(limits.max_existentials));
  }
}

bool sat_decide_flat(const CnfFormula& f, const OracleLimits& limits,
                     Clock::time_point deadline) {
  check_var_budget(f.vars().total(), limits, "sat_decide");
  DpllSolver solver(f.vars().total(), flat_clauses(f), deadline);
  return solver.solve();
}

// Bit masks over assignments encoded as integers (flat variable v -> bit v-1).
struct MaskClause {
  std::uint64_t pos = 0, neg = 0;
};

std::vector<MaskClause> mask_clauses(const CnfFormula& f) {
  std::vector<MaskClause> out;
  out.reserve(f.clauses().size());
  for (const Clause& c : f.clauses()) {
    MaskClause mc;
    for (const Literal& l : c.literals()) {
      const std::uint64_t bit = std::uint64_t(1) << (flat_index(f.vars(), l.var) - 1);
      (l.positive ? mc.pos : mc.neg) |= bit;
    }
    out.push_back(mc);
  }
  return out;
}

bool exhaustive_multi(const MultiCnf& f, const OracleLimits& limits) {
  const int n = f.vars().total();
  if (f.vars().universal > 0) bad("sat_decide_exhaustive: input still has universal variables");
  if (n > 25 || n > limits.max_existentials) {
    out_of_budget("sat_decide_exhaustive: " + std::to_string(n) +
                  " variables exceed the enumeration budget");
  }
  std::vector<std::vector<MaskClause>> comps;
  comps.reserve(f.components().size());
  for (const CnfFormula& comp : f.components()) comps.push_back(mask_clauses(comp));
  const auto deadline = deadline_from(limits);
  const std::uint64_t space = std::uint64_t(1) << n;
  for (std::uint64_t w = 0; w < space; ++w) {
    if ((w & 0xffffu) == 0) check_deadline(deadline, "sat_decide_exhaustive");
    for (const auto& comp : comps) {
      bool all = true;
      for (const MaskClause& mc : comp) {
        if ((mc.pos & w) == 0 && (mc.neg & ~w) == 0) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
  }
  return false;
}

}  // namespace

bool sat_decide(const CnfFormula& f, const OracleLimits& limits) {
  return sat_decide_flat(f, limits, deadline_from(limits));
}

bool sat_decide(const MultiCnf& f, const OracleLimits& limits) {
  const auto deadline = deadline_from(limits);
  for (const CnfFormula& comp : f.components()) {
    if (sat_decide_flat(comp, limits, deadline)) return true;
  }
  return false;
}

bool sat_decide_exhaustive(const CnfFormula& f, const OracleLimits& limits) {
  return exhaustive_multi(MultiCnf({f}), limits);
}

bool sat_decide_exhaustive(const MultiCnf& f, const OracleLimits& limits) {
  return exhaustive_multi(f, limits);
}

// ---------------------------------------------------------------------------
// 2QBF
// ---------------------------------------------------------------------------

namespace {

// One clause split into its universal part (as masks over the A outer
// variables) and its flat residual over the inner blocks.
struct SplitClause {
  std::uint64_t x_pos = 0, x_neg = 0;
  std::vector<int> inner;
};

std::vector<SplitClause> split_component(const CnfFormula& f) {
  const int big_a = f.vars().universal;
  std::vector<SplitClause> out;
  out.reserve(f.clauses().size());
  for (const Clause& c : f.clauses()) {
    SplitClause sc;
    for (const Literal& l : c.literals()) {
      if (l.var.block == VarBlock::Universal) {
        const std::uint64_t bit = std::uint64_t(1) << (l.var.index - 1);
        (l.positive ? sc.x_pos : sc.x_neg) |= bit;
      } else {
        const int flat = flat_index(f.vars(), l.var) - big_a;
        sc.inner.push_back(l.positive ? flat : -flat);
      }
    }
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace

bool qbf_decide_enumerate(const CnfQbf& q, const OracleLimits& limits) {
  const int big_a = q.universals();
  const int inner = q.existentials() + q.aux();
  if (big_a > limits.max_universals) {
    out_of_budget("qbf_decide_enumerate: A=" + std::to_string(big_a) +
                  " exceeds max_universals=" + std::to_string(limits.max_universals));
  }
  if (big_a > 30) {
    out_of_budget("qbf_decide_enumerate: 2^" + std::to_string(big_a) +
                  " universal assignments is past enumeration reach");
  }
  check_var_budget(inner, limits, "qbf_decide_enumerate");
  const auto deadline = deadline_from(limits);

  std::vector<std::vector<SplitClause>> comps;
  comps.reserve(q.matrix().components().size());
  for (const CnfFormula& f : q.matrix().components()) comps.push_back(split_component(f));

  const std::uint64_t a_mask = (std::uint64_t(1) << big_a) - 1;
  std::vector<std::vector<int>> residual;
  for (std::uint64_t i = 0; i <= a_mask; ++i) {
    if ((i & 0xffu) == 0) check_deadline(deadline, "qbf_decide_enumerate");
    bool some_component = false;
    for (const auto& comp : comps) {
      residual.clear();
      bool dead = false;
      for (const SplitClause& sc : comp) {
        if ((sc.x_pos & i) != 0 || (sc.x_neg & ~i & a_mask) != 0) continue;  // clause satisfied
        if (sc.inner.empty()) {
          dead = true;  // residual empty clause
          break;
        }
        residual.push_back(sc.inner);
      }
      if (dead) continue;
      DpllSolver solver(inner, residual, deadline);
      if (solver.solve()) {
        some_component = true;
        break;
      }
    }
    if (!some_component) return false;
  }
  return true;
}

namespace {

// Dynamically sized bitset over the 2^E inner assignments.
class YSet {
 public:
  YSet() = default;
  YSet(int words, bool ones, int nbits) : w_(static_cast<std::size_t>(words), ones ? ~std::uint64_t(0) : 0) {
    if (ones) trim(nbits);
  }

  void trim(int nbits) {
    const int rem = nbits & 63;
    if (rem != 0 && !w_.empty()) w_.back() &= (std::uint64_t(1) << rem) - 1;
  }

  void set_bit(int i) {
    w_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t(1) << (i & 63);
  }

  void or_with(const YSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }
  void and_with(const YSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  }
  void assign_and(const YSet& a, const YSet& b) {
    w_.resize(a.w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] = a.w_[i] & b.w_[i];
  }
  bool any() const {
    for (const std::uint64_t x : w_) {
      if (x != 0) return true;
    }
    return false;
  }
  bool and_any(const YSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if ((w_[i] & o.w_[i]) != 0) return true;
    }
    return false;
  }
  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (const std::uint64_t x : w_) c += static_cast<std::uint64_t>(std::popcount(x));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct ProjectionTables {
  // per component: the inner-assignment sets still alive given each
  // polarity choice of each universal variable, plus the root set
  std::vector<std::vector<YSet>> when_true, when_false;
  std::vector<YSet> base;
  // suffix[c][p]: inner assignments satisfying both polarities of every
  // universal from search position p onward
  std::vector<std::vector<YSet>> suffix;
  std::vector<int> order;
  int big_a = 0;
  int comps = 0;
};

class ProjectionSearch {
 public:
  ProjectionSearch(ProjectionTables t, Clock::time_point deadline)
      : t_(std::move(t)), deadline_(deadline) {
    work_.resize(static_cast<std::size_t>(t_.big_a) + 1,
                 std::vector<YSet>(static_cast<std::size_t>(t_.comps)));
    work_[0] = t_.base;
  }

  bool run() { return all_true(0); }

 private:
  // Whether every completion of the partial universal assignment at
  // position p leaves some component satisfiable.
  bool all_true(int p) {
    if ((++nodes_ & 1023u) == 0) check_deadline(deadline_, "qbf_decide_project");
    const auto& alive = work_[static_cast<std::size_t>(p)];
    bool some_alive = false;
    for (int c = 0; c < t_.comps; ++c) {
      if (alive[static_cast<std::size_t>(c)].any()) {
        some_alive = true;
        break;
      }
    }
    if (!some_alive) return false;
    for (int c = 0; c < t_.comps; ++c) {
      if (alive[static_cast<std::size_t>(c)].and_any(t_.suffix[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)])) {
        return true;  // a surviving inner assignment works for every completion
      }
    }
    const int var = t_.order[static_cast<std::size_t>(p)];
    auto& child = work_[static_cast<std::size_t>(p) + 1];
    for (const bool value : {true, false}) {
      for (int c = 0; c < t_.comps; ++c) {
        const auto& choice = value ? t_.when_true : t_.when_false;
        child[static_cast<std::size_t>(c)].assign_and(
            alive[static_cast<std::size_t>(c)],
            choice[static_cast<std::size_t>(c)][static_cast<std::size_t>(var)]);
      }
      if (!all_true(p + 1)) return false;
    }
    return true;
  }

  ProjectionTables t_;
  Clock::time_point deadline_;
  std::vector<std::vector<YSet>> work_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

bool projection_applicable(const CnfQbf& q) {
  if (q.aux() != 0) return false;
  for (const CnfFormula& f : q.matrix().components()) {
    for (const Clause& c : f.clauses()) {
      int universals = 0;
      for (const Literal& l : c.literals()) {
        if (l.var.block == VarBlock::Universal) ++universals;
      }
      if (universals > 1) return false;
    }
  }
  return true;
}

bool qbf_decide_project(const CnfQbf& q, const OracleLimits& limits) {
  if (!projection_applicable(q)) {
    bad("qbf_decide_project: needs an aux-free matrix with at most one universal literal per clause");
  }
  const int big_a = q.universals();
  const int big_e = q.existentials();
  if (big_a > limits.max_universals) {
    out_of_budget("qbf_decide_project: A=" + std::to_string(big_a) +
                  " exceeds max_universals=" + std::to_string(limits.max_universals));
  }
  if (big_a > 64) out_of_budget("qbf_decide_project: A beyond 64 is not supported");
  if (big_e > limits.max_existentials || big_e > 20) {
    out_of_budget("qbf_decide_project: 2^" + std::to_string(big_e) +
                  " inner-assignment sets exceed the bitset budget");
  }
  const auto deadline = deadline_from(limits);

  const int nbits = 1 << big_e;
  const int words = (nbits + 63) / 64;
  const int t = q.matrix().size();

  // halfspace[j][s]: inner assignments giving variable j+1 the value s
  std::vector<std::array<YSet, 2>> halfspace(static_cast<std::size_t>(big_e));
  for (int j = 0; j < big_e; ++j) {
    YSet zero(words, false, nbits), one(words, false, nbits);
    for (int y = 0; y < nbits; ++y) {
      // building bit by bit is fine here: done once, 2^E small
      if (((y >> j) & 1) != 0) {
        one.set_bit(y);
      } else {
        zero.set_bit(y);
      }
    }
    halfspace[static_cast<std::size_t>(j)] = {std::move(zero), std::move(one)};
  }

  ProjectionTables tables;
  tables.big_a = big_a;
  tables.comps = t;
  tables.when_true.assign(static_cast<std::size_t>(t),
                          std::vector<YSet>(static_cast<std::size_t>(big_a), YSet(words, true, nbits)));
  tables.when_false = tables.when_true;
  tables.base.assign(static_cast<std::size_t>(t), YSet(words, true, nbits));

  for (int c = 0; c < t; ++c) {
    for (const Clause& cl : q.matrix().components()[static_cast<std::size_t>(c)].clauses()) {
      YSet sat(words, false, nbits);
      const Literal* xlit = nullptr;
      for (const Literal& l : cl.literals()) {
        if (l.var.block == VarBlock::Universal) {
          xlit = &l;
        } else {
          sat.or_with(halfspace[l.var.index - 1][l.positive ? 1 : 0]);
        }
      }
      if (xlit == nullptr) {
        tables.base[static_cast<std::size_t>(c)].and_with(sat);
      } else if (xlit->positive) {
        // clause active when its universal variable is set false
        tables.when_false[static_cast<std::size_t>(c)][xlit->var.index - 1].and_with(sat);
      } else {
        tables.when_true[static_cast<std::size_t>(c)][xlit->var.index - 1].and_with(sat);
      }
    }
  }

  // static variable order: most constraining first (smallest set of inner
  // assignments surviving both polarities)
  tables.order.resize(static_cast<std::size_t>(big_a));
  std::vector<std::uint64_t> score(static_cast<std::size_t>(big_a), 0);
  for (int v = 0; v < big_a; ++v) {
    tables.order[static_cast<std::size_t>(v)] = v;
    for (int c = 0; c < t; ++c) {
      YSet both;
      both.assign_and(tables.when_true[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)],
                      tables.when_false[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)]);
      score[static_cast<std::size_t>(v)] += both.count();
    }
  }
  std::stable_sort(tables.order.begin(), tables.order.end(),
                   [&score](int a, int b) { return score[static_cast<std::size_t>(a)] < score[static_cast<std::size_t>(b)]; });

  tables.suffix.assign(static_cast<std::size_t>(t), {});
  for (int c = 0; c < t; ++c) {
    auto& suff = tables.suffix[static_cast<std::size_t>(c)];
    suff.assign(static_cast<std::size_t>(big_a) + 1, YSet(words, true, nbits));
    for (int p = big_a - 1; p >= 0; --p) {
      const int var = tables.order[static_cast<std::size_t>(p)];
      YSet s = suff[static_cast<std::size_t>(p) + 1];
      s.and_with(tables.when_true[static_cast<std::size_t>(c)][static_cast<std::size_t>(var)]);
      s.and_with(tables.when_false[static_cast<std::size_t>(c)][static_cast<std::size_t>(var)]);
      suff[static_cast<std::size_t>(p)] = std::move(s);
    }
  }

  ProjectionSearch search(std::move(tables), deadline);
  return search.run();
}

bool qbf_decide(const CnfQbf& q, const OracleLimits& limits) {
  if (q.universals() == 0) return sat_decide(q.matrix(), limits);
  if (q.universals() >= 14 && q.existentials() <= std::min(limits.max_existentials, 20) &&
      projection_applicable(q)) {
    return qbf_decide_project(q, limits);
  }
  return qbf_decide_enumerate(q, limits);
}

bool qbf_decide_dual(const DnfQbf& d, const OracleLimits& limits) {
  const int outer = d.exist_outer();
  const int inner = d.univ_inner();
  if (outer > limits.max_universals || outer > 25) {
    out_of_budget("qbf_decide_dual: outer block of " + std::to_string(outer) +
                  " exceeds the enumeration budget");
  }
  if (inner > limits.max_existentials || inner > 25) {
    out_of_budget("qbf_decide_dual: inner block of " + std::to_string(inner) +
                  " exceeds the enumeration budget");
  }
  const auto deadline = deadline_from(limits);

  struct MaskProduct {
    std::uint64_t x_pos = 0, x_neg = 0, y_pos = 0, y_neg = 0;
  };
  std::vector<std::vector<MaskProduct>> comps;
  comps.reserve(d.components().size());
  for (const DnfFormula& f : d.components()) {
    std::vector<MaskProduct> ps;
    ps.reserve(f.products().size());
    for (const Clause& p : f.products()) {
      MaskProduct mp;
      for (const Literal& l : p.literals()) {
        const std::uint64_t bit = std::uint64_t(1) << (l.var.index - 1);
        if (l.var.block == VarBlock::Universal) {
          (l.positive ? mp.x_pos : mp.x_neg) |= bit;
        } else {
          (l.positive ? mp.y_pos : mp.y_neg) |= bit;
        }
      }
      ps.push_back(mp);
    }
    comps.push_back(std::move(ps));
  }

  const std::uint64_t x_space = std::uint64_t(1) << outer;
  const std::uint64_t y_space = std::uint64_t(1) << inner;
  const std::uint64_t x_mask = x_space - 1;
  const std::uint64_t y_mask = y_space - 1;
  for (std::uint64_t x = 0; x < x_space; ++x) {
    check_deadline(deadline, "qbf_decide_dual");
    bool all_y = true;
    for (std::uint64_t y = 0; y < y_space && all_y; ++y) {
      for (const auto& comp : comps) {
        bool some_product = false;
        for (const MaskProduct& mp : comp) {
          if ((mp.x_pos & ~x & x_mask) == 0 && (mp.x_neg & x) == 0 &&
              (mp.y_pos & ~y & y_mask) == 0 && (mp.y_neg & y) == 0) {
            some_product = true;
            break;
          }
        }
        if (!some_product) {
          all_y = false;
          break;
        }
      }
    }
    if (all_y) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Answer sets
// ---------------------------------------------------------------------------

namespace {

struct MaskRule {
  std::uint64_t head = 0, pos = 0, neg = 0;
};

std::vector<MaskRule> mask_rules(const DisjunctiveProgram& p) {
  std::vector<MaskRule> out;
  out.reserve(p.rules().size());
  for (const Rule& r : p.rules()) {
    MaskRule mr;
    for (const int id : r.head) mr.head |= std::uint64_t(1) << id;
    for (const int id : r.pos_body) mr.pos |= std::uint64_t(1) << id;
    for (const int id : r.neg_body) mr.neg |= std::uint64_t(1) << id;
    out.push_back(mr);
  }
  return out;
}

bool models(const std::vector<MaskRule>& rules, std::uint64_t m) {
  for (const MaskRule& r : rules) {
    if ((r.pos & ~m) == 0 && (r.neg & m) == 0 && (r.head & m) == 0) return false;
  }
  return true;
}

// The reduct with respect to m, over masks.
std::vector<MaskRule> mask_reduct(const std::vector<MaskRule>& rules, std::uint64_t m) {
  std::vector<MaskRule> out;
  out.reserve(rules.size());
  for (const MaskRule& r : rules) {
    if ((r.neg & m) != 0) continue;
    out.push_back({r.head, r.pos, 0});
  }
  return out;
}

void check_atom_budget(const DisjunctiveProgram& p, const OracleLimits& limits,
                       const char* what) {
  const int n = p.atom_count();
  if (n > limits.max_program_atoms || n > 62) {
    out_of_budget(std::string(what) + ": " + std::to_string(n) +
                  " atoms exceed max_program_atoms=" + std::to_string(limits.max_program_atoms));
  }
}

std::uint64_t ids_to_mask(const DisjunctiveProgram& p, const std::vector<int>& ids) {
  std::uint64_t m = 0;
  for (const int id : ids) {
    if (id < 0 || id >= p.atom_count()) {
      bad("interpretation references atom id " + std::to_string(id) + " outside the program");
    }
    m |= std::uint64_t(1) << id;
  }
  return m;
}

bool is_answer_set_mask(const std::vector<MaskRule>& rules, std::uint64_t m,
                        Clock::time_point deadline) {
  const std::vector<MaskRule> red = mask_reduct(rules, m);
  if (!models(red, m)) return false;
  std::uint64_t guard = 0;
  for (std::uint64_t s = (m - 1) & m;; s = (s - 1) & m) {
    if ((++guard & 0xffffu) == 0) check_deadline(deadline, "is_answer_set");
    if (models(red, s)) return false;  // a proper subset already models the reduct
    if (s == 0) break;
  }
  return true;
}

}  // namespace

DisjunctiveProgram reduct(const DisjunctiveProgram& p, const std::vector<int>& m) {
  const std::uint64_t mask = ids_to_mask(p, m);
  std::vector<Rule> rules;
  rules.reserve(p.rules().size());
  for (const Rule& r : p.rules()) {
    bool blocked = false;
    for (const int id : r.neg_body) {
      if ((mask >> id) & 1u) {
        blocked = true;
        break;
      }
    }
    if (!blocked) rules.push_back({r.head, r.pos_body, {}});
  }
  return DisjunctiveProgram(p.atoms(), std::move(rules));
}

bool is_answer_set(const DisjunctiveProgram& p, const std::vector<int>& m,
                   const OracleLimits& limits) {
  check_atom_budget(p, limits, "is_answer_set");
  const std::uint64_t mask = ids_to_mask(p, m);
  const std::vector<MaskRule> rules = mask_rules(p);
  const bool result = is_answer_set_mask(rules, mask, deadline_from(limits));
  if (result && !models(rules, mask)) {
    // every answer set is a classical model; a violation is a solver bug
    throw std::logic_error("answer set failed the classical-model cross-check");
  }
  return result;
}

bool has_answer_set(const DisjunctiveProgram& p, const OracleLimits& limits) {
  check_atom_budget(p, limits, "has_answer_set");
  const int n = p.atom_count();
  const std::vector<MaskRule> rules = mask_rules(p);
  const auto deadline = deadline_from(limits);
  const std::uint64_t space = std::uint64_t(1) << n;
  std::uint64_t visited = 0;
  // increasing cardinality, so the first model found is cardinality-minimal
  // among candidates and satisfiable programs exit early
  for (int card = 0; card <= n; ++card) {
    std::uint64_t m = (card == 0) ? 0 : (std::uint64_t(1) << card) - 1;
    for (;;) {
      if ((++visited & 0xfffu) == 0) check_deadline(deadline, "has_answer_set");
      if (models(rules, m) && is_answer_set_mask(rules, m, deadline)) return true;
      if (card == 0) break;
      // Gosper's hack: next mask with the same popcount
      const std::uint64_t t = m | (m - 1);
      const std::uint64_t next = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(m) + 1));
      if (next >= space) break;
      m = next;
    }
  }
  return false;
}

}  // namespace qgen
