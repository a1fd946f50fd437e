#include "qgen/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qgen {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

// C(n, k) with saturation well above any feasible clause count.
std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > static_cast<unsigned __int128>(1) << 62) return std::uint64_t(1) << 62;
  }
  return static_cast<std::uint64_t>(r);
}

// Uniform `count`-subsets of {1..n} by partial Fisher-Yates over a reusable
// pool; swaps are undone after each draw so one pool serves a whole formula.
class DistinctSampler {
 public:
  explicit DistinctSampler(int n) : pool_(static_cast<std::size_t>(n)) {
    std::iota(pool_.begin(), pool_.end(), 1u);
  }

  void sample(int count, RandomSource& rng, std::vector<std::uint32_t>& out) {
    const std::size_t n = pool_.size();
    swaps_.clear();
    out.clear();
    for (int j = 0; j < count; ++j) {
      const std::size_t r =
          static_cast<std::size_t>(j) + rng.uniform(n - static_cast<std::size_t>(j));
      std::swap(pool_[j], pool_[r]);
      swaps_.push_back(r);
      out.push_back(pool_[j]);
    }
    for (int j = count - 1; j >= 0; --j) std::swap(pool_[j], pool_[swaps_[j]]);
  }

 private:
  std::vector<std::uint32_t> pool_;
  std::vector<std::size_t> swaps_;
};

// Draw order for every random clause part: the variable subset first, then
// one fair sign per chosen variable, in draw order.
void append_random_part(VarBlock block, int width, DistinctSampler& sampler,
                        RandomSource& rng, std::vector<Literal>& out) {
  static thread_local std::vector<std::uint32_t> vars;
  sampler.sample(width, rng, vars);
  for (int j = 0; j < width; ++j) out.push_back(Literal{{block, vars[j]}, rng.coin()});
}

void check_kcnf(const KcnfParams& p) {
  if (p.k < 1) bad("kcnf: k must be >= 1");
  if (p.n < p.k) bad("kcnf: n must be >= k");
  if (p.m < 0) bad("kcnf: m must be >= 0");
}

void check_ci(const ChenInterianParams& p) {
  if (p.a < 0 || p.e < 0) bad("ci: a and e must be >= 0");
  if (p.a + p.e < 1) bad("ci: a + e must be >= 1");
  if (p.big_a < p.a) bad("ci: A must be >= a");
  if (p.big_e < p.e) bad("ci: E must be >= e");
  if (p.m < 0) bad("ci: m must be >= 0");
}

void check_ctd(const ControlledParams& p) {
  if (p.k < 2) bad("ctd: k must be >= 2");
  if (p.big_a < 1) bad("ctd: A must be >= 1");
  if (p.big_e < p.k - 1) bad("ctd: E must be >= k-1");
}

void check_gctd(const GenControlledParams& p) {
  if (p.h < 1) bad("gctd: h must be >= 1");
  if (p.h > 30) bad("gctd: h larger than 30 is not supported");
  if (p.k <= p.h) bad("gctd: k must be > h");
  if (p.big_a < p.h) bad("gctd: A must be >= h");
  if (p.big_e < p.k - p.h) bad("gctd: E must be >= k-h");
}

void check_sgctd(const SmoothGctdParams& p) {
  if (p.h < 1) bad("sgctd: h must be >= 1");
  if (p.h > 30) bad("sgctd: h larger than 30 is not supported");
  if (p.k <= p.h) bad("sgctd: k must be > h");
  if (p.m < 1) bad("sgctd: m must be >= 1");
  if (p.big_e < p.k - p.h) bad("sgctd: E must be >= k-h");
}

void check_params(const ModelParams& m) {
  std::visit([](const auto& p) {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, KcnfParams>) check_kcnf(p);
    else if constexpr (std::is_same_v<T, ChenInterianParams>) check_ci(p);
    else if constexpr (std::is_same_v<T, ControlledParams>) check_ctd(p);
    else if constexpr (std::is_same_v<T, GenControlledParams>) check_gctd(p);
    else check_sgctd(p);
  }, m);
}

CnfFormula gen_ci_matrix(int a, int e, int big_a, int big_e, int m, RandomSource& rng) {
  DistinctSampler xs(big_a), ys(big_e);
  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) {
    std::vector<Literal> lits;
    lits.reserve(static_cast<std::size_t>(a + e));
    append_random_part(VarBlock::Universal, a, xs, rng, lits);
    append_random_part(VarBlock::Existential, e, ys, rng, lits);
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula({.universal = big_a, .existential = big_e}, std::move(clauses));
}

CnfFormula gen_ctd_matrix(int k, int big_a, int big_e, RandomSource& rng) {
  DistinctSampler ys(big_e);
  std::vector<Clause> clauses;
  clauses.reserve(2 * static_cast<std::size_t>(big_a));
  for (int i = 1; i <= big_a; ++i) {
    for (const bool positive : {true, false}) {
      std::vector<Literal> lits;
      lits.reserve(static_cast<std::size_t>(k));
      lits.push_back(Literal{{VarBlock::Universal, static_cast<std::uint32_t>(i)}, positive});
      append_random_part(VarBlock::Existential, k - 1, ys, rng, lits);
      clauses.emplace_back(std::move(lits));
    }
  }
  return CnfFormula({.universal = big_a, .existential = big_e}, std::move(clauses));
}

CnfFormula gen_gctd_matrix(int h, int k, int big_a, int big_e, RandomSource& rng) {
  DistinctSampler ys(big_e);
  std::vector<Clause> clauses;
  // h-combinations of {1..A} in lexicographic order
  std::vector<int> combo(static_cast<std::size_t>(h));
  std::iota(combo.begin(), combo.end(), 1);
  for (;;) {
    // all 2^h sign patterns in binary counting order; bit j (least
    // significant first) set means the j-th (smallest-index) variable of the
    // combination appears negated
    for (std::uint32_t pattern = 0; pattern < (1u << h); ++pattern) {
      std::vector<Literal> lits;
      lits.reserve(static_cast<std::size_t>(k));
      for (int j = 0; j < h; ++j) {
        lits.push_back(Literal{{VarBlock::Universal, static_cast<std::uint32_t>(combo[j])},
                               ((pattern >> j) & 1u) == 0});
      }
      append_random_part(VarBlock::Existential, k - h, ys, rng, lits);
      clauses.emplace_back(std::move(lits));
    }
    // advance the combination
    int j = h - 1;
    while (j >= 0 && combo[j] == big_a - (h - 1 - j)) --j;
    if (j < 0) break;
    ++combo[j];
    for (int l = j + 1; l < h; ++l) combo[l] = combo[l - 1] + 1;
  }
  return CnfFormula({.universal = big_a, .existential = big_e}, std::move(clauses));
}

CnfFormula gen_sgctd_matrix(int h, int k, int big_e, int m, RandomSource& rng) {
  const int big_a = smooth_universal_count(h, m);
  CnfFormula full = gen_gctd_matrix(h, k, big_a, big_e, rng);
  const int n_clauses = static_cast<int>(full.clauses().size());
  // uniform m-subset of clause positions, original order preserved, so the
  // boundary case m = 2^h*C(A,h) reproduces the full instance exactly
  DistinctSampler positions(n_clauses);
  std::vector<std::uint32_t> picked;
  positions.sample(m, rng, picked);
  std::sort(picked.begin(), picked.end());
  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  for (const std::uint32_t pos : picked) clauses.push_back(full.clauses()[pos - 1]);
  return CnfFormula(full.vars(), std::move(clauses));
}

CnfFormula gen_component(const ModelParams& params, RandomSource& rng) {
  return std::visit([&rng](const auto& p) -> CnfFormula {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, KcnfParams>) {
      DistinctSampler vars(p.n);
      std::vector<Clause> clauses;
      clauses.reserve(static_cast<std::size_t>(p.m));
      for (int c = 0; c < p.m; ++c) {
        std::vector<Literal> lits;
        lits.reserve(static_cast<std::size_t>(p.k));
        append_random_part(VarBlock::Plain, p.k, vars, rng, lits);
        clauses.emplace_back(std::move(lits));
      }
      return CnfFormula({.plain = p.n}, std::move(clauses));
    } else if constexpr (std::is_same_v<T, ChenInterianParams>) {
      return gen_ci_matrix(p.a, p.e, p.big_a, p.big_e, p.m, rng);
    } else if constexpr (std::is_same_v<T, ControlledParams>) {
      return gen_ctd_matrix(p.k, p.big_a, p.big_e, rng);
    } else if constexpr (std::is_same_v<T, GenControlledParams>) {
      return gen_gctd_matrix(p.h, p.k, p.big_a, p.big_e, rng);
    } else {
      return gen_sgctd_matrix(p.h, p.k, p.big_e, p.m, rng);
    }
  }, params);
}

}  // namespace

void validate(const GenSpec& spec) {
  check_params(spec.model);
  if (spec.components < 1) bad("components: t must be >= 1");
}

int smooth_universal_count(int h, int m) {
  if (h < 1 || h > 30) bad("sgctd: h must be in [1, 30]");
  if (m < 1) bad("sgctd: m must be >= 1");
  int big_a = h;
  while ((static_cast<unsigned __int128>(choose(big_a, h)) << h) <
         static_cast<unsigned __int128>(m)) {
    ++big_a;
  }
  return big_a;
}

CnfFormula gen_kcnf(int k, int n, int m, RandomSource& rng) {
  const KcnfParams p{k, n, m};
  check_kcnf(p);
  return gen_component(ModelParams{p}, rng);
}

CnfQbf gen_chen_interian(int a, int e, int big_a, int big_e, int m, RandomSource& rng) {
  const ChenInterianParams p{a, e, big_a, big_e, m};
  check_ci(p);
  return CnfQbf(MultiCnf({gen_component(ModelParams{p}, rng)}));
}

CnfQbf gen_controlled(int k, int big_a, int big_e, RandomSource& rng) {
  const ControlledParams p{k, big_a, big_e};
  check_ctd(p);
  return CnfQbf(MultiCnf({gen_component(ModelParams{p}, rng)}));
}

CnfQbf gen_gctd(int h, int k, int big_a, int big_e, RandomSource& rng) {
  const GenControlledParams p{h, k, big_a, big_e};
  check_gctd(p);
  return CnfQbf(MultiCnf({gen_component(ModelParams{p}, rng)}));
}

CnfQbf gen_sgctd(int h, int k, int big_e, int m, RandomSource& rng) {
  const SmoothGctdParams p{h, k, big_e, m};
  check_sgctd(p);
  return CnfQbf(MultiCnf({gen_component(ModelParams{p}, rng)}));
}

Instance gen_instance(const GenSpec& spec) {
  validate(spec);
  std::vector<CnfFormula> comps;
  comps.reserve(static_cast<std::size_t>(spec.components));
  for (int c = 0; c < spec.components; ++c) {
    RandomSource rng(spec.seed, spec.instance_index, static_cast<std::uint64_t>(c));
    comps.push_back(gen_component(spec.model, rng));
  }
  MultiCnf multi(std::move(comps));
  if (std::holds_alternative<KcnfParams>(spec.model)) return Instance{std::move(multi)};
  return Instance{CnfQbf(std::move(multi))};
}

std::string model_name(const ModelParams& m) {
  return std::visit([](const auto& p) -> std::string {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, KcnfParams>) return "kcnf";
    else if constexpr (std::is_same_v<T, ChenInterianParams>) return "ci";
    else if constexpr (std::is_same_v<T, ControlledParams>) return "ctd";
    else if constexpr (std::is_same_v<T, GenControlledParams>) return "gctd";
    else return "sgctd";
  }, m);
}

namespace {

std::string param_text(const ModelParams& m, const char* sep, bool key_eq) {
  const char* eq = key_eq ? "=" : "";
  return std::visit([&](const auto& p) -> std::string {
    using T = std::decay_t<decltype(p)>;
    std::string s;
    auto add = [&](const char* name, int v) {
      if (!s.empty()) s += sep;
      s += name;
      s += eq;
      s += std::to_string(v);
    };
    if constexpr (std::is_same_v<T, KcnfParams>) {
      add("k", p.k); add("n", p.n); add("m", p.m);
    } else if constexpr (std::is_same_v<T, ChenInterianParams>) {
      add("a", p.a); add("e", p.e); add("A", p.big_a); add("E", p.big_e); add("m", p.m);
    } else if constexpr (std::is_same_v<T, ControlledParams>) {
      add("k", p.k); add("A", p.big_a); add("E", p.big_e);
    } else if constexpr (std::is_same_v<T, GenControlledParams>) {
      add("h", p.h); add("k", p.k); add("A", p.big_a); add("E", p.big_e);
    } else {
      add("h", p.h); add("k", p.k); add("E", p.big_e); add("m", p.m);
    }
    return s;
  }, m);
}

}  // namespace

std::string describe(const GenSpec& spec) {
  return "model=" + model_name(spec.model) + " " + param_text(spec.model, " ", true) +
         " t=" + std::to_string(spec.components) + " seed=" + std::to_string(spec.seed) +
         " index=" + std::to_string(spec.instance_index);
}

std::string file_tag(const GenSpec& spec) {
  return param_text(spec.model, "_", false) + "_t" + std::to_string(spec.components);
}

}  // namespace qgen
