#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "qgen/formula.hpp"
#include "qgen/rng.hpp"

namespace qgen {

// --- model parameter records -----------------------------------------------
//
// One record per random family. Validation lives in validate(); every
// generator calls it, so invalid parameters fail identically no matter the
// entry point.

// Fixed-length random k-CNF over n plain variables, m clauses drawn
// independently and uniformly: each clause picks k distinct variables and
// independent fair signs.
struct KcnfParams {
  int k = 0, n = 0, m = 0;
};

// Two-block random 2QBF: each of the m clauses has exactly `a` universal
// literals over A universals and `e` existential literals over E
// existentials, drawn like the k-CNF clauses blockwise.
struct ChenInterianParams {
  int a = 0, e = 0, big_a = 0, big_e = 0, m = 0;
};

// Controlled family: exactly 2A clauses of width k. Clause 2i-1 carries the
// positive literal of universal i, clause 2i its negative literal; the other
// k-1 literals of every clause are a uniform existential (k-1)-clause.
// Every universal assignment therefore falsifies exactly one literal of
// each pair, leaving exactly A residual clauses.
struct ControlledParams {
  int k = 0, big_a = 0, big_e = 0;
};

// Generalized controlled family: the universal parts enumerate every
// consistent h-literal set over the A universals, giving C(A,h)*2^h clauses;
// each is padded with k-h uniform existential literals. Every universal
// assignment falsifies all universal literals of exactly C(A,h) clauses.
struct GenControlledParams {
  int h = 0, k = 0, big_a = 0, big_e = 0;
};

// Smooth variant: A is the unique integer with
// 2^h*C(A-1,h) < m <= 2^h*C(A,h); generate the full generalized controlled
// instance for that A, then keep a uniform m-subset of its clauses (without
// replacement, original order preserved).
struct SmoothGctdParams {
  int h = 0, k = 0, big_e = 0, m = 0;
};

using ModelParams = std::variant<KcnfParams, ChenInterianParams, ControlledParams,
                                 GenControlledParams, SmoothGctdParams>;

// A complete recipe for one instance: model parameters, number of
// components t (tuple semantics; components are drawn independently), and
// the PRNG coordinates. Equal GenSpecs always regenerate byte-identical
// instances.
struct GenSpec {
  ModelParams model;
  int components = 1;
  std::uint64_t seed = 0;
  std::uint64_t instance_index = 0;
};

// Throws std::invalid_argument with a parameter-naming message on any
// violated constraint.
void validate(const GenSpec& spec);

// Short model tag: kcnf | ci | ctd | gctd | sgctd.
std::string model_name(const ModelParams& m);
// Human/machine-readable one-line description, e.g.
// "model=ctd k=4 A=24 E=12 t=3 seed=42 index=0". Used verbatim in file
// provenance comments and CSV parameter columns.
std::string describe(const GenSpec& spec);
// Parameter fragment used in generated file names, e.g. "k4_A24_E12_t3".
std::string file_tag(const GenSpec& spec);

// --- single-component generators -------------------------------------------
//
// Each returns a one-component formula/QBF and consumes rng in a fixed,
// documented draw order (variables before signs, clause by clause), so the
// output is reproducible from the stream alone.

CnfFormula gen_kcnf(int k, int n, int m, RandomSource& rng);
CnfQbf gen_chen_interian(int a, int e, int big_a, int big_e, int m, RandomSource& rng);
CnfQbf gen_controlled(int k, int big_a, int big_e, RandomSource& rng);
CnfQbf gen_gctd(int h, int k, int big_a, int big_e, RandomSource& rng);
CnfQbf gen_sgctd(int h, int k, int big_e, int m, RandomSource& rng);

// The A determined by (h, m) for the smooth family: the smallest A with
// 2^h*C(A,h) >= m.
int smooth_universal_count(int h, int m);

// --- instance-level entry point ---------------------------------------------
//
// KCNF specs produce a MultiCnf over plain variables; the QBF models produce
// a CnfQbf whose matrix has `components` components. Component c of instance
// i is generated from RandomSource(seed, i, c), so prefixes of a t-tuple
// coincide with the corresponding smaller tuples.
using Instance = std::variant<MultiCnf, CnfQbf>;

Instance gen_instance(const GenSpec& spec);

}  // namespace qgen
