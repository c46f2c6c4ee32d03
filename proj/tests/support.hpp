#pragma once

// Shared helpers for the test binaries: benchmark shortcuts, a random
// sentence generator and brute-force oracles over the grounding.

#include "fo2kc/benchgen.hpp"
#include "fo2kc/compiler.hpp"
#include "fo2kc/ground.hpp"
#include "fo2kc/snf.hpp"

#include <random>
#include <string>
#include <vector>

namespace fo2kc::testing {

Sentence bench(const std::string &name);
SnfSentence bench_snf(const std::string &name);

/// All 8 combinations of the cache and postprocess flags.
std::vector<CompileOptions> option_combos();
std::string describe(const CompileOptions &o);

/// Random sentences over a small vocabulary (1-2 unary, 1-2 binary
/// predicates) with the supported quantifier prefixes and at most one
/// existential conjunct.
class SentenceGen {
public:
  explicit SentenceGen(unsigned seed) : rng_(seed) {}
  Sentence next();
  /// Only forall and forall-forall conjuncts.
  Sentence next_universal();
  Formula body(const Vocabulary &v, bool two_vars, int depth);

private:
  Sentence make(bool universal_only);
  Formula atom(const Vocabulary &v, bool two_vars);
  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  std::mt19937 rng_;
};

/// Literals fixed by a compile state: the unary blocks of typed elements and
/// the pair blocks of decided pairs.
std::vector<int> pinned_literals(const CompileState &state,
                                 const TypeTables &tables,
                                 const AtomTable &table);

/// Grounding of the SNF sentence with a CNF for satisfiability queries.
struct SnfOracle {
  SnfOracle(const SnfSentence &snf, int n);
  bool satisfiable(const std::vector<int> &assumptions) const;
  Grounding grounding;
  Cnf cnf;
};

/// Models of a grounding as sorted signed-literal lists over 1..num_vars.
std::vector<std::vector<int>> ground_models(const Grounding &g);
std::vector<int> as_literals(const Assignment &a, int num_vars);

} // namespace fo2kc::testing
