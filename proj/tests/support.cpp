#include "support.hpp"

namespace fo2kc::testing {

Sentence bench(const std::string &name) {
  return generate(benchmark_spec(name));
}

SnfSentence bench_snf(const std::string &name) { return to_snf(bench(name)); }

std::vector<CompileOptions> option_combos() {
  std::vector<CompileOptions> out;
  for (int mask = 0; mask < 8; ++mask) {
    CompileOptions o;
    o.stage1_cache = mask & 1;
    o.stage2_cache = mask & 2;
    o.postprocess = mask & 4;
    out.push_back(o);
  }
  return out;
}

std::string describe(const CompileOptions &o) {
  return std::string("s1=") + (o.stage1_cache ? "on" : "off") +
         " s2=" + (o.stage2_cache ? "on" : "off") +
         " pp=" + (o.postprocess ? "on" : "off");
}

Formula SentenceGen::atom(const Vocabulary &v, bool two_vars) {
  int p = pick(0, v.size() - 1);
  auto var = [&] { return two_vars && pick(0, 1) ? Var::Y : Var::X; };
  if (v[p].arity == 1)
    return Formula::atom(p, {var()});
  return Formula::atom(p, {var(), var()});
}

Formula SentenceGen::body(const Vocabulary &v, bool two_vars, int depth) {
  if (depth == 0 || pick(0, 3) == 0)
    return atom(v, two_vars);
  switch (pick(0, 4)) {
  case 0:
    return Formula::negate(body(v, two_vars, depth - 1));
  case 1:
    return Formula::conj(
        {body(v, two_vars, depth - 1), body(v, two_vars, depth - 1)});
  case 2:
    return Formula::disj(
        {body(v, two_vars, depth - 1), body(v, two_vars, depth - 1)});
  case 3:
    return Formula::implies(body(v, two_vars, depth - 1),
                            body(v, two_vars, depth - 1));
  default:
    return Formula::iff(body(v, two_vars, depth - 1),
                        body(v, two_vars, depth - 1));
  }
}

Sentence SentenceGen::make(bool universal_only) {
  Sentence s;
  int unary = pick(1, 2), binary = pick(1, 2);
  for (int k = 0; k < unary; ++k)
    s.vocab.add(std::string(1, static_cast<char>('A' + k)), 1);
  for (int k = 0; k < binary; ++k)
    s.vocab.add(std::string(1, static_cast<char>('R' + k)), 2);
  int conjuncts = pick(1, 3);
  bool existential = false;
  for (int c = 0; c < conjuncts; ++c) {
    // at most one existential conjunct keeps the auxiliary tables small
    int shape = universal_only || existential ? pick(0, 1) : pick(0, 3);
    existential = existential || shape >= 2;
    switch (shape) {
    case 0:
      s.conjuncts.push_back(Formula::forall(Var::X, body(s.vocab, false, 2)));
      break;
    case 1:
      s.conjuncts.push_back(Formula::forall(
          Var::X, Formula::forall(Var::Y, body(s.vocab, true, 3))));
      break;
    case 2:
      s.conjuncts.push_back(Formula::forall(
          Var::X, Formula::exists(Var::Y, body(s.vocab, true, 2))));
      break;
    default:
      s.conjuncts.push_back(Formula::exists(Var::X, body(s.vocab, false, 1)));
      break;
    }
  }
  return s;
}

Sentence SentenceGen::next() { return make(false); }
Sentence SentenceGen::next_universal() { return make(true); }

std::vector<int> pinned_literals(const CompileState &state,
                                 const TypeTables &tables,
                                 const AtomTable &table) {
  std::vector<int> lits;
  auto pin = [&](int start, int size, TypeMask mask) {
    for (int s = 0; s < size; ++s)
      lits.push_back((mask >> s) & 1 ? start + s : -(start + s));
  };
  for (int l = 0; l < state.n; ++l)
    if (state.unary_choice[l] >= 0)
      pin(table.unary_block_start(l), table.unary_block_size(),
          tables.unary[state.unary_choice[l]]);
  int p = 0;
  for (int i = 0; i < state.n; ++i)
    for (int j = i + 1; j < state.n; ++j, ++p)
      if (state.binary_choice[p] >= 0) {
        int ti = state.unary_choice[i], tj = state.unary_choice[j];
        pin(table.pair_block_start(p), table.pair_block_size(),
            tables.binary[ti][tj][state.binary_choice[p]]);
      }
  return lits;
}

SnfOracle::SnfOracle(const SnfSentence &snf, int n)
    : grounding(ground(snf_to_sentence(snf), n)),
      cnf(to_cnf(grounding.formula, grounding.table.num_vars())) {}

bool SnfOracle::satisfiable(const std::vector<int> &assumptions) const {
  return cnf_satisfiable(cnf, assumptions);
}

std::vector<int> as_literals(const Assignment &a, int num_vars) {
  std::vector<int> lits;
  for (int v = 1; v <= num_vars; ++v)
    lits.push_back(a[v] == 1 ? v : -v);
  return lits;
}

std::vector<std::vector<int>> ground_models(const Grounding &g) {
  std::vector<std::vector<int>> out;
  int nv = g.table.num_vars();
  for_each_ground_model(g.formula, nv, [&](const Assignment &a) {
    out.push_back(as_literals(a, nv));
    return true;
  });
  return out;
}

} // namespace fo2kc::testing
