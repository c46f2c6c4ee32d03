#include "fo2kc/compiler.hpp"
#include "fo2kc/extend.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace fo2kc;
using fo2kc::testing::bench_snf;

namespace {

struct ReplayResult {
  std::size_t checks = 0;
  std::size_t disagreements = 0;
  std::size_t sat_mismatches = 0;
};

// Compiles and compares every reported verdict with satisfiability of the
// grounding under the literals the state fixes.
ReplayResult replay(const SnfSentence &snf, int n, bool caches) {
  Compiler comp(snf);
  fo2kc::testing::SnfOracle oracle(snf, n);
  ReplayResult r;
  CompileOptions opts;
  opts.stage1_cache = opts.stage2_cache = caches;
  opts.observer = [&](const CheckEvent &ev) {
    ++r.checks;
    auto lits =
        fo2kc::testing::pinned_literals(*ev.state, comp.tables(), oracle.grounding.table);
    if (oracle.satisfiable(lits) != ev.verdict)
      ++r.disagreements;
    if (recompute_sat(*ev.state, comp.tables()) != ev.state->sat)
      ++r.sat_mismatches;
  };
  comp.compile(n, opts);
  return r;
}

CompileState typed_state(int n, int q, int type) {
  CompileState s(n, q);
  for (int l = 0; l < n; ++l) {
    s.unary_choice[l] = type;
    ++s.partial.counts[type];
  }
  return s;
}

} // namespace

TEST(Aux, GraphsWithoutIsolatedVertices) {
  SnfSentence snf = bench_snf("e");
  TypeTables t = build_type_tables(snf);
  AuxSentence aux(snf, t);
  EXPECT_EQ(aux.tables().m, 1);
  EXPECT_EQ(aux.store().delta(), 3);
  EXPECT_EQ(aux.preds_Z().size(), 1u);
}

TEST(Aux, PurelyUniversal) {
  SnfSentence snf = bench_snf("rb");
  TypeTables t = build_type_tables(snf);
  AuxSentence aux(snf, t);
  EXPECT_EQ(aux.tables().m, 0);
  EXPECT_TRUE(aux.preds_Z().empty());
  EXPECT_EQ(aux.snf().vocab.size(), snf.vocab.size() + 3);
}

TEST(Aux, DominatingSetVocabulary) {
  SnfSentence snf = bench_snf("d");
  TypeTables t = build_type_tables(snf);
  AuxSentence aux(snf, t);
  // E, D, beta_1, T, Q, D', Z_1, beta'_1
  EXPECT_EQ(aux.snf().vocab.size(), 8);
  EXPECT_EQ(aux.tables().m, 1);
  EXPECT_EQ(aux.snf().vocab[aux.pred_T()].arity, 1);
  EXPECT_EQ(aux.snf().vocab[aux.pred_Q()].arity, 1);
  EXPECT_EQ(aux.snf().vocab[aux.pred_D()].arity, 2);
  EXPECT_NE(aux.pred_D(), *snf.vocab.find("D"));
}

// The isolated-vertex branch: e1 has no edge to e2 or e3.
TEST(Extend, IsolatedFirstVertexIsPruned) {
  SnfSentence snf = bench_snf("e");
  TypeTables t = build_type_tables(snf);
  AuxSentence aux(snf, t);
  CompileState s = typed_state(3, 1, 0);
  s.binary_choice[0] = 0; // (e1,e2): no edge
  s.binary_choice[1] = 0; // (e1,e3): no edge
  s.sat = recompute_sat(s, t);
  EXPECT_EQ(s.sat, (std::vector<std::uint32_t>{0, 0, 0}));
  EXPECT_FALSE(extendable_stage2(s, aux, 0, 2));
  auto c = induced_aux_config(s, aux, 0, 2);
  if (c)
    EXPECT_FALSE(aux.store().config_satisfiable(*c));

  s.binary_choice[0] = 1; // edge e1-e2
  s.sat = recompute_sat(s, t);
  EXPECT_EQ(s.sat, (std::vector<std::uint32_t>{1, 1, 0}));
  EXPECT_TRUE(extendable_stage2(s, aux, 0, 2));
  auto c2 = induced_aux_config(s, aux, 0, 2);
  ASSERT_TRUE(c2.has_value());
  EXPECT_EQ(c2->total(), 3u);
}

TEST(Extend, Stage1Examples) {
  SnfSentence snf = bench_snf("e");
  TypeTables t = build_type_tables(snf);
  TemplateStore store(t);
  CompileState one = typed_state(1, 1, 0);
  EXPECT_FALSE(extendable_stage1(one, store));
  CompileState three(3, 1);
  three.unary_choice[0] = 0;
  three.partial.counts[0] = 1;
  EXPECT_TRUE(extendable_stage1(three, store));
}

TEST(Extend, PurelyUniversalStage2AlwaysHolds) {
  SnfSentence snf = bench_snf("rb");
  Compiler comp(snf);
  for (int n = 2; n <= 4; ++n) {
    CompileOptions opts;
    std::size_t stage2 = 0, rejected = 0;
    opts.observer = [&](const CheckEvent &ev) {
      if (ev.stage == 2) {
        ++stage2;
        rejected += !extendable_stage2(*ev.state, comp.aux(), ev.i, ev.j);
      }
    };
    comp.compile(n, opts);
    EXPECT_GT(stage2, 0u);
    EXPECT_EQ(rejected, 0u);
  }
}

TEST(Extend, ReplayAgreesWithGroundingOnBenchmarks) {
  for (const char *name : {"e", "d", "rb", "p", "rbe", "u2-b2"})
    for (int n = 1; n <= 4; ++n)
      for (bool caches : {true, false}) {
        if (!caches && n == 4 && std::string(name) != "e")
          continue;
        auto r = replay(bench_snf(name), n, caches);
        EXPECT_GT(r.checks, 0u);
        EXPECT_EQ(r.disagreements, 0u) << name << " n=" << n;
        EXPECT_EQ(r.sat_mismatches, 0u) << name << " n=" << n;
      }
}

TEST(Extend, ReplayAgreesWithGroundingOnRandomSentences) {
  fo2kc::testing::SentenceGen gen(5);
  for (int k = 0; k < 80; ++k) {
    Sentence s = gen.next();
    SnfSentence snf = to_snf(s);
    for (int n = 1; n <= 3; ++n) {
      bool small = brute_force_count(s, n) <= 5000;
      for (bool caches : {true, false}) {
        if (!caches && !small)
          continue;
        auto r = replay(snf, n, caches);
        EXPECT_EQ(r.disagreements, 0u) << to_string(s) << " n=" << n;
        EXPECT_EQ(r.sat_mismatches, 0u);
      }
    }
  }
}
