#include "fo2kc/circuit.hpp"
#include "fo2kc/compiler.hpp"
#include "fo2kc/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

using namespace fo2kc;
using fo2kc::testing::bench_snf;

namespace {

std::string nnf_text(const Circuit &c) {
  std::ostringstream out;
  export_nnf(c, out);
  return out.str();
}

Circuit from_text(const std::string &s) {
  std::istringstream in(s);
  return import_nnf(in);
}

Assignment pinned_of(const std::vector<int> &lits, int num_vars) {
  Assignment a(num_vars + 1, -1);
  for (int l : lits)
    a[std::abs(l)] = l > 0;
  return a;
}

} // namespace

TEST(Circuit, Constants) {
  Circuit t(3);
  t.set_root(t.add_true());
  EXPECT_EQ(model_count(t), 8);
  EXPECT_EQ(t.edge_count(), 0u);
  Circuit f(3);
  f.set_root(f.add_false());
  EXPECT_EQ(model_count(f), 0);
  EXPECT_TRUE(enumerate_models(f).empty());
  EXPECT_TRUE(verify_dnnf(f).ok());
}

TEST(Circuit, LiteralsAreShared) {
  Circuit c(2);
  EXPECT_EQ(c.add_literal(1), c.add_literal(1));
  EXPECT_NE(c.add_literal(1), c.add_literal(-1));
}

TEST(Circuit, SmoothedCounting) {
  // (x1 & x2) | (~x1) over three variables
  Circuit c(3);
  int a = c.add_and({c.add_literal(1), c.add_literal(2)});
  c.set_root(c.add_or({a, c.add_literal(-1)}, 1));
  EXPECT_EQ(model_count(c), 2 + 4);
  EXPECT_EQ(c.edge_count(), 4u);
  EXPECT_EQ(c.node_count(), 5u);
  auto models = enumerate_models(c);
  ASSERT_EQ(models.size(), 6u);
  std::set<Assignment> distinct(models.begin(), models.end());
  EXPECT_EQ(distinct.size(), 6u);
  for (const auto &m : models) {
    EXPECT_TRUE(eval_circuit(c, m));
    EXPECT_TRUE((m[1] && m[2]) || !m[1]);
  }
}

TEST(Circuit, VerifyDetectsViolations) {
  Circuit dup(1);
  int x = dup.add_literal(1);
  dup.set_root(dup.add_or({x, x}));
  DnnfReport r = verify_dnnf(dup);
  EXPECT_TRUE(r.decomposable);
  EXPECT_FALSE(r.deterministic);

  Circuit shared(2);
  int x1 = shared.add_literal(1);
  int inner = shared.add_and({x1, shared.add_literal(2)});
  shared.set_root(shared.add_and({x1, inner}));
  r = verify_dnnf(shared);
  EXPECT_FALSE(r.decomposable);

  // a decision tag that the branches do not honor
  Circuit tagged(2);
  int b1 = tagged.add_and({tagged.add_literal(1), tagged.add_literal(2)});
  int b2 = tagged.add_and({tagged.add_literal(1), tagged.add_literal(-2)});
  int b3 = tagged.add_and({tagged.add_literal(1)});
  tagged.set_root(tagged.add_or({b1, b2}, 1));
  EXPECT_TRUE(verify_dnnf(tagged).ok());
  tagged.set_root(tagged.add_or({b1, b3}, 1));
  EXPECT_FALSE(verify_dnnf(tagged).deterministic);
}

TEST(Circuit, VerifyReportsUnverifiedOrs) {
  Circuit c(24);
  std::vector<int> left, right;
  for (int v = 1; v <= 12; ++v)
    left.push_back(c.add_literal(v));
  for (int v = 13; v <= 24; ++v)
    right.push_back(c.add_literal(v));
  left.push_back(c.add_literal(-13));
  right.push_back(c.add_literal(1));
  c.set_root(c.add_or({c.add_and(left), c.add_and(right)}));
  DnnfReport r = verify_dnnf(c);
  EXPECT_EQ(r.unverified, 1u);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(verify_dnnf(c, 30).ok());
}

TEST(Nnf, SingleLiteral) {
  Circuit c(1);
  c.set_root(c.add_literal(1));
  EXPECT_EQ(nnf_text(c), "nnf 1 0 1\nL 1\n");
}

TEST(Nnf, TrueAndFalse) {
  Circuit t(0);
  t.set_root(t.add_true());
  EXPECT_EQ(nnf_text(t), "nnf 1 0 0\nA 0\n");
  Circuit f(0);
  f.set_root(f.add_false());
  EXPECT_EQ(nnf_text(f), "nnf 1 0 0\nO 0 0\n");
  EXPECT_EQ(model_count(from_text("nnf 1 0 0\nA 0\n")), 1);
  EXPECT_EQ(model_count(from_text("nnf 1 0 2\nO 0 0\n")), 0);
}

TEST(Nnf, ImportSkipsComments) {
  Circuit c = from_text("c produced by hand\nnnf 3 2 2\nL 1\nL -2\nA 2 0 1\n");
  EXPECT_EQ(model_count(c), 1);
}

TEST(Nnf, ImportErrors) {
  EXPECT_THROW(from_text(""), ParseError);
  EXPECT_THROW(from_text("nnx 1 0 1\nL 1\n"), ParseError);
  EXPECT_THROW(from_text("nnf 1 0 1\nL 2\n"), ParseError);
  EXPECT_THROW(from_text("nnf 2 1 1\nL 1\nA 1 1\n"), ParseError);
  EXPECT_THROW(from_text("nnf 2 1 1\nL 1\nA 1 5\n"), ParseError);
  EXPECT_THROW(from_text("nnf 2 2 1\nL 1\nA 1 0\n"), ParseError);
  EXPECT_THROW(from_text("nnf 2 1 1\nL 1\n"), ParseError);
  EXPECT_THROW(from_text("nnf 1 0 1\nL 1\nL 1\n"), ParseError);
  EXPECT_THROW(from_text("nnf 1 0 1\nX 1\n"), ParseError);
  try {
    from_text("nnf 2 1 1\nL 1\nO 0 1 3\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Nnf, RoundTripCompiled) {
  for (const char *name : {"rb", "e", "d", "u2-b2"}) {
    auto res = compile(bench_snf(name), 3);
    std::string text = nnf_text(res.circuit);
    Circuit back = from_text(text);
    EXPECT_EQ(model_count(back), model_count(res.circuit)) << name;
    EXPECT_EQ(verify_dnnf(back).ok(), verify_dnnf(res.circuit).ok());
    EXPECT_EQ(back.edge_count(), res.circuit.edge_count());
    EXPECT_EQ(nnf_text(back), text);
  }
}

TEST(Dot, Renders) {
  auto res = compile(bench_snf("rb"), 2);
  std::ostringstream out;
  export_dot(res.circuit, &res.table, out);
  EXPECT_EQ(out.str().rfind("digraph", 0), 0u);
  EXPECT_NE(out.str().find("R(e1)"), std::string::npos);
}

// Queries on compiled circuits against the grounding.
TEST(Queries, CountEnumerateCondition) {
  for (const char *name : {"rb", "e", "d", "p", "rbe"}) {
    SnfSentence snf = bench_snf(name);
    for (int n = 0; n <= 3; ++n) {
      auto res = compile(snf, n);
      Grounding g = ground(snf_to_sentence(snf), n);
      int nv = g.table.num_vars();
      BigInt expected = count_ground_models(g.formula, nv);
      ASSERT_EQ(model_count(res.circuit), expected) << name << " n=" << n;

      auto models = enumerate_models(res.circuit);
      ASSERT_EQ(BigInt(models.size()), expected);
      std::set<Assignment> distinct(models.begin(), models.end());
      EXPECT_EQ(distinct.size(), models.size());
      for (const auto &m : models)
        EXPECT_TRUE(eval_ground(g.formula, m));
      auto prefix = enumerate_models(res.circuit, BigInt(2));
      ASSERT_EQ(prefix.size(), std::min<std::size_t>(2, models.size()));
      for (size_t k = 0; k < prefix.size(); ++k)
        EXPECT_EQ(prefix[k], models[k]);

      EXPECT_EQ(model_count(condition(res.circuit, {})), expected);
      std::mt19937 rng(n * 17 + 3);
      for (int k = 0; k < 20 && nv > 0; ++k) {
        int v = std::uniform_int_distribution<int>(1, nv)(rng);
        Circuit pos = condition(res.circuit, {v});
        Circuit neg = condition(res.circuit, {-v});
        EXPECT_EQ(model_count(pos) + model_count(neg), expected);
        Assignment pin = pinned_of({v}, nv);
        EXPECT_EQ(model_count(pos), count_ground_models(g.formula, nv, &pin));
        EXPECT_TRUE(verify_dnnf(pos).decomposable);
        EXPECT_EQ(verify_dnnf(pos).deterministic, true);
        int w = std::uniform_int_distribution<int>(1, nv)(rng);
        std::vector<int> two{-v, w};
        if (w == v)
          continue;
        Assignment pin2 = pinned_of(two, nv);
        EXPECT_EQ(model_count(condition(res.circuit, two)),
                  count_ground_models(g.formula, nv, &pin2));
      }
    }
  }
}

TEST(Queries, ConditionContradiction) {
  auto res = compile(bench_snf("rb"), 2);
  Circuit c = condition(condition(res.circuit, {1}), {-1});
  EXPECT_EQ(model_count(c), 0);
  EXPECT_EQ(model_count(condition(res.circuit, {2, -2})), 0);
}

TEST(Queries, IsolatedVertexCondition) {
  auto res = compile(bench_snf("e"), 3);
  const AtomTable &t = res.table;
  Circuit c = condition(res.circuit, {-t.var(0, 0, 1), -t.var(0, 0, 2)});
  EXPECT_EQ(model_count(c), 0);
}

TEST(Queries, EnumerationRespectsConditioning) {
  auto res = compile(bench_snf("rb"), 3);
  Circuit c = condition(res.circuit, {1});
  auto models = enumerate_models(c);
  EXPECT_EQ(BigInt(models.size()), model_count(c));
  for (const auto &m : models)
    EXPECT_EQ(m[1], 1);
}
