#include "fo2kc/benchgen.hpp"
#include "fo2kc/errors.hpp"
#include "fo2kc/types.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace fo2kc;
using fo2kc::testing::bench;

TEST(Benchgen, Names) {
  auto names = benchmark_names();
  EXPECT_EQ(names.size(), 16u);
  for (const auto &n : names)
    EXPECT_NO_THROW(generate(benchmark_spec(n))) << n;
  EXPECT_THROW(benchmark_spec("nope"), Error);
  EXPECT_THROW(benchmark_spec("u0-b2"), Error);
  EXPECT_THROW(benchmark_text({"ui-bj", 0, 1}), Error);
  BenchmarkSpec s = benchmark_spec("u3-b5");
  EXPECT_EQ(s.name, "ui-bj");
  EXPECT_EQ(s.i, 3);
  EXPECT_EQ(s.j, 5);
}

TEST(Benchgen, TwoColoredGraphsHaveTwoTypes) {
  EXPECT_EQ(build_type_tables(to_snf(bench("rb"))).q(), 2);
}

TEST(Benchgen, DefaultFamilyMemberIsSymmetricDisjoint) {
  EXPECT_EQ(generate({"ui-bj", 4, 2}), bench("u4-b2"));
  // same models as the core plus symmetry and same-direction disjointness
  std::string core = benchmark_text({"u4-b2-fo"});
  Sentence variant = parse_sentence(
      core + "forall x forall y. (E1(x,y) -> E1(y,x)) & (E2(x,y) -> E2(y,x))\n"
             "forall x forall y. ~E1(x,y) | ~E2(x,y)\n");
  for (int n = 0; n <= 2; ++n)
    EXPECT_EQ(brute_force_count(variant, n), brute_force_count(bench("u4-b2"), n));
}

TEST(Benchgen, FreeOrientationIsTheCore) {
  std::string fo = benchmark_text({"u4-b2-fo"});
  for (const char *v : {"ad", "so", "cc", "fd", "ao"}) {
    std::string text = benchmark_text({std::string("u4-b2-") + v});
    EXPECT_EQ(text.rfind(fo, 0), 0u) << v;
    EXPECT_GT(text.size(), fo.size());
  }
}

TEST(Benchgen, RoundTrip) {
  for (const auto &n : benchmark_names()) {
    Sentence s = bench(n);
    EXPECT_EQ(parse_sentence(to_string(s)), s) << n;
    EXPECT_EQ(parse_sentence(benchmark_text(benchmark_spec(n))), s);
  }
}

TEST(Benchgen, GoldenCountsAtThree) {
  const std::map<std::string, int> golden{
      {"rb", 26},       {"e", 4},         {"rbe", 6},       {"p", 265},
      {"d", 32},        {"u2-b2", 0},     {"u4-b1", 132},   {"u4-b2", 0},
      {"u4-b2-ad", 48}, {"u4-b2-so", 420}, {"u4-b2-cc", 48}, {"u4-b2-fd", 0},
      {"u4-b2-ao", 96}, {"u4-b2-fo", 17820}};
  for (const auto &[name, count] : golden)
    EXPECT_EQ(brute_force_count(bench(name), 3), count) << name;
}
