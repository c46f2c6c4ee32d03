#pragma once

// Built-in benchmark sentences.

#include "fo2kc/fol.hpp"

#include <string>
#include <vector>

namespace fo2kc {

struct BenchmarkSpec {
  /// rb, e, rbe, p, d, ui-bj, or a u4-b2 variant (u4-b2-ad, -so, -cc, -fd,
  /// -ao, -fo). Names of the form u<i>-b<j> select ui-bj directly.
  std::string name;
  int i = 4;
  int j = 2;
};

/// Parses "rb", "u2-b2", "u4-b2-cc", ... Throws Error for unknown names.
BenchmarkSpec benchmark_spec(const std::string &name);

/// Sentence text in the input grammar.
std::string benchmark_text(const BenchmarkSpec &spec);
Sentence generate(const BenchmarkSpec &spec);

/// Canonical names for `bench list`.
std::vector<std::string> benchmark_names();

} // namespace fo2kc
