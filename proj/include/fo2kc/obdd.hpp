#pragma once

// OBDD view of a compiled circuit over the block variable order.

#include "fo2kc/circuit.hpp"

#include <iosfwd>
#include <vector>

namespace fo2kc {

struct Obdd {
  struct Node {
    int var;
    int lo;
    int hi;
  };
  static constexpr int kFalse = 0;
  static constexpr int kTrue = 1;

  int num_vars = 0;
  /// Entries 0 and 1 are the terminals (var = num_vars + 1).
  std::vector<Node> nodes;
  int root = kFalse;

  /// Internal nodes reachable from the root.
  std::size_t node_count() const;
  std::size_t edge_count() const;
};

/// Throws UnsupportedError when the circuit does not carry the decision
/// structure produced by compile (for example after conditioning).
Obdd to_obdd(const Circuit &c, bool reduce = true);

/// Throws Error when some edge does not increase the variable index.
BigInt obdd_count(const Obdd &o);

/// Checks the order invariant on every edge.
bool obdd_ordered(const Obdd &o);

bool obdd_eval(const Obdd &o, const Assignment &a);

/// Header `obdd <vars> <nodes> <root>`, then `<id> <var> <lo> <hi>` per node,
/// children first; terminals are written T0 and T1.
void write_obdd(const Obdd &o, std::ostream &out);

} // namespace fo2kc
