#pragma once

// NNF circuits with the d-DNNF queries: counting, enumeration,
// conditioning, structural verification and file I/O.

#include "fo2kc/bigint.hpp"
#include "fo2kc/ground.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fo2kc {

enum class NodeKind : std::uint8_t { Literal, And, Or };

struct Node {
  NodeKind kind = NodeKind::And;
  int literal = 0;  // signed variable, Literal only
  int decision = 0; // Or only: lowest variable of the decided block, 0 if none
  std::vector<int> children;

  bool operator==(const Node &) const = default;
};

/// Arena of nodes; children always precede their parents. TRUE is an AND
/// without children, FALSE an OR without children.
class Circuit {
public:
  explicit Circuit(int num_vars = 0);

  int num_vars() const { return num_vars_; }
  /// Literal nodes are shared: one node per signed variable.
  int add_literal(int lit);
  int add_and(std::vector<int> children);
  int add_or(std::vector<int> children, int decision = 0);
  int add_true() { return add_and({}); }
  int add_false() { return add_or({}); }

  void set_root(int id) { root_ = id; }
  int root() const { return root_; }
  const Node &node(int id) const { return nodes_[id]; }
  Node &mutable_node(int id) { return nodes_[id]; }
  int arena_size() const { return static_cast<int>(nodes_.size()); }

  /// Nodes and edges reachable from the root; size is the edge count.
  std::size_t node_count() const;
  std::size_t edge_count() const;
  /// Reachable node ids, children before parents.
  std::vector<int> topological() const;

  /// Variables fixed by conditioning; they are outside the counting universe.
  const std::vector<int> &conditioned() const { return conditioned_; }
  void set_conditioned(std::vector<int> lits) { conditioned_ = std::move(lits); }

  bool operator==(const Circuit &) const = default;

private:
  int num_vars_;
  int root_ = -1;
  std::vector<Node> nodes_;
  std::vector<int> literal_ids_; // index 2*var + (lit < 0)
  std::vector<int> conditioned_;
};

/// Number of models over all variables that are not conditioned.
BigInt model_count(const Circuit &c);

/// Satisfying assignments in a fixed order, indexed by variable as in
/// eval_ground; conditioned variables carry their fixed value.
class ModelStream {
public:
  ModelStream(const Circuit &c, std::optional<BigInt> limit = std::nullopt);
  std::optional<Assignment> next();
  const BigInt &total() const { return total_; }

private:
  void unrank(int id, BigInt r, Assignment &out) const;
  void fill_gap(const std::vector<int> &vars, BigInt r, Assignment &out) const;

  const Circuit &c_;
  std::vector<BigInt> counts_;
  std::vector<std::vector<int>> vars_;
  std::vector<int> outside_; // universe variables not under the root
  BigInt total_;
  BigInt index_ = 0;
  BigInt end_;
};

std::vector<Assignment> enumerate_models(const Circuit &c,
                                         std::optional<BigInt> limit = std::nullopt);

bool eval_circuit(const Circuit &c, const Assignment &a);

/// Fixes the given literals and simplifies constants. Decision tags are
/// dropped in the result.
Circuit condition(const Circuit &c, const std::vector<int> &literals);

struct DnnfReport {
  bool decomposable = true;
  bool deterministic = true;
  /// OR nodes whose determinism could not be checked (untagged, too many
  /// variables).
  std::size_t unverified = 0;
  std::string problem;

  bool ok() const { return decomposable && deterministic && unverified == 0; }
};

/// Decomposability exactly; determinism structurally on decision ORs and by
/// exhaustive evaluation on other ORs with at most `exhaustive_cap` variables.
DnnfReport verify_dnnf(const Circuit &c, int exhaustive_cap = 20);

void export_nnf(const Circuit &c, std::ostream &out);
/// Throws ParseError.
Circuit import_nnf(std::istream &in);
void export_dot(const Circuit &c, const AtomTable *table, std::ostream &out);

} // namespace fo2kc
