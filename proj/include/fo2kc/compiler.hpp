#pragma once

// Two-stage compilation of an SNF grounding into a d-DNNF circuit.

#include "fo2kc/circuit.hpp"
#include "fo2kc/extend.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>

namespace fo2kc {

/// One extendability verdict, reported to CompileOptions::observer.
/// Stage 1: element i just received its unary type. Stage 2: pair (i,j) just
/// received its binary type. Elements are 0-based.
struct CheckEvent {
  int stage = 1;
  int i = 0;
  int j = 0;
  const CompileState *state = nullptr;
  bool verdict = false;
};

struct CompileOptions {
  bool stage1_cache = true;
  bool stage2_cache = true;
  bool postprocess = true;
  bool stats = false;
  /// Abort with ResourceError once more calls than this were expanded.
  std::optional<std::uint64_t> max_expanded;
  std::function<void(const CheckEvent &)> observer;
};

struct CompileStats {
  std::uint64_t stage1_calls = 0; // expanded (cache misses)
  std::uint64_t stage2_calls = 0;
  std::uint64_t stage1_lookups = 0;
  std::uint64_t stage1_hits = 0;
  std::uint64_t stage2_lookups = 0;
  std::uint64_t stage2_hits = 0;
  std::uint64_t stage1_checks = 0;
  std::uint64_t stage1_failures = 0;
  std::uint64_t stage2_checks = 0;
  std::uint64_t stage2_failures = 0;
  double seconds = 0;
  std::size_t nodes_before = 0;
  std::size_t edges_before = 0;
  std::size_t nodes_after = 0;
  std::size_t edges_after = 0;

  std::uint64_t expanded() const { return stage1_calls + stage2_calls; }
};

void write_stats(const CompileStats &s, std::ostream &out);

struct CompileResult {
  Circuit circuit;
  AtomTable table;
  CompileStats stats;
};

/// Type tables, template stores and the auxiliary sentence of one SNF
/// sentence; reusable across domain sizes.
class Compiler {
public:
  explicit Compiler(SnfSentence snf, int slot_cap = kDefaultSlotCap);
  Compiler(const Compiler &) = delete;
  Compiler &operator=(const Compiler &) = delete;

  const SnfSentence &snf() const { return snf_; }
  const TypeTables &tables() const { return tables_; }
  TemplateStore &store() { return store_; }
  /// Built on first use.
  AuxSentence &aux();

  CompileResult compile(int n, const CompileOptions &opts = {});

private:
  SnfSentence snf_;
  int slot_cap_;
  TypeTables tables_;
  TemplateStore store_;
  std::unique_ptr<AuxSentence> aux_;
};

CompileResult compile(const SnfSentence &snf, int n,
                      const CompileOptions &opts = {});

/// Stage-I key: level i and the class ids of elements 0..i-1.
std::vector<int> cache_key_stage1(const CompileState &state,
                                  const TypeTables &tables, int i);
/// Stage-II key: pair position, satisfaction state and the cell ids of all
/// pairs from position p on.
std::vector<std::uint32_t> cache_key_stage2(const CompileState &state,
                                            const TypeTables &tables, int p);

/// Splices every non-root AND (OR) with a single AND (OR) parent into that
/// parent. Returns a compacted copy.
Circuit postprocess(const Circuit &c);

} // namespace fo2kc
