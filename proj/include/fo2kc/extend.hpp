#pragma once

// Extendability of partial type assignments during compilation.

#include "fo2kc/config.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace fo2kc {

/// Partial type assignment built up by the compiler. Elements and pairs are
/// 0-based; pairs are indexed in lexicographic order.
struct CompileState {
  int n = 0;
  std::vector<int> unary_choice;   // type id, -1 when unassigned
  std::vector<int> binary_choice;  // index into the pair's cell, -1 when unassigned
  Configuration partial;           // census of assigned elements
  /// Bit k of sat[l]: element l already has a beta_k witness.
  std::vector<std::uint32_t> sat;
  int position_i = 0;
  int position_j = 0;

  CompileState() = default;
  CompileState(int n, int q);
  static int pair_index(int n, int i, int j) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }
};

/// Recomputes the satisfaction matrix from the choices made so far.
std::vector<std::uint32_t> recompute_sat(const CompileState &state,
                                         const TypeTables &tables);

/// The auxiliary sentence that turns a Stage-II extendability question into
/// configuration satisfiability, with its own type tables and store.
class AuxSentence {
public:
  AuxSentence(const SnfSentence &base, const TypeTables &base_tables,
              int slot_cap = kDefaultSlotCap);
  AuxSentence(const AuxSentence &) = delete;
  AuxSentence &operator=(const AuxSentence &) = delete;

  const SnfSentence &snf() const { return snf_; }
  const TypeTables &tables() const { return *tables_; }
  TemplateStore &store() { return *store_; }

  /// Aux unary type of an element with base type `base_type` and the given
  /// markers, or -1 when no valid aux type matches.
  int aux_type(int base_type, bool t, bool q, std::uint32_t z);

  int pred_T() const { return T_; }
  int pred_Q() const { return Q_; }
  int pred_D() const { return D_; }
  const std::vector<int> &preds_Z() const { return Z_; }

private:
  SnfSentence snf_;
  std::unique_ptr<TypeTables> tables_;
  std::unique_ptr<TemplateStore> store_;
  const TypeTables *base_;
  int T_ = -1, Q_ = -1, D_ = -1;
  std::vector<int> Z_;
  std::vector<int> base_slot_map_; // base unary slot -> aux unary slot
  int slot_T_ = 0, slot_Q_ = 0, slot_D_ = 0;
  std::vector<int> slot_Z_;
  std::vector<int> slot_free_; // diagonals of fresh aux betas
  std::unordered_map<std::uint64_t, int> cache_;
};

/// Stage I: can the assigned prefix be completed to a model of size n?
bool extendable_stage1(const CompileState &state, TemplateStore &store);

/// Configuration of the aux sentence over elements i..n-1 after the pair
/// (i,j) was decided; nullopt when some element has no valid aux type.
std::optional<Configuration> induced_aux_config(const CompileState &state,
                                                AuxSentence &aux, int i,
                                                int j);

/// Stage II: after deciding pair (i,j), can the context be completed?
bool extendable_stage2(const CompileState &state, AuxSentence &aux, int i,
                       int j);

} // namespace fo2kc
