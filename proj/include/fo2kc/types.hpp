#pragma once

// Valid unary/binary types of an SNF sentence and the tables derived from
// them.
//
// Unary slot layout: one bit per unary predicate (P(x)), then one bit per
// binary predicate (R(x,x)), vocabulary order, bit s = slot s.
// Binary slot layout: two bits per binary predicate r (rank among binary
// predicates): bit 2r is R(x,y), bit 2r+1 is R(y,x).
// These match the block layout of AtomTable, so type bits map directly onto
// block variables.

#include "fo2kc/snf.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace fo2kc {

using TypeMask = std::uint32_t;

constexpr int kDefaultSlotCap = 24;

/// Evaluates a quantifier-free formula over (x, y) from type bit vectors.
class TypeEvaluator {
public:
  TypeEvaluator(const Vocabulary &vocab, const Formula &phi);

  /// phi(x,y) with x of unary type ux, y of unary type uy, and binary type b.
  bool eval(TypeMask ux, TypeMask uy, TypeMask b) const;
  /// phi(x,x) under unary type u.
  bool eval_diag(TypeMask u) const;

private:
  enum class Leaf : std::uint8_t { UX, UY, B };
  struct Node {
    Formula::Kind kind;
    Leaf leaf;
    int slot; // unary slot (diagonal slot for binary predicates)
    int bit;  // binary bit for off-diagonal atoms
    std::vector<int> children;
  };
  int add(const Formula &f);
  bool run(int node, TypeMask ux, TypeMask uy, TypeMask b, bool diag) const;

  const Vocabulary *vocab_;
  std::vector<int> uslot_;
  std::vector<int> brank_;
  std::vector<Node> nodes_;
  int root_ = 0;
};

/// Swaps the R(x,y)/R(y,x) bits of every binary predicate.
TypeMask swap_binary(TypeMask b, int binary_preds);

struct TypeTables {
  int unary_slots = 0;
  int binary_preds = 0;
  int m = 0;

  std::vector<TypeMask> unary; // valid unary types, ascending
  /// binary[t][u]: valid binary types for (unary[t], unary[u]), ascending.
  std::vector<std::vector<std::vector<TypeMask>>> binary;
  /// Interned id of binary[t][u] by literal content.
  std::vector<std::vector<int>> cell_id;
  /// Interned id of the row (cell_id[t][u])_u.
  std::vector<int> row_id;
  /// Interned id of (beta_diag[t], row): tau and tau' share a class iff both
  /// agree.
  std::vector<int> class_id;
  /// Bit k set iff beta_k(x,x) holds in the unary type.
  std::vector<std::uint32_t> beta_diag;
  /// Slot of beta_k(x,x) in the unary layout, and rank of beta_k among
  /// binary predicates.
  std::vector<int> beta_slot;
  std::vector<int> beta_rank;

  int q() const { return static_cast<int>(unary.size()); }
  /// Bit k set iff beta_k(x,y) (resp. beta_k(y,x)) is in binary type b.
  std::uint32_t beta_forward(TypeMask b) const;
  std::uint32_t beta_backward(TypeMask b) const;
  int find_unary(TypeMask u) const; // -1 if invalid
};

/// Throws ResourceError above `slot_cap` unary slots or binary bits.
TypeTables build_type_tables(const SnfSentence &snf,
                             int slot_cap = kDefaultSlotCap);

/// Literal rendering of types, e.g. "R(x) ~B(x) ~E(x,x)".
std::string unary_type_string(const Vocabulary &vocab, TypeMask u);
std::string binary_type_string(const Vocabulary &vocab, TypeMask b);

void dump_type_tables(const TypeTables &t, const Vocabulary &vocab,
                      std::ostream &out);

} // namespace fo2kc
