#pragma once

// Grounding over a finite domain, propositional evaluation, brute-force
// counting, and CNF/DIMACS utilities.

#include "fo2kc/bigint.hpp"
#include "fo2kc/fol.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fo2kc {

/// Elements are 0-based internally and printed as e1..en.
struct GroundAtom {
  int pred = 0;
  int first = 0;
  int second = -1; // -1 for unary atoms

  bool operator==(const GroundAtom &) const = default;
};

/// Bijection between ground atoms and variables 1..num_vars() in block order:
/// one block per element (unary atoms, then diagonal binary atoms), followed by
/// one block per pair i<j in lexicographic order (per binary predicate,
/// R(ei,ej) then R(ej,ei)).
class AtomTable {
public:
  AtomTable() = default;
  AtomTable(const Vocabulary &vocab, int n);

  int n() const { return n_; }
  int num_vars() const { return static_cast<int>(atoms_.size()); }
  const Vocabulary &vocab() const { return vocab_; }

  /// Variable of P(e_a) or R(e_a, e_b).
  int var(int pred, int a, int b = -1) const;
  const GroundAtom &atom(int var) const { return atoms_[var - 1]; }
  std::string atom_name(int var) const;

  int unary_block_size() const { return ublock_; }
  int pair_block_size() const { return pblock_; }
  int num_pairs() const { return n_ * (n_ - 1) / 2; }
  /// Index of pair (i,j), i<j, in lexicographic order.
  int pair_index(int i, int j) const;
  int unary_block_start(int element) const { return 1 + element * ublock_; }
  int pair_block_start(int pair) const {
    return 1 + n_ * ublock_ + pair * pblock_;
  }
  int num_blocks() const { return n_ + num_pairs(); }
  int block_start(int block) const;
  int block_size(int block) const {
    return block < n_ ? ublock_ : pblock_;
  }
  int block_of(int var) const;

  bool operator==(const AtomTable &) const = default;

private:
  Vocabulary vocab_;
  int n_ = 0;
  int ublock_ = 0;
  int pblock_ = 0;
  std::vector<int> unary_slot_; // pred -> slot in unary block (diagonal for binary)
  std::vector<int> binary_rank_; // pred -> rank among binary predicates
  std::vector<GroundAtom> atoms_;
};

/// Ground formula in negation normal form with constants simplified away
/// (except at the root).
struct GroundFormula {
  enum class Kind : std::uint8_t { True, False, Lit, And, Or };
  Kind kind = Kind::True;
  int lit = 0; // signed variable for Lit
  std::vector<GroundFormula> children;

  static GroundFormula literal(int lit);
  static GroundFormula all(std::vector<GroundFormula> parts);
  static GroundFormula any(std::vector<GroundFormula> parts);

  bool operator==(const GroundFormula &) const = default;
};

struct Grounding {
  GroundFormula formula;
  AtomTable table;
};

Grounding ground(const Sentence &sentence, int n);

/// Assignment indexed by variable (slot 0 unused): 1 true, 0 false, -1 unset.
using Assignment = std::vector<std::int8_t>;

/// Throws Error if the formula mentions an unset or out-of-range variable.
bool eval_ground(const GroundFormula &f, const Assignment &a);

/// Models of f over variables 1..num_vars, consistent with `pinned` if given.
BigInt count_ground_models(const GroundFormula &f, int num_vars,
                           const Assignment *pinned = nullptr);

/// Calls `visit` on every model in lexicographic order (false before true);
/// stops early when `visit` returns false.
void for_each_ground_model(const GroundFormula &f, int num_vars,
                           const std::function<bool(const Assignment &)> &visit);

constexpr int kDefaultAtomCap = 30;

/// Exact model count of the grounding by exhaustive search. Throws
/// ResourceError if the grounding has more than `cap` atoms.
BigInt brute_force_count(const Sentence &sentence, int n,
                         int cap = kDefaultAtomCap);

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool operator==(const Cnf &) const = default;
};

/// CNF equisatisfiable with f and with the same count over variables
/// 1..num_atoms: auxiliary variables (numbered above num_atoms) are fully
/// defined by their subformulas. Subformulas whose distributed form exceeds
/// `threshold` literals are named instead of distributed.
Cnf to_cnf(const GroundFormula &f, int num_atoms, int threshold = 64);

void write_dimacs(const Cnf &cnf, const AtomTable &table, std::ostream &out);
void export_dimacs(const GroundFormula &f, const AtomTable &table,
                   std::ostream &out);
/// Throws ParseError.
Cnf parse_dimacs(std::istream &in);

/// Number of assignments to variables 1..projected (default: all) that extend
/// to a model of the CNF.
BigInt cnf_count(const Cnf &cnf, int projected = -1);
bool cnf_satisfiable(const Cnf &cnf, const std::vector<int> &assumptions = {});

} // namespace fo2kc
