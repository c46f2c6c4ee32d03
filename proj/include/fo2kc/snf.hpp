#pragma once

// Scott normal form: forall x forall y. phi(x,y) & AND_k forall x exists y. beta_k(x,y)

#include "fo2kc/fol.hpp"
#include "fo2kc/ground.hpp"

#include <vector>

namespace fo2kc {

struct SnfSentence {
  /// Original predicates first (same indices), then introduced ones.
  Vocabulary vocab;
  int original_pred_count = 0;
  Formula phi; // quantifier-free over x, y
  std::vector<int> betas;
  /// psi_k for each existential conjunct; for a reused atom this is the atom.
  std::vector<Formula> psis;
  std::vector<int> aux_preds;

  int m() const { return static_cast<int>(betas.size()); }
  Vocabulary original_vocab() const;

  bool operator==(const SnfSentence &) const = default;
};

/// Throws UnsupportedError for quantifier prefixes other than
/// forall, exists, forall-forall, forall-exists.
SnfSentence to_snf(const Sentence &sentence);

/// The SNF as a plain sentence: one universal conjunct plus one
/// forall-exists conjunct per beta.
Sentence snf_to_sentence(const SnfSentence &snf);

/// Drops atoms over introduced predicates: maps an assignment over
/// `snf_table` to one over `original_table`.
Assignment project_model(const Assignment &snf_assignment,
                         const AtomTable &snf_table,
                         const AtomTable &original_table);

} // namespace fo2kc
