#include "fo2kc/extend.hpp"

#include "fo2kc/errors.hpp"

namespace fo2kc {

CompileState::CompileState(int n_, int q)
    : n(n_), unary_choice(n_, -1), binary_choice(n_ * (n_ - 1) / 2, -1),
      partial{std::vector<std::uint32_t>(q, 0)}, sat(n_, 0) {}

std::vector<std::uint32_t> recompute_sat(const CompileState &state,
                                         const TypeTables &tables) {
  std::vector<std::uint32_t> sat(state.n, 0);
  for (int l = 0; l < state.n; ++l)
    if (state.unary_choice[l] >= 0)
      sat[l] = tables.beta_diag[state.unary_choice[l]];
  for (int i = 0; i < state.n; ++i)
    for (int j = i + 1; j < state.n; ++j) {
      int c = state.binary_choice[CompileState::pair_index(state.n, i, j)];
      if (c < 0)
        continue;
      TypeMask b =
          tables.binary[state.unary_choice[i]][state.unary_choice[j]][c];
      sat[i] |= tables.beta_forward(b);
      sat[j] |= tables.beta_backward(b);
    }
  return sat;
}

namespace {

int unary_slot(const Vocabulary &vocab, int pred) {
  int slot = 0;
  for (int p : vocab.unary()) {
    if (p == pred)
      return slot;
    ++slot;
  }
  for (int p : vocab.binary()) {
    if (p == pred)
      return slot;
    ++slot;
  }
  throw Error("predicate not in vocabulary");
}

} // namespace

AuxSentence::AuxSentence(const SnfSentence &base, const TypeTables &base_tables,
                         int slot_cap)
    : base_(&base_tables) {
  Sentence s;
  s.vocab = base.vocab;
  T_ = s.vocab.add(s.vocab.fresh_name("T"), 1);
  Q_ = s.vocab.add(s.vocab.fresh_name("Q"), 1);
  D_ = s.vocab.add(s.vocab.fresh_name("D"), 2);
  for (int k = 0; k < base.m(); ++k)
    Z_.push_back(s.vocab.add(s.vocab.fresh_name("Z" + std::to_string(k + 1)), 1));

  using F = Formula;
  auto at = [](int p, Var v) { return F::atom(p, {v}); };
  auto bin = [](int p, Var a, Var b) { return F::atom(p, {a, b}); };
  auto forall2 = [](F body) {
    return F::forall(Var::X, F::forall(Var::Y, std::move(body)));
  };
  const Var x = Var::X, y = Var::Y;

  s.conjuncts.push_back(forall2(base.phi));
  s.conjuncts.push_back(forall2(F::implies(
      F::conj({at(T_, x), at(Q_, y)}),
      F::conj({bin(D_, x, y), bin(D_, y, x)}))));
  s.conjuncts.push_back(forall2(F::implies(
      bin(D_, x, y), F::disj({F::conj({at(T_, x), at(Q_, y)}),
                              F::conj({at(T_, y), at(Q_, x)})}))));
  for (int k = 0; k < base.m(); ++k)
    s.conjuncts.push_back(F::forall(
        x, F::exists(y, F::implies(at(Z_[k], x),
                                   F::conj({bin(base.betas[k], x, y),
                                            F::negate(bin(D_, x, y))})))));
  snf_ = to_snf(s);
  tables_ = std::make_unique<TypeTables>(build_type_tables(snf_, slot_cap));
  store_ = std::make_unique<TemplateStore>(*tables_);

  for (int p : base.vocab.unary())
    base_slot_map_.push_back(unary_slot(snf_.vocab, p));
  for (int p : base.vocab.binary())
    base_slot_map_.push_back(unary_slot(snf_.vocab, p));
  slot_T_ = unary_slot(snf_.vocab, T_);
  slot_Q_ = unary_slot(snf_.vocab, Q_);
  slot_D_ = unary_slot(snf_.vocab, D_);
  for (int z : Z_)
    slot_Z_.push_back(unary_slot(snf_.vocab, z));
  for (int p : snf_.aux_preds)
    slot_free_.push_back(unary_slot(snf_.vocab, p));
}

int AuxSentence::aux_type(int base_type, bool t, bool q, std::uint32_t z) {
  std::uint64_t key = (static_cast<std::uint64_t>(base_type) << 34) |
                      (static_cast<std::uint64_t>(t) << 33) |
                      (static_cast<std::uint64_t>(q) << 32) | z;
  auto it = cache_.find(key);
  if (it != cache_.end())
    return it->second;
  TypeMask bm = base_->unary[base_type];
  TypeMask mask = 0;
  for (size_t s = 0; s < base_slot_map_.size(); ++s)
    if ((bm >> s) & 1)
      mask |= TypeMask{1} << base_slot_map_[s];
  if (t)
    mask |= TypeMask{1} << slot_T_;
  if (q)
    mask |= TypeMask{1} << slot_Q_;
  if (t && q)
    mask |= TypeMask{1} << slot_D_;
  for (size_t k = 0; k < slot_Z_.size(); ++k)
    if ((z >> k) & 1)
      mask |= TypeMask{1} << slot_Z_[k];
  // Diagonals of the fresh aux betas are fixed by their definitions; take
  // the valid completion.
  int id = -1;
  std::uint32_t combos = 1u << slot_free_.size();
  for (std::uint32_t f = 0; f < combos && id < 0; ++f) {
    TypeMask full = mask;
    for (size_t k = 0; k < slot_free_.size(); ++k)
      if ((f >> k) & 1)
        full |= TypeMask{1} << slot_free_[k];
    id = tables_->find_unary(full);
  }
  cache_.emplace(key, id);
  return id;
}

bool extendable_stage1(const CompileState &state, TemplateStore &store) {
  std::uint64_t placed = state.partial.total();
  return store.stage1_extendable(state.partial,
                                 static_cast<std::uint64_t>(state.n) - placed);
}

std::optional<Configuration> induced_aux_config(const CompileState &state,
                                                AuxSentence &aux, int i,
                                                int j) {
  Configuration cfg{std::vector<std::uint32_t>(aux.tables().q(), 0)};
  std::uint32_t full = aux.tables().m >= 32 ? ~0u : (1u << aux.tables().m) - 1;
  for (int l = i; l < state.n; ++l) {
    int id = aux.aux_type(state.unary_choice[l], l == i, l <= j,
                          full & ~state.sat[l]);
    if (id < 0)
      return std::nullopt;
    ++cfg.counts[id];
  }
  return cfg;
}

bool extendable_stage2(const CompileState &state, AuxSentence &aux, int i,
                       int j) {
  auto cfg = induced_aux_config(state, aux, i, j);
  if (!cfg)
    return false;
  return aux.store().config_satisfiable(*cfg);
}

} // namespace fo2kc
